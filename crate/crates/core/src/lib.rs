//! Pipeline that mines code hosts for data-driven scientific programs and turns
//! them into ⟨task instruction, executable program⟩ pairs.

pub mod adapt;
pub mod config;
pub mod dataset;
pub mod error;
pub mod http;
pub mod llm;
pub mod model;
pub mod pipeline;
pub mod ratelimit;
pub mod search;
pub mod select;

pub use error::{Error, Result};
