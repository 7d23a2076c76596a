use std::collections::BTreeMap;
use std::fmt;

use rust_decimal::Decimal;
use serde::{Deserialize, Serialize};

use super::templates::TemplateId;
use super::LLMExchange;

/// Spend buckets, one per pipeline step that calls a model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CostStage {
    RepositoryCrawling,
    ScientificTaskFiltering,
    DependencyLocating,
    ProgramAdaptation,
    InstructionGeneration,
}

impl CostStage {
    pub const ALL: [CostStage; 5] = [
        CostStage::RepositoryCrawling,
        CostStage::ScientificTaskFiltering,
        CostStage::DependencyLocating,
        CostStage::ProgramAdaptation,
        CostStage::InstructionGeneration,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CostStage::RepositoryCrawling => "repository_crawling",
            CostStage::ScientificTaskFiltering => "scientific_task_filtering",
            CostStage::DependencyLocating => "dependency_locating",
            CostStage::ProgramAdaptation => "program_adaptation",
            CostStage::InstructionGeneration => "instruction_generation",
        }
    }

    pub fn for_template(template: TemplateId) -> Self {
        match template {
            TemplateId::KeywordExpand | TemplateId::CrawlFilter => CostStage::RepositoryCrawling,
            TemplateId::SciVerify => CostStage::ScientificTaskFiltering,
            TemplateId::DepLocate => CostStage::DependencyLocating,
            TemplateId::Adapt => CostStage::ProgramAdaptation,
            TemplateId::InstructGen => CostStage::InstructionGeneration,
        }
    }
}

impl fmt::Display for CostStage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub stage: CostStage,
    pub prompt_hash: String,
    pub usd: Decimal,
}

/// Exact-decimal spend accounting. `total` always equals the sum of `per_stage`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostLedger {
    pub per_stage: BTreeMap<CostStage, Decimal>,
    pub total: Decimal,
    #[serde(default)]
    pub entries: Vec<LedgerEntry>,
}

impl CostLedger {
    pub fn add(&mut self, stage: CostStage, prompt_hash: &str, usd: Decimal) {
        *self.per_stage.entry(stage).or_default() += usd;
        self.total += usd;
        self.entries.push(LedgerEntry {
            stage,
            prompt_hash: prompt_hash.to_string(),
            usd,
        });
    }

    pub fn record(&mut self, exchange: &LLMExchange) {
        self.add(
            CostStage::for_template(exchange.template_id),
            &exchange.prompt_hash,
            exchange.usd_cost,
        );
    }

    pub fn merge(&mut self, other: &CostLedger) {
        for entry in &other.entries {
            self.add(entry.stage, &entry.prompt_hash, entry.usd);
        }
    }

    pub fn stage_total(&self, stage: CostStage) -> Decimal {
        self.per_stage.get(&stage).copied().unwrap_or_default()
    }

    /// Recomputes the total from the per-stage map; equal to `total` by construction.
    pub fn sum_of_stages(&self) -> Decimal {
        self.per_stage.values().copied().sum()
    }
}
