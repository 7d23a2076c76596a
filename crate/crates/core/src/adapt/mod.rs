//! Program adaptation: rewrite candidates into standalone programs, provision
//! environments, execute with a bounded self-debug loop, and back-translate
//! surviving programs into task instructions.

pub mod env;
pub mod exec;
pub mod requirements;

use serde::{Deserialize, Serialize};
use tracing::{debug, warn};

use crate::error::{Error, Result};
use crate::llm::templates::{self, render_within};
use crate::llm::{extract_code_block, Gateway, LLMExchange, ModelRole, TemplateId};
use crate::select::workspace::PRED_RESULTS_DIR;

pub use env::{EnvHandle, HostProvisioner, Provisioner, VenvProvisioner};
pub use exec::{execute_candidate, ExecOptions, ExecutionResult, Outcome};
pub use requirements::{infer_requirements, EnvSpec};

pub const MAX_ITERATIONS: u8 = 3;

pub const ADAPT_REMINDER: &str = "Respond with the complete program in a single ```python code block. The program must save all of its outputs under pred_results/.";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AdaptStatus {
    Pending,
    Running,
    Adapted,
    Discarded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdaptationState {
    pub key: String,
    /// Number of adaptation requests made so far.
    pub iteration: u8,
    pub current_code: String,
    pub last_error: Option<String>,
    pub status: AdaptStatus,
}

impl AdaptationState {
    pub fn new(key: impl Into<String>) -> Self {
        Self {
            key: key.into(),
            iteration: 0,
            current_code: String::new(),
            last_error: None,
            status: AdaptStatus::Pending,
        }
    }
}

/// Renders the adaptation prompt for a candidate inside its workspace.
pub fn adapt_prompt(
    gateway: &Gateway,
    code: &str,
    dataset_path: &str,
    workspace_tree: &str,
    file_name: &str,
) -> Result<String> {
    render_within(
        TemplateId::Adapt,
        &templates::bindings([
            ("dataset_path", dataset_path),
            ("dataset_structure", workspace_tree),
            ("code_file_name", file_name),
            ("code", code),
        ]),
        "dataset_structure",
        gateway.max_prompt_chars(),
    )
}

/// Last fenced Python block, which must reference the `pred_results/` directory.
pub fn extract_adapted(reply: &str) -> Result<String> {
    let code = extract_code_block(reply)?;
    if code.contains(PRED_RESULTS_DIR) {
        Ok(code)
    } else {
        Err(Error::MalformedReply("program does not write under pred_results/".into()))
    }
}

/// Execution feedback appended to the adaptation prompt on later iterations.
pub fn feedback_prompt(base: &str, iteration: u8, previous_code: &str, result: &ExecutionResult) -> String {
    let report = match result.outcome {
        Outcome::NonzeroExit if result.exit_code == 0 => {
            "The program exited without errors but wrote no files under pred_results/.".to_string()
        }
        _ => result.stderr_tail.trim_end().to_string(),
    };
    format!(
        "{base}\n\nPrevious program:\n```python\n{}\n```\n\nExecution feedback from iteration {iteration} (exit code {}):\n{report}",
        previous_code.trim_end(),
        result.exit_code,
    )
}

/// Model and executor side of the self-debug loop.
pub trait LoopBackend {
    /// Sends an adaptation prompt and returns the raw reply.
    fn generate(&mut self, prompt: &str) -> Result<String>;
    /// Infers requirements, provisions, and executes `code`.
    fn execute(&mut self, code: &str) -> ExecutionResult;
}

#[derive(Debug, Clone, PartialEq)]
pub struct LoopOutcome {
    pub state: AdaptationState,
    pub executions: Vec<ExecutionResult>,
}

impl LoopOutcome {
    pub fn last_execution(&self) -> Option<&ExecutionResult> {
        self.executions.last()
    }
}

/// Up to `max_iterations` adaptation requests, each followed by one execution
/// when the reply holds a usable program. A malformed reply is re-requested once
/// with a format reminder (consuming an iteration); a second consecutive
/// malformed reply discards the candidate. Provider errors propagate so the
/// caller can leave the candidate pending.
pub fn self_debug_loop(
    key: &str,
    base_prompt: &str,
    backend: &mut dyn LoopBackend,
    max_iterations: u8,
) -> Result<LoopOutcome> {
    let mut state = AdaptationState::new(key);
    let mut executions: Vec<ExecutionResult> = Vec::new();
    let mut prompt = base_prompt.to_string();
    let mut previous_malformed = false;
    state.status = AdaptStatus::Running;
    while state.iteration < max_iterations {
        state.iteration += 1;
        let reply = backend.generate(&prompt)?;
        let code = match extract_adapted(&reply) {
            Ok(code) => code,
            Err(e @ (Error::MalformedReply(_) | Error::NoCodeBlock)) => {
                state.last_error = Some(e.to_string());
                if previous_malformed {
                    warn!(key, "adaptation reply malformed twice; discarding");
                    break;
                }
                previous_malformed = true;
                prompt = format!("{prompt}\n\n{ADAPT_REMINDER}");
                continue;
            }
            Err(e) => return Err(e),
        };
        previous_malformed = false;
        let result = backend.execute(&code);
        debug!(key, iteration = state.iteration, outcome = ?result.outcome, "execution finished");
        state.current_code = code;
        if result.succeeded() {
            state.last_error = None;
            state.status = AdaptStatus::Adapted;
            executions.push(result);
            return Ok(LoopOutcome { state, executions });
        }
        state.last_error = Some(result.stderr_tail.clone());
        prompt = feedback_prompt(base_prompt, state.iteration, &state.current_code, &result);
        executions.push(result);
    }
    state.status = AdaptStatus::Discarded;
    Ok(LoopOutcome { state, executions })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instruction {
    pub text: String,
    /// The instruction still omits required file names after regeneration.
    pub weak: bool,
}

/// Collapses a reply into a single paragraph, dropping a leading label.
pub fn normalize_instruction(reply: &str) -> String {
    let text = reply.split_whitespace().collect::<Vec<_>>().join(" ");
    let lowered = text.to_ascii_lowercase();
    for label in ["task instruction:", "instruction:", "**instruction:**"] {
        if lowered.starts_with(label) {
            return text[label.len()..].trim().to_string();
        }
    }
    text
}

fn file_name(path: &str) -> &str {
    path.rsplit('/').next().unwrap_or(path)
}

/// True when the text names at least one input (if any exist) and at least one output.
pub fn instruction_mentions(text: &str, input_files: &[String], output_files: &[String]) -> bool {
    let names = |files: &[String]| files.iter().any(|f| text.contains(file_name(f)));
    (input_files.is_empty() || names(input_files)) && names(output_files)
}

fn instruction_reminder(input_files: &[String], output_files: &[String]) -> String {
    let list = |files: &[String]| files.iter().map(|f| file_name(f)).collect::<Vec<_>>().join(", ");
    let mut reminder = String::from("The instruction must name the exact files involved.");
    if !input_files.is_empty() {
        reminder.push_str(&format!(" Input files: {}.", list(input_files)));
    }
    reminder.push_str(&format!(" Output files: {}.", output_files.join(", ")));
    reminder
}

/// Back-translates an adapted program into an instruction. One regeneration is
/// requested when the first draft omits the input or output file names.
pub fn generate_instruction(
    gateway: &Gateway,
    code: &str,
    input_files: &[String],
    output_files: &[String],
    log: &mut Vec<LLMExchange>,
) -> Result<Instruction> {
    if code.trim().is_empty() {
        return Err(Error::SchemaError("instruction requested for an empty program".into()));
    }
    let prompt = render_within(
        TemplateId::InstructGen,
        &templates::bindings([("code", code)]),
        "code",
        gateway.max_prompt_chars(),
    )?;
    let first = gateway.complete_prompt(TemplateId::InstructGen, &prompt, ModelRole::General)?;
    let text = normalize_instruction(&first.reply);
    log.push(first);
    if instruction_mentions(&text, input_files, output_files) {
        return Ok(Instruction { text, weak: false });
    }
    let retry = format!("{prompt}\n\n{}", instruction_reminder(input_files, output_files));
    let second = gateway.complete_prompt(TemplateId::InstructGen, &retry, ModelRole::General)?;
    let text = normalize_instruction(&second.reply);
    log.push(second);
    let weak = !instruction_mentions(&text, input_files, output_files);
    if weak {
        warn!("instruction still omits file names after regeneration");
    }
    Ok(Instruction { text, weak })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::llm::{GatewayConfig, Mode, ScriptedProvider};
    use std::collections::VecDeque;
    use std::sync::Arc;

    struct Scripted {
        replies: VecDeque<String>,
        outcomes: VecDeque<bool>,
        prompts: Vec<String>,
        executions: usize,
    }

    impl Scripted {
        fn new(replies: &[&str], outcomes: &[bool]) -> Self {
            Self {
                replies: replies.iter().map(|s| s.to_string()).collect(),
                outcomes: outcomes.iter().copied().collect(),
                prompts: Vec::new(),
                executions: 0,
            }
        }
    }

    const GOOD: &str = "```python\nopen('pred_results/pred_a.csv','w').write('1')\n```";

    fn result(ok: bool) -> ExecutionResult {
        ExecutionResult {
            exit_code: if ok { 0 } else { 1 },
            stdout_tail: String::new(),
            stderr_tail: if ok { String::new() } else { "Traceback: boom".into() },
            produced_files: if ok { vec!["pred_results/pred_a.csv".into()] } else { vec![] },
            wall_time: 0.0,
            outcome: if ok { Outcome::Success } else { Outcome::NonzeroExit },
        }
    }

    impl LoopBackend for Scripted {
        fn generate(&mut self, prompt: &str) -> Result<String> {
            self.prompts.push(prompt.to_string());
            Ok(self.replies.pop_front().unwrap_or_else(|| GOOD.to_string()))
        }
        fn execute(&mut self, _code: &str) -> ExecutionResult {
            self.executions += 1;
            result(self.outcomes.pop_front().expect("unexpected execution"))
        }
    }

    #[test]
    fn every_outcome_sequence_respects_the_bound() {
        for mask in 0u8..8 {
            let seq: Vec<bool> = (0..3).map(|i| mask & (1 << i) != 0).collect();
            let mut backend = Scripted::new(&[], &seq);
            let out = self_debug_loop("k", "BASE", &mut backend, MAX_ITERATIONS).unwrap();
            let first_ok = seq.iter().position(|&ok| ok);
            assert!(backend.prompts.len() <= 3 && backend.executions <= 3);
            match first_ok {
                Some(i) => {
                    assert_eq!(out.state.status, AdaptStatus::Adapted);
                    assert_eq!(out.state.iteration as usize, i + 1);
                    assert_eq!(backend.executions, i + 1);
                }
                None => {
                    assert_eq!(out.state.status, AdaptStatus::Discarded);
                    assert_eq!(out.state.iteration, 3);
                    assert!(!out.last_execution().unwrap().succeeded());
                }
            }
        }
    }

    #[test]
    fn feedback_carries_code_and_error() {
        let mut backend = Scripted::new(&[], &[false, true]);
        self_debug_loop("k", "BASE", &mut backend, MAX_ITERATIONS).unwrap();
        let second = &backend.prompts[1];
        assert!(second.starts_with("BASE\n\nPrevious program:\n```python\nopen('pred_results"));
        assert!(second.contains("iteration 1 (exit code 1):\nTraceback: boom"));
    }

    #[test]
    fn malformed_twice_discards_without_execution() {
        let mut backend = Scripted::new(&["no code here", "still none"], &[]);
        let out = self_debug_loop("k", "BASE", &mut backend, MAX_ITERATIONS).unwrap();
        assert_eq!(out.state.status, AdaptStatus::Discarded);
        assert_eq!(backend.executions, 0);
        assert_eq!(backend.prompts[1], format!("BASE\n\n{ADAPT_REMINDER}"));
    }

    #[test]
    fn malformed_once_then_recovers() {
        let mut backend = Scripted::new(&["```python\nprint(1)\n```", GOOD], &[true]);
        let out = self_debug_loop("k", "BASE", &mut backend, MAX_ITERATIONS).unwrap();
        assert_eq!(out.state.status, AdaptStatus::Adapted);
        assert_eq!(out.state.iteration, 2);
    }

    #[test]
    fn provider_error_propagates() {
        struct Failing;
        impl LoopBackend for Failing {
            fn generate(&mut self, _: &str) -> Result<String> {
                Err(Error::ProviderUnavailable("down".into()))
            }
            fn execute(&mut self, _: &str) -> ExecutionResult {
                unreachable!()
            }
        }
        assert!(self_debug_loop("k", "BASE", &mut Failing, MAX_ITERATIONS).is_err());
    }

    fn gateway(replies: Vec<&'static str>) -> (Gateway, Arc<ScriptedProvider>) {
        let queue = std::sync::Mutex::new(VecDeque::from(replies));
        let provider = Arc::new(ScriptedProvider::from_text(move |_| {
            queue.lock().unwrap().pop_front().unwrap_or("").to_string()
        }));
        let config = GatewayConfig {
            mode: Mode::Live,
            retry_base_delay: std::time::Duration::ZERO,
            ..GatewayConfig::default()
        };
        (Gateway::new(config, Some(provider.clone()), None).unwrap(), provider)
    }

    #[test]
    fn instruction_accepted_first_time() {
        let (gw, provider) = gateway(vec!["Instruction: Use circrna_disease.txt\nto compute scores saved to pred_results/RWR.csv."]);
        let out = generate_instruction(
            &gw,
            "code",
            &["data/circrna_disease.txt".into()],
            &["pred_results/RWR.csv".into()],
            &mut Vec::new(),
        )
        .unwrap();
        assert_eq!(out.text, "Use circrna_disease.txt to compute scores saved to pred_results/RWR.csv.");
        assert!(!out.weak);
        assert_eq!(provider.call_count(), 1);
    }

    #[test]
    fn instruction_fixed_on_regeneration() {
        let (gw, provider) = gateway(vec!["Compute scores.", "Read a.csv and write pred_results/out.txt."]);
        let mut log = Vec::new();
        let out = generate_instruction(&gw, "code", &["a.csv".into()], &["pred_results/out.txt".into()], &mut log).unwrap();
        assert!(!out.weak);
        assert_eq!(log.len(), 2);
        assert!(provider.prompts()[1].ends_with("Input files: a.csv. Output files: pred_results/out.txt."));
    }

    #[test]
    fn instruction_weak_after_two_misses() {
        let (gw, _) = gateway(vec!["Compute scores.", "Compute more scores."]);
        let out = generate_instruction(&gw, "code", &["a.csv".into()], &["pred_results/out.txt".into()], &mut Vec::new()).unwrap();
        assert!(out.weak);
        assert_eq!(out.text, "Compute more scores.");
    }

    #[test]
    fn instruction_requires_code() {
        let (gw, _) = gateway(vec![]);
        assert!(generate_instruction(&gw, "  ", &[], &[], &mut Vec::new()).is_err());
    }

    #[test]
    fn adapted_code_must_use_pred_results() {
        assert!(extract_adapted(GOOD).is_ok());
        assert!(matches!(extract_adapted("```python\nprint(1)\n```"), Err(Error::MalformedReply(_))));
        assert!(matches!(extract_adapted("nothing"), Err(Error::NoCodeBlock)));
    }
}
