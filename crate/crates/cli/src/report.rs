use std::io::Write;
use std::process::ExitCode;

use ggr_core::io::SCHEMA_VERSION;
use ggr_core::Error;
use serde_json::{json, Value};

/// A finished command: its JSON report and whether the verdict holds.
pub struct Outcome {
    pub report: Value,
    pub verdict: bool,
}

pub enum Failure {
    /// An axiom failed while building inputs; the report carries the witness.
    Axiom(Value),
    /// Bad input: parse errors, dangling references, incompatible objects.
    Error(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e.violation() {
            Some(v) => Failure::Axiom(json!({
                "schema_version": SCHEMA_VERSION,
                "verdict": false,
                "axiom": v.axiom,
                "message": v.message,
                "witness": v.witness,
            })),
            None => Failure::Error(e.to_string()),
        }
    }
}

pub type Run = Result<Outcome, Failure>;

pub fn verdict(check: &str, verdict: bool, witness: Value, details: Value) -> Outcome {
    Outcome {
        report: json!({
            "schema_version": SCHEMA_VERSION,
            "check": check,
            "verdict": verdict,
            "witness": witness,
            "details": details,
        }),
        verdict,
    }
}

pub fn emit(report: &Value, code: u8) -> ExitCode {
    print_json(report);
    ExitCode::from(code)
}

pub fn emit_error(command: &str, msg: &str) -> ExitCode {
    eprintln!("ggr {command}: {msg}");
    let report = json!({"schema_version": SCHEMA_VERSION, "command": command, "error": msg});
    print_json(&report);
    ExitCode::from(2)
}

// a closed pipe (`ggr ... | head`) is not an error
fn print_json(v: &Value) {
    let text = serde_json::to_string_pretty(v).expect("JSON values serialize");
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}
