//! Batch front end: load `sogkit/1` JSON inputs, run one verb, emit a
//! certificate. Exit codes: 0 pass, 1 checked property fails, 2 bad input.

mod commands;
mod input;
mod output;

pub use commands::{run_command, Invocation, Outcome, VERBS};
pub use input::{parse_files, parse_str, InputError, InputErrorKind, Object, Workspace, SCHEMA};

use serde_json::json;

/// Certificate for inputs that failed to load.
pub fn input_error_outcome(verb: &str, e: &InputError) -> Outcome {
    Outcome {
        code: 2,
        certificate: json!({
            "schema": SCHEMA,
            "verb": verb,
            "status": "input-error",
            "error": {"kind": e.kind.name(), "messages": e.messages},
        }),
    }
}
