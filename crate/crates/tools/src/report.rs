//! Output rendering for the CLI: a human table mode and a versioned
//! machine mode. Machine reports are single-line JSON with sorted keys,
//! so identical inputs produce byte-identical output.

use std::collections::BTreeMap;

use serde_json::{json, Value};

pub const REPORT_SCHEMA: &str = "gentle.report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Table,
    Machine,
}

/// Wraps a subcommand's payload in the report envelope and renders it.
pub fn machine_line(command: &str, status: &str, data: Value) -> String {
    let envelope = json!({
        "schema": REPORT_SCHEMA,
        "command": command,
        "status": status,
        "data": data,
    });
    format!("{envelope}\n")
}

/// Degree profile as a JSON array of `[degree, dimension]` pairs in
/// ascending degree order.
pub fn profile_value(profile: &BTreeMap<i64, usize>) -> Value {
    Value::Array(
        profile
            .iter()
            .map(|(&d, &n)| json!([d, n]))
            .collect(),
    )
}

/// Degree profile as compact text, e.g. `0:1 1:2` or `(empty)`.
pub fn profile_text(profile: &BTreeMap<i64, usize>) -> String {
    if profile.is_empty() {
        return "(empty)".to_string();
    }
    profile
        .iter()
        .map(|(d, n)| format!("{d}:{n}"))
        .collect::<Vec<_>>()
        .join(" ")
}
