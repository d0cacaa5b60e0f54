use std::io::Write;

use lacunaria::Config;
use serde_json::{json, Value};

/// Tabular view of a payload for `--format csv`.
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table {
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }
}

/// What a subcommand hands back before it is wrapped in a report.
pub struct Outcome {
    pub inputs: Value,
    pub results: Value,
    pub table: Option<Table>,
    pub seed: Option<u64>,
    /// Set when a definite answer was requested but not reached.
    pub inconclusive: bool,
}

impl Outcome {
    pub fn new(inputs: Value, results: Value) -> Self {
        Outcome { inputs, results, table: None, seed: None, inconclusive: false }
    }

    pub fn with_table(mut self, table: Table) -> Self {
        self.table = Some(table);
        self
    }
}

pub fn report(command: &str, outcome: &Outcome, cfg: &Config, threads: usize, runtime_ms: u128) -> Value {
    json!({
        "command": command,
        "inputs": outcome.inputs,
        "results": outcome.results,
        "provenance": {
            "tool": env!("CARGO_PKG_NAME"),
            "version": env!("CARGO_PKG_VERSION"),
            "seed": outcome.seed,
            "threads": threads,
            "config": cfg,
        },
        "runtime_ms": runtime_ms as u64,
    })
}

pub fn write_json<W: Write>(out: &mut W, report: &Value) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, report)?;
    writeln!(out)
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

pub fn write_csv<W: Write>(out: W, outcome: &Outcome) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    match &outcome.table {
        Some(t) => {
            w.write_record(&t.headers)?;
            for row in &t.rows {
                w.write_record(row)?;
            }
        }
        None => {
            w.write_record(["key", "value"])?;
            if let Value::Object(map) = &outcome.results {
                for (k, v) in map {
                    w.write_record([k.as_str(), &cell(v)])?;
                }
            }
        }
    }
    w.flush()?;
    Ok(())
}
