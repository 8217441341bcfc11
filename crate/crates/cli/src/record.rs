//! Machine-readable output records and their JSON / CSV encodings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = "1";
pub const ERROR_FLAG: &str = "ERROR";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub schema_version: String,
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    /// Numbers are carried as decimal strings.
    pub outputs: BTreeMap<String, String>,
    pub flags: Vec<String>,
}

impl OutputRecord {
    pub fn new(command: &str) -> Self {
        OutputRecord {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            inputs: BTreeMap::new(),
            outputs: BTreeMap::new(),
            flags: Vec::new(),
        }
    }

    pub fn error(command: &str, inputs: &BTreeMap<String, String>, kind: &str, message: &str) -> Self {
        let mut r = OutputRecord::new(command);
        r.inputs = inputs.clone();
        r.output("error", kind);
        r.output("message", message);
        r.flag(ERROR_FLAG);
        r
    }

    pub fn input(&mut self, key: &str, value: impl Into<String>) -> &mut Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn output(&mut self, key: &str, value: impl Into<String>) -> &mut Self {
        self.outputs.insert(key.to_string(), value.into());
        self
    }

    pub fn flag(&mut self, flag: &str) -> &mut Self {
        if !self.flags.iter().any(|f| f == flag) {
            self.flags.push(flag.to_string());
        }
        self
    }

    pub fn is_error(&self) -> bool {
        self.flags.iter().any(|f| f == ERROR_FLAG)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// One JSON object per line.
pub fn to_json_lines(records: &[OutputRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("records serialize"));
        out.push('\n');
    }
    out
}

pub fn from_json_lines(text: &str) -> serde_json::Result<Vec<OutputRecord>> {
    text.lines().filter(|l| !l.trim().is_empty()).map(serde_json::from_str).collect()
}

/// Header is the union of fields in first-seen order; inputs are prefixed with `input.`.
pub fn to_csv(records: &[OutputRecord]) -> String {
    let mut inputs: Vec<&str> = Vec::new();
    let mut outputs: Vec<&str> = Vec::new();
    for r in records {
        for k in r.inputs.keys() {
            if !inputs.contains(&k.as_str()) {
                inputs.push(k);
            }
        }
        for k in r.outputs.keys() {
            if !outputs.contains(&k.as_str()) {
                outputs.push(k);
            }
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["schema_version".to_string(), "command".to_string()];
    header.extend(inputs.iter().map(|k| format!("input.{k}")));
    header.extend(outputs.iter().map(|k| k.to_string()));
    header.push("flags".to_string());
    w.write_record(&header).expect("in-memory write");
    for r in records {
        let mut row = vec![r.schema_version.clone(), r.command.clone()];
        row.extend(inputs.iter().map(|k| r.inputs.get(*k).cloned().unwrap_or_default()));
        row.extend(outputs.iter().map(|k| r.outputs.get(*k).cloned().unwrap_or_default()));
        row.push(r.flags.join(";"));
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

pub fn render(records: &[OutputRecord], format: Format) -> String {
    match format {
        Format::Json => to_json_lines(records),
        Format::Csv => to_csv(records),
    }
}
