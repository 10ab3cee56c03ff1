//! Record emission for the command-line tool. Every line on stdout is one
//! record; in csv mode the tabular rows go to stdout and the header record
//! moves to stderr so the csv stays machine-readable.

use std::io::Write;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::config::{OutputFormat, RunConfig};

pub struct Reporter {
    format: OutputFormat,
}

// serde_json's default map is sorted, so repeated runs with the same config
// produce byte-identical lines.
fn tagged(kind: &str, payload: Value) -> Value {
    match payload {
        Value::Object(mut m) => {
            m.insert("record".to_string(), Value::String(kind.to_string()));
            Value::Object(m)
        }
        other => {
            let mut m = Map::new();
            m.insert("record".to_string(), Value::String(kind.to_string()));
            m.insert("value".to_string(), other);
            Value::Object(m)
        }
    }
}

impl Reporter {
    pub fn new(format: OutputFormat) -> Reporter {
        Reporter { format }
    }

    pub fn format(&self) -> OutputFormat {
        self.format
    }

    /// First line of every run: tool version, resolved config, and the
    /// formula anchors of the constants the command relies on.
    pub fn header(&self, cfg: &RunConfig, anchors: &[&str]) {
        let rec = tagged(
            "header",
            json!({
                "version": env!("CARGO_PKG_VERSION"),
                "config": cfg,
                "anchors": anchors,
            }),
        );
        match self.format {
            OutputFormat::Json => println!("{rec}"),
            OutputFormat::Csv => eprintln!("{rec}"),
        }
    }

    pub fn record<T: Serialize>(&self, kind: &str, payload: &T) {
        let v = serde_json::to_value(payload).expect("record serialization");
        println!("{}", tagged(kind, v));
    }

    pub fn value(&self, kind: &str, payload: Value) {
        println!("{}", tagged(kind, payload));
    }

    /// JSON record that must not interrupt a csv table: stdout in json
    /// mode, stderr in csv mode.
    pub fn side_value(&self, kind: &str, payload: Value) {
        let rec = tagged(kind, payload);
        match self.format {
            OutputFormat::Json => println!("{rec}"),
            OutputFormat::Csv => eprintln!("{rec}"),
        }
    }

    /// Machine-readable failure note; always JSON, always stdout, so a
    /// consumer sees errors in-band in the order they happened.
    pub fn error(&self, op: &str, message: &str) {
        println!(
            "{}",
            tagged("error", json!({ "op": op, "message": message }))
        );
    }

    /// Raw csv line (csv mode only); the caller owns the column contract.
    pub fn csv_line(&self, line: &str) {
        debug_assert_eq!(self.format, OutputFormat::Csv);
        println!("{line}");
    }

    pub fn flush(&self) {
        let _ = std::io::stdout().flush();
    }
}
