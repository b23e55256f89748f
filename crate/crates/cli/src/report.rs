use serde_json::{Map, Value};

use crate::Format;

const RESERVED: [&str; 4] = ["command", "inputs", "assumptions", "version"];

/// One command's output. Result fields sit at the top level next to the
/// command echo, normalized inputs, assumptions and version.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    command: String,
    inputs: Map<String, Value>,
    results: Map<String, Value>,
    assumptions: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            inputs: Map::new(),
            results: Map::new(),
            assumptions: Vec::new(),
        }
    }

    pub fn input(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn result(mut self, key: &str, value: impl Into<Value>) -> Self {
        assert!(!RESERVED.contains(&key), "result key `{key}` is reserved");
        self.results.insert(key.to_string(), value.into());
        self
    }

    pub fn assume(mut self, text: &str) -> Self {
        self.assumptions.push(text.to_string());
        self
    }

    pub fn to_value(&self) -> Value {
        let mut top = self.results.clone();
        top.insert("command".into(), Value::String(self.command.clone()));
        top.insert("inputs".into(), Value::Object(self.inputs.clone()));
        top.insert(
            "assumptions".into(),
            self.assumptions
                .iter()
                .map(|a| Value::String(a.clone()))
                .collect(),
        );
        top.insert(
            "version".into(),
            Value::String(env!("CARGO_PKG_VERSION").into()),
        );
        Value::Object(top)
    }

    pub fn render(&self, format: Format) -> String {
        let value = self.to_value();
        match format {
            Format::Json => format!("{value}\n"),
            Format::Text => {
                let Value::Object(map) = value else {
                    unreachable!("reports are objects")
                };
                let mut out = String::new();
                for (key, v) in map {
                    let shown = match v {
                        Value::String(s) => s,
                        other => other.to_string(),
                    };
                    out.push_str(&format!("{key}: {shown}\n"));
                }
                out
            }
        }
    }
}
