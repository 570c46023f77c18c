//! Human-first structured reports: `key: value` lines by default, one JSON
//! object with `--machine`.

use serde_json::Value;

#[derive(Debug, Default)]
pub struct Report {
    fields: Vec<(String, Value)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Into<Value>) {
        self.fields.push((key.into(), value.into()));
    }

    pub fn push_f64(&mut self, key: impl Into<String>, value: f64) {
        self.push(
            key,
            serde_json::Number::from_f64(value)
                .map(Value::Number)
                .unwrap_or(Value::Null),
        );
    }

    fn scalar_text(value: &Value) -> String {
        match value {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        }
    }

    pub fn render(&self, machine: bool) -> String {
        if machine {
            let map: serde_json::Map<String, Value> = self
                .fields
                .iter()
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect();
            return Value::Object(map).to_string();
        }
        let mut out = String::new();
        for (key, value) in &self.fields {
            match value {
                Value::Array(items) => {
                    for (i, item) in items.iter().enumerate() {
                        match item {
                            Value::Object(obj) => {
                                for (k, v) in obj {
                                    out.push_str(&format!(
                                        "{key}[{i}].{k}: {}\n",
                                        Self::scalar_text(v)
                                    ));
                                }
                            }
                            other => {
                                out.push_str(&format!(
                                    "{key}[{i}]: {}\n",
                                    Self::scalar_text(other)
                                ));
                            }
                        }
                    }
                }
                other => out.push_str(&format!("{key}: {}\n", Self::scalar_text(other))),
            }
        }
        out
    }
}
