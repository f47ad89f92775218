use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

/// Result of one command. Serialized with sorted keys; `timings_ms` is the
/// only field that varies between runs.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strategy: Option<String>,
    pub passed: bool,
    pub checks: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub timings_ms: BTreeMap<String, f64>,
}

impl RunReport {
    pub fn new(command: &str, inputs: impl IntoIterator<Item = String>) -> Self {
        Self {
            command: command.to_string(),
            inputs: inputs.into_iter().collect(),
            strategy: None,
            passed: true,
            checks: BTreeMap::new(),
            timings_ms: BTreeMap::new(),
        }
    }

    pub fn check(&mut self, name: &str, value: impl Serialize) -> &mut Self {
        let value = serde_json::to_value(value).expect("report values serialize");
        self.checks.insert(name.to_string(), value);
        self
    }

    /// Records a pass/fail check; a failure fails the run.
    pub fn require(&mut self, name: &str, holds: bool, witness: Option<Value>) -> &mut Self {
        self.passed &= holds;
        let value = match witness {
            Some(w) if !holds => json!({ "holds": false, "witness": w }),
            _ => json!({ "holds": holds }),
        };
        self.checks.insert(name.to_string(), value);
        self
    }

    pub fn time<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        let ms = start.elapsed().as_secs_f64() * 1e3;
        self.timings_ms
            .insert(name.to_string(), (ms * 1e3).round() / 1e3);
        out
    }

    pub fn render(&self, pretty: bool, timings: bool) -> String {
        let mut value = serde_json::to_value(self).expect("reports serialize");
        if !timings {
            value.as_object_mut().expect("object").remove("timings_ms");
        }
        if pretty {
            return human(&value);
        }
        let mut out = serde_json::to_string(&value).expect("values serialize");
        out.push('\n');
        out
    }
}

fn human(value: &Value) -> String {
    let mut out = String::new();
    let get = |k: &str| value.get(k).cloned().unwrap_or(Value::Null);
    out.push_str(&format!(
        "{} {}\n",
        get("command").as_str().unwrap_or(""),
        if get("passed") == Value::Bool(true) {
            "PASS"
        } else {
            "FAIL"
        }
    ));
    if let Some(inputs) = get("inputs").as_array() {
        for i in inputs {
            out.push_str(&format!("  input    {}\n", i.as_str().unwrap_or("")));
        }
    }
    if let Some(s) = get("strategy").as_str() {
        out.push_str(&format!("  strategy {s}\n"));
    }
    if let Some(checks) = get("checks").as_object() {
        let width = checks.keys().map(|k| k.len()).max().unwrap_or(0);
        for (k, v) in checks {
            out.push_str(&format!("  {k:<width$}  {}\n", compact(v)));
        }
    }
    if let Some(t) = get("timings_ms").as_object() {
        for (k, v) in t {
            out.push_str(&format!("  time {k} {v} ms\n"));
        }
    }
    out
}

fn compact(v: &Value) -> String {
    match v {
        Value::Object(m) if m.get("holds").is_some() && m.len() <= 2 => match m.get("witness") {
            Some(w) => format!("fails, witness {w}"),
            None if m["holds"] == Value::Bool(true) => "holds".into(),
            None => "fails".into(),
        },
        other => other.to_string(),
    }
}
