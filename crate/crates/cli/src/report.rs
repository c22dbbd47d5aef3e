//! The report printed by every subcommand, in JSON or text form.

use std::fmt::Write as _;

use lprog::{format_rational, to_decimal, Rational};
use serde::Serialize;
use serde_json::{json, Map, Value};

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub inputs: Map<String, Value>,
    pub results: Map<String, Value>,
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

#[derive(Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report { command, inputs: Map::new(), results: Map::new(), warnings: Vec::new(), timing: None }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) {
        self.inputs.insert(key.to_string(), value.into());
    }

    pub fn result(&mut self, key: &str, value: impl Into<Value>) {
        self.results.insert(key.to_string(), value.into());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        for (k, v) in &self.inputs {
            let _ = writeln!(out, "{k}: {}", plain(v));
        }
        for (k, v) in &self.results {
            write_value(&mut out, k, v, 0);
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        if let Some(t) = &self.timing {
            let _ = writeln!(out, "elapsed: {:.3} ms", t.elapsed_ms);
        }
        out
    }
}

/// JSON form of a rational: exact value plus a six-place decimal.
pub fn rational(value: &Rational) -> Value {
    json!({ "value": format_rational(value), "decimal": to_decimal(value, 6) })
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Object(m) if m.len() == 2 && m.contains_key("value") && m.contains_key("decimal") => {
            format!("{} ({})", plain(&m["value"]), plain(&m["decimal"]))
        }
        Value::Array(items) if items.iter().all(|i| !i.is_object()) => {
            items.iter().map(plain).collect::<Vec<_>>().join(" ")
        }
        other => other.to_string(),
    }
}

fn write_value(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) if !(m.len() == 2 && m.contains_key("decimal")) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (k, inner) in m {
                write_value(out, k, inner, depth + 1);
            }
        }
        Value::Array(items) if items.iter().any(Value::is_object) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (i, item) in items.iter().enumerate() {
                write_value(out, &format!("[{i}]"), item, depth + 1);
            }
        }
        _ => {
            let _ = writeln!(out, "{pad}{key}: {}", plain(v));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_carry_both_forms() {
        let r = Rational::new(1.into(), 3.into());
        assert_eq!(rational(&r), json!({"value": "1/3", "decimal": "0.333333"}));
    }

    #[test]
    fn text_form_flattens_rationals() {
        let mut report = Report::new("progress");
        report.input("formula", "G a");
        report.result("exact", rational(&Rational::new(1.into(), 4.into())));
        report.warnings.push("atom z is not in the model".into());
        assert_eq!(
            report.to_text(),
            "command: progress\nformula: G a\nexact: 1/4 (0.250000)\nwarning: atom z is not in the model\n"
        );
    }

    #[test]
    fn timing_is_omitted_unless_set() {
        let report = Report::new("validate");
        assert!(!report.to_json().contains("timing"));
    }
}
