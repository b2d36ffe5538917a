//! Rendering of command results as JSON, CSV or plain text.

use std::io::Write;

use clap::ValueEnum;
use serde_json::Value;
use theta_forge::suite::CriterionResult;

#[derive(Clone, Copy, ValueEnum)]
pub enum Format {
    Json,
    Pretty,
    Csv,
}

pub fn emit(value: &Value, text: Option<&str>, format: Format) {
    let body = match format {
        Format::Json => serde_json::to_string_pretty(value).expect("values serialize") + "\n",
        Format::Pretty => match text {
            Some(t) => format!("{t}\n"),
            None => pretty(value, 0),
        },
        Format::Csv => csv_text(value),
    };
    write_stdout(&body);
}

/// Writes to stdout, ignoring a closed pipe.
pub fn write_stdout(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(s.as_bytes()).and_then(|_| out.flush());
}

pub fn criterion_line(r: &CriterionResult) -> String {
    format!(
        "{} criterion {:>2} {:<40} {:>8.3}s  {}",
        if r.pass { "PASS" } else { "FAIL" },
        r.id,
        r.name,
        r.seconds,
        r.detail
    )
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn pretty(value: &Value, indent: usize) -> String {
    let pad = "  ".repeat(indent);
    let mut out = String::new();
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                match v {
                    Value::Object(_) => out.push_str(&format!("{pad}{k}:\n{}", pretty(v, indent + 1))),
                    Value::Array(items) if items.iter().any(|x| x.is_object() || x.is_array()) => {
                        out.push_str(&format!("{pad}{k}:\n{}", pretty(v, indent + 1)));
                    }
                    Value::Array(items) => {
                        let cells: Vec<String> = items.iter().map(scalar).collect();
                        out.push_str(&format!("{pad}{k}: [{}]\n", cells.join(", ")));
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(v))),
                }
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                if v.is_object() || v.is_array() {
                    out.push_str(&format!("{pad}- [{i}]\n{}", pretty(v, indent + 1)));
                } else {
                    out.push_str(&format!("{pad}- {}\n", scalar(v)));
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar(value))),
    }
    out
}

/// Leaves of `value` as `(dotted path, scalar)` pairs in document order.
fn flatten(value: &Value, prefix: &str, out: &mut Vec<(String, String)>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match value {
        Value::Object(map) => map.iter().for_each(|(k, v)| flatten(v, &join(k), out)),
        Value::Array(items) => items.iter().enumerate().for_each(|(i, v)| flatten(v, &join(&i.to_string()), out)),
        _ => out.push((prefix.to_string(), scalar(value))),
    }
}

/// A table when `value` is a list of records, otherwise `path,value` rows.
fn csv_text(value: &Value) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let records = match value {
        Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_object) => Some(items),
        Value::Object(map) => map.get("terms").and_then(Value::as_array),
        _ => None,
    };
    match records {
        Some(items) => {
            let rows: Vec<Vec<(String, String)>> = items
                .iter()
                .map(|item| {
                    let mut cells = Vec::new();
                    flatten(item, "", &mut cells);
                    cells
                })
                .collect();
            let mut header: Vec<String> = Vec::new();
            for row in &rows {
                for (k, _) in row {
                    if !header.contains(k) {
                        header.push(k.clone());
                    }
                }
            }
            w.write_record(&header).expect("in-memory writer");
            for row in rows {
                let cells: Vec<String> = header
                    .iter()
                    .map(|h| row.iter().find(|(k, _)| k == h).map(|(_, v)| v.clone()).unwrap_or_default())
                    .collect();
                w.write_record(&cells).expect("in-memory writer");
            }
        }
        None => {
            let mut cells = Vec::new();
            flatten(value, "", &mut cells);
            w.write_record(["field", "value"]).expect("in-memory writer");
            for (k, v) in cells {
                w.write_record([k, v]).expect("in-memory writer");
            }
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8 input")
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn csv_tables_and_fields() {
        let t = csv_text(&json!([{ "a": 1, "b": { "c": "x" } }, { "a": 2 }]));
        assert_eq!(t, "a,b.c\n1,x\n2,\n");
        let f = csv_text(&json!({ "order": 960, "perfect": true }));
        assert_eq!(f, "field,value\norder,960\nperfect,true\n");
        let s = csv_text(&json!({ "p": 3, "terms": [{ "exp": "0/1", "coef": { "coeffs": ["1", "0"], "den": "1" } }] }));
        assert_eq!(s, "coef.coeffs.0,coef.coeffs.1,coef.den,exp\n1,0,1,0/1\n");
    }

    #[test]
    fn pretty_nests() {
        let p = pretty(&json!({ "n": 5, "list": [1, 2], "inner": { "ok": true } }), 0);
        assert_eq!(p, "inner:\n  ok: true\nlist: [1, 2]\nn: 5\n");
    }
}
