use serde::Serialize;
use serde_json::{Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

/// Rounds to 12 significant digits.
pub fn sig12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn round_value(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = sig12(n.as_f64().unwrap_or(f64::NAN));
            serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(round_value).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_value(v))).collect()),
        other => other,
    }
}

/// JSON document with a leading `schema_version` and every float rounded to
/// 12 significant digits.
pub fn json_report<T: Serialize>(body: &T) -> String {
    let mut out = Map::new();
    out.insert("schema_version".into(), SCHEMA_VERSION.into());
    match serde_json::to_value(body).expect("report serializes") {
        Value::Object(o) => out.extend(o),
        other => {
            out.insert("result".into(), other);
        }
    }
    serde_json::to_string_pretty(&round_value(Value::Object(out))).expect("report serializes")
}

/// Flattened `key.path: value` lines.
pub fn text_report<T: Serialize>(body: &T) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut Vec<String>) {
        match v {
            Value::Object(o) => {
                for (k, v) in o {
                    let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&key, v, out);
                }
            }
            Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
                let items: Vec<String> = a.iter().map(scalar).collect();
                out.push(format!("{prefix}: [{}]", items.join(", ")));
            }
            Value::Array(a) => {
                for (i, v) in a.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), v, out);
                }
            }
            v => out.push(format!("{prefix}: {}", scalar(v))),
        }
    }
    fn scalar(v: &Value) -> String {
        match v {
            Value::Number(n) => match n.as_f64() {
                Some(x) if n.is_f64() => {
                    let x = sig12(x);
                    if x != 0.0 && !(1e-4..1e6).contains(&x.abs()) {
                        format!("{x:e}")
                    } else {
                        format!("{x}")
                    }
                }
                _ => n.to_string(),
            },
            Value::String(s) => s.clone(),
            other => other.to_string(),
        }
    }
    let mut lines = Vec::new();
    walk("", &serde_json::to_value(body).expect("report serializes"), &mut lines);
    lines.join("\n")
}
