use std::fmt::Write;

use serde_json::Value;

/// Indented `key: value` rendering of a JSON document. Arrays of scalars
/// stay on one line.
pub fn render(value: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, value, 0);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !i.is_array() && !i.is_object()) => {
            Some(format!("({})", items.iter().map(|i| scalar(i).unwrap()).collect::<Vec<_>>().join(",")))
        }
        _ => None,
    }
}

fn write_value(out: &mut String, value: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            let width = map.keys().map(String::len).max().unwrap_or(0);
            for (k, v) in map {
                match scalar(v) {
                    Some(s) => writeln!(out, "{pad}{k:<width$}  {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}{k}").unwrap();
                        write_value(out, v, indent + 1);
                    }
                }
            }
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                match scalar(item) {
                    Some(s) => writeln!(out, "{pad}[{i}] {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}[{i}]").unwrap();
                        write_value(out, item, indent + 1);
                    }
                }
            }
        }
        other => writeln!(out, "{pad}{}", scalar(other).unwrap()).unwrap(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn renders_nested() {
        let s = render(&json!({"a": [1, 2], "b": {"c": null}, "d": [{"e": true}]}));
        assert_eq!(s, "a  (1,2)\nb\n  c  -\nd\n  [0]\n    e  true\n");
    }
}
