//! Plain-text rendering of report values.

use serde_json::Value;

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some(String::from("-")),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a)
            if a.iter()
                .all(|x| matches!(x, Value::Number(_) | Value::String(_))) =>
        {
            let items: Vec<String> = a.iter().map(|x| scalar(x).unwrap_or_default()).collect();
            Some(format!("[{}]", items.join(", ")))
        }
        _ => None,
    }
}

fn render_into(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{}{}: {}\n", pad, k, s)),
                    None => {
                        out.push_str(&format!("{}{}:\n", pad, k));
                        render_into(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{}- {}\n", pad, s)),
                    None => {
                        out.push_str(&format!("{}-\n", pad));
                        render_into(x, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{}{}\n", pad, scalar(other).unwrap_or_default())),
    }
}

/// Indented `key: value` lines; short scalar arrays stay on one line.
pub fn render(v: &Value) -> String {
    let mut out = String::new();
    render_into(v, 0, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn nested() {
        let v = json!({ "a": 1, "b": { "c": [1, 2] }, "d": [{ "e": "x" }] });
        assert_eq!(render(&v), "a: 1\nb:\n  c: [1, 2]\nd:\n  -\n    e: x\n");
    }
}
