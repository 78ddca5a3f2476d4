//! Plain-text rendering of a JSON report.

use serde_json::Value;

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "-".to_string(),
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(|i| i.is_number()) => {
            format!("({})", items.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","))
        }
        other => other.to_string(),
    }
}

fn is_record_list(v: &Value) -> bool {
    matches!(v, Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_object))
}

fn grid(items: &[Value]) -> String {
    let mut columns: Vec<&str> = Vec::new();
    for item in items {
        for key in item.as_object().into_iter().flat_map(|o| o.keys()) {
            if !columns.contains(&key.as_str()) {
                columns.push(key);
            }
        }
    }
    let cells: Vec<Vec<String>> = items
        .iter()
        .map(|item| columns.iter().map(|c| item.get(*c).map(scalar).unwrap_or_default()).collect())
        .collect();
    let widths: Vec<usize> = columns
        .iter()
        .enumerate()
        .map(|(i, c)| cells.iter().map(|r| r[i].len()).chain([c.len()]).max().unwrap_or(0))
        .collect();
    let line = |row: Vec<&str>| {
        let padded: Vec<String> = row.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
        format!("  {}\n", padded.join("  ").trim_end())
    };
    let mut out = line(columns.clone());
    for row in &cells {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

/// Top-level scalars as `key: value` lines, lists of records as aligned
/// columns.
pub fn table(value: &Value) -> String {
    let Some(obj) = value.as_object() else {
        return format!("{}\n", scalar(value));
    };
    let mut out = String::new();
    for (key, v) in obj {
        if is_record_list(v) {
            out.push_str(&format!("{key}:\n"));
            out.push_str(&grid(v.as_array().expect("checked above")));
        } else {
            out.push_str(&format!("{key}: {}\n", scalar(v)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn renders_scalars_and_records() {
        let v = json!({"dimension": 4, "parts": [{"root": [1, 1], "gcd": 1}, {"root": [2, 0], "gcd": 2}]});
        assert_eq!(table(&v), "dimension: 4\nparts:\n  gcd  root\n  1    (1,1)\n  2    (2,0)\n");
    }

    #[test]
    fn null_renders_as_dash() {
        assert_eq!(table(&json!({"a": null})), "a: -\n");
    }
}
