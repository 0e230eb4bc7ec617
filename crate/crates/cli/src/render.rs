//! Human-readable rendering of JSON reports.

use serde_json::Value;

/// Renders a report as indented `key: value` lines. Arrays of objects become
/// aligned tables. With `float`, strings of the form `p/q` are shown as decimals.
pub fn table(v: &Value, float: bool) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0, float);
    out
}

fn scalar(v: &Value, float: bool) -> String {
    match v {
        Value::String(s) if float => decimal(s).unwrap_or_else(|| s.clone()),
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(items) if items.iter().all(is_scalar) => {
            let parts: Vec<String> = items.iter().map(|x| scalar(x, float)).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Object(_)) && !matches!(v, Value::Array(a) if !a.iter().all(is_scalar))
}

fn decimal(s: &str) -> Option<String> {
    let (n, d) = s.split_once('/')?;
    let n: f64 = n.trim().parse().ok()?;
    let d: f64 = d.trim().parse().ok()?;
    Some(format!("{:.6}", n / d))
}

fn write_value(out: &mut String, v: &Value, indent: usize, float: bool) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if is_scalar(x) {
                    out.push_str(&format!("{pad}{k}: {}\n", scalar(x, float)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    write_value(out, x, indent + 2, float);
                }
            }
        }
        Value::Array(items)
            if items.iter().all(|x| matches!(x, Value::Object(_))) && !items.is_empty() =>
        {
            write_rows(out, items, indent, float);
        }
        Value::Array(items) => {
            for x in items {
                if is_scalar(x) {
                    out.push_str(&format!("{pad}- {}\n", scalar(x, float)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    write_value(out, x, indent + 2, float);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other, float))),
    }
}

fn write_rows(out: &mut String, rows: &[Value], indent: usize, float: bool) {
    let pad = " ".repeat(indent);
    let mut headers: Vec<String> = Vec::new();
    for r in rows {
        for k in r.as_object().into_iter().flat_map(|m| m.keys()) {
            if !headers.contains(k) {
                headers.push(k.clone());
            }
        }
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            headers
                .iter()
                .map(|h| r.get(h).map_or("-".into(), |x| scalar(x, float)))
                .collect()
        })
        .collect();
    let widths: Vec<usize> = headers
        .iter()
        .enumerate()
        .map(|(i, h)| {
            cells
                .iter()
                .map(|c| c[i].chars().count())
                .chain([h.len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |vals: &[String]| {
        let padded: Vec<String> = vals
            .iter()
            .zip(&widths)
            .map(|(v, w)| format!("{v:<w$}"))
            .collect();
        format!("{pad}{}\n", padded.join("  ").trim_end())
    };
    out.push_str(&line(&headers));
    for c in &cells {
        out.push_str(&line(c));
    }
}
