use serde_json::Value;

use crate::Format;

pub fn render(format: Format, doc: &Value) -> String {
    match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(doc).expect("serializable")),
        Format::Csv => csv(&doc["result"]),
        Format::Table => table(doc),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// `(degree, dimension)` rows from a cohomology map or a coefficient array.
fn degree_rows(result: &Value) -> Option<Vec<(String, String)>> {
    if let Some(Value::Object(h)) = result.get("cohomology") {
        let mut rows: Vec<(usize, String)> =
            h.iter().map(|(k, v)| (k.parse().unwrap_or(usize::MAX), scalar(v))).collect();
        rows.sort();
        return Some(rows.into_iter().map(|(k, v)| (k.to_string(), v)).collect());
    }
    if let Some(Value::Array(c)) = result.get("poincare") {
        return Some(
            c.iter()
                .enumerate()
                .filter(|(_, v)| v.as_u64() != Some(0))
                .map(|(d, v)| (d.to_string(), scalar(v)))
                .collect(),
        );
    }
    None
}

fn csv(result: &Value) -> String {
    let mut out = String::new();
    if let Some(rows) = degree_rows(result) {
        out.push_str("degree,dimension\n");
        for (d, v) in rows {
            out.push_str(&format!("{d},{v}\n"));
        }
    } else if let Some(Value::Array(cs)) = result.get("criteria") {
        out.push_str("criterion,passed,detail\n");
        for c in cs {
            let detail = scalar(&c["detail"]).replace('"', "\"\"");
            out.push_str(&format!("{},{},\"{}\"\n", c["id"], c["passed"], detail));
        }
    } else {
        out.push_str("key,value\n");
        flatten("", result, &mut |k, v| out.push_str(&format!("{k},\"{}\"\n", v.replace('"', "\"\""))));
    }
    out
}

fn flatten(prefix: &str, v: &Value, emit: &mut dyn FnMut(&str, &str)) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, emit);
            }
        }
        other => emit(prefix, &scalar(other)),
    }
}

fn table(doc: &Value) -> String {
    let result = &doc["result"];
    let mut out = format!("{} {}\n", scalar(&doc["command"]), doc["params"]);
    if let Some(rows) = degree_rows(result) {
        out.push_str(&format!("{:>8}  {:>10}\n", "degree", "dimension"));
        for (d, v) in rows {
            out.push_str(&format!("{d:>8}  {v:>10}\n"));
        }
    }
    if let Some(Value::Array(cs)) = result.get("criteria") {
        for c in cs {
            let mark = if c["passed"] == true { "PASS" } else { "FAIL" };
            out.push_str(&format!("[{mark}] {:>2} {}: {}\n", c["id"], scalar(&c["name"]), scalar(&c["detail"])));
        }
    }
    flatten("", result, &mut |k, v| {
        if !k.starts_with("cohomology") && !k.starts_with("criteria") && !k.starts_with("poincare") {
            out.push_str(&format!("{k}: {v}\n"));
        }
    });
    out.push_str(&format!("({} ms)\n", doc["wall_time_ms"]));
    out
}
