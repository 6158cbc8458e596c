//! Deterministic report rendering: JSON (sorted keys, fixed-precision
//! floats as strings, infinities as `"inf"` with a reason), CSV, and
//! aligned tables.

use serde_json::{json, Map, Value};
use speclab::report::{Quantity, Verdict};
use speclab::spectral1d::{Count, EigencountResult};

pub fn fnum(v: f64) -> Value {
    Value::String(format!("{v:.12e}"))
}

pub fn quantity_json(q: &Quantity) -> Value {
    let mut m = Map::new();
    match q.verdict {
        Verdict::Finite => {
            m.insert("status".into(), json!("finite"));
            m.insert("value".into(), fnum(q.value.unwrap()));
            m.insert("err".into(), fnum(q.err));
        }
        Verdict::Infinite => {
            m.insert("status".into(), json!("inf"));
            m.insert(
                "reason".into(),
                json!(q.note.clone().unwrap_or_else(|| "divergent".into())),
            );
        }
        Verdict::Unknown => {
            m.insert("status".into(), json!("unknown"));
            if let Some(v) = q.value {
                m.insert("partial".into(), fnum(v));
            }
            m.insert(
                "reason".into(),
                json!(q.note.clone().unwrap_or_else(|| "unresolved".into())),
            );
        }
    }
    Value::Object(m)
}

pub fn quantity_cell(q: &Quantity) -> String {
    match q.verdict {
        Verdict::Finite => format!("{:.6e}", q.value.unwrap()),
        Verdict::Infinite => "inf".to_string(),
        Verdict::Unknown => "unknown".to_string(),
    }
}

pub fn count_json(c: &Count) -> Value {
    match c {
        Count::Exact(n) => json!({"kind": "exact", "value": n}),
        Count::Bracket { lo, hi } => json!({"kind": "bracket", "lower": lo, "upper": hi}),
        Count::Infinite { evidence } => json!({"kind": "inf", "evidence": evidence}),
    }
}

pub fn eigencount_json(r: &EigencountResult) -> Value {
    let per_mode: Vec<Value> = r
        .per_mode
        .iter()
        .map(|(m, c)| json!({"mode": m, "count": count_json(c)}))
        .collect();
    json!({
        "count": count_json(&r.count),
        "method": r.method,
        "mode_cutoff": r.mode_cutoff,
        "per_mode": per_mode,
        "notes": r.notes,
    })
}

pub fn bound_report_json(r: &speclab::bounds::BoundReport) -> Value {
    let constants: Vec<Value> = r
        .constants
        .iter()
        .map(|c| match c.value {
            Some(v) => json!({"symbol": c.symbol, "status": "explicit", "value": fnum(v)}),
            None => json!({"symbol": c.symbol, "status": "unknown"}),
        })
        .collect();
    let ingredients: Vec<Value> = r
        .ingredients
        .iter()
        .map(|i| json!({"name": i.name, "quantity": quantity_json(&i.quantity)}))
        .collect();
    let thresholds: Vec<Value> = r
        .thresholds
        .iter()
        .map(|(k, v)| json!({"name": k, "value": fnum(*v)}))
        .collect();
    json!({
        "estimate": r.id.key(),
        "value": quantity_json(&r.value),
        "constants": constants,
        "thresholds": thresholds,
        "ingredients": ingredients,
    })
}

/// Wrap a payload with tool provenance for reproducibility.
pub fn envelope(task: &str, config_hash: &str, payload: Value) -> Value {
    json!({
        "tool": "speclab",
        "version": env!("CARGO_PKG_VERSION"),
        "task": task,
        "config_hash": config_hash,
        "report": payload,
    })
}

pub fn render_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            if i < widths.len() {
                widths[i] = widths[i].max(cell.len());
            }
        }
    }
    let mut out = String::new();
    let fmt_row = |cells: &[String], widths: &[usize]| -> String {
        cells
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{:<width$}", c, width = widths[i]))
            .collect::<Vec<_>>()
            .join("  ")
    };
    out.push_str(&fmt_row(
        &headers.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        &widths,
    ));
    out.push('\n');
    out.push_str(&"-".repeat(widths.iter().sum::<usize>() + 2 * widths.len()));
    out.push('\n');
    for row in rows {
        out.push_str(&fmt_row(row, &widths));
        out.push('\n');
    }
    out
}

pub fn csv_escape(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
