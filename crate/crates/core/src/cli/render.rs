use std::fmt::Write;

use serde_json::Value;

use super::repro::ReproReport;
use crate::bundle::BundleParams;
use crate::isotropy::{Lift, TableEntry};

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !i.is_array() && !i.is_object()) => {
            Some(format!(
                "[{}]",
                items
                    .iter()
                    .filter_map(scalar)
                    .collect::<Vec<_>>()
                    .join(", ")
            ))
        }
        _ => None,
    }
}

fn walk(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                match scalar(v) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        walk(out, v, indent + 1);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}-");
                        walk(out, item, indent + 1);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}

/// Indented `key: value` lines.
pub(super) fn human(v: &Value) -> String {
    let mut out = String::new();
    walk(&mut out, v, 0);
    out
}

pub(super) fn pairs(solutions: &[BundleParams]) -> String {
    let mut out = format!("{:>8} {:>8}\n", "p-", "p+");
    for p in solutions {
        let _ = writeln!(out, "{:>8} {:>8}", p.p_minus, p.p_plus);
    }
    let _ = writeln!(out, "{} solutions", solutions.len());
    out
}

pub(super) fn table_entry(e: &TableEntry) -> String {
    let mut out = format!(
        "k = {}, l = {}: orders {}, {}\n",
        e.k, e.l, e.formulas[0], e.formulas[1]
    );
    for m in &e.members {
        let n = m.n.map(|n| format!("n = {n:>3}  ")).unwrap_or_default();
        let orders: Vec<String> = m.orders.iter().map(u64::to_string).collect();
        let _ = writeln!(
            out,
            "{n}{}  orders [{}]  {}{}",
            m.params,
            orders.join(", "),
            m.orbit_types,
            if m.almost_free {
                ""
            } else {
                "  (not almost free)"
            }
        );
    }
    out
}

pub(super) fn lifts(lifts: &[Lift]) -> String {
    let mut out = String::new();
    for l in lifts {
        let _ = writeln!(out, "{l}");
    }
    let _ = writeln!(out, "{} almost free actions", lifts.len());
    out
}

pub(super) fn repro(r: &ReproReport) -> String {
    let mut out = String::new();
    for c in &r.checks {
        let status = if c.ok { "ok  " } else { "DIFF" };
        let _ = writeln!(out, "{status} {:<8} {}", c.target, c.name);
        if !c.ok {
            let _ = writeln!(out, "     expected: {}", c.expected);
            let _ = writeln!(out, "     actual:   {}", c.actual);
        }
    }
    let _ = writeln!(
        out,
        "{} checks, {} mismatches",
        r.checks.len(),
        r.mismatches
    );
    out
}
