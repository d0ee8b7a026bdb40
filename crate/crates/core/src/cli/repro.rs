//! Regenerates the reference tables and lists and compares them with the
//! expected values shipped in `data/`.

use std::collections::BTreeSet;

use clap::ValueEnum;
use serde::Serialize;

use crate::bundle::solve_euler;
use crate::classify::{realized_folded, realized_values};
use crate::error::{Error, Result};
use crate::isotropy::{
    from_orders, hopf_family, is_almost_free, oliver_obstruction, orbit_types, table_params,
    LClass, OliverVerdict, TableCell,
};

const K105: &str = include_str!("../../data/k105.txt");
const EK16: &str = include_str!("../../data/ek16.txt");
const TABLE42: &str = include_str!("../../data/table42.txt");
const THM45: &str = include_str!("../../data/thm45.txt");

/// Range of `k`, `l` (and `n` on the `l = 0` row) over which the table's
/// formulas are evaluated.
const TABLE_RANGE: i64 = 24;
const TABLE_FAMILY_RANGE: i64 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ReproTarget {
    Table42,
    K105,
    Ek16,
    Thm45,
    All,
}

impl ReproTarget {
    fn expand(self) -> Vec<ReproTarget> {
        match self {
            ReproTarget::All => vec![
                ReproTarget::Table42,
                ReproTarget::K105,
                ReproTarget::Ek16,
                ReproTarget::Thm45,
            ],
            t => vec![t],
        }
    }

    fn name(self) -> &'static str {
        match self {
            ReproTarget::Table42 => "table42",
            ReproTarget::K105 => "k105",
            ReproTarget::Ek16 => "ek16",
            ReproTarget::Thm45 => "thm45",
            ReproTarget::All => "all",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReproCheck {
    pub target: &'static str,
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReproReport {
    pub checks: Vec<ReproCheck>,
    pub mismatches: usize,
}

impl ReproReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }
}

pub fn repro(target: ReproTarget) -> Result<ReproReport> {
    let mut checks = Vec::new();
    for t in target.expand() {
        match t {
            ReproTarget::K105 => k105(&mut checks)?,
            ReproTarget::Ek16 => ek16(&mut checks)?,
            ReproTarget::Table42 => table42(&mut checks)?,
            ReproTarget::Thm45 => thm45(&mut checks)?,
            ReproTarget::All => unreachable!(),
        }
    }
    let mismatches = checks.iter().filter(|c| !c.ok).count();
    Ok(ReproReport { checks, mismatches })
}

fn check(
    target: ReproTarget,
    name: impl Into<String>,
    expected: String,
    actual: String,
) -> ReproCheck {
    ReproCheck {
        target: target.name(),
        name: name.into(),
        ok: expected == actual,
        expected,
        actual,
    }
}

fn data_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

fn keyed<'a>(text: &'a str, key: &str) -> Result<&'a str> {
    data_lines(text)
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(':')))
        .map(str::trim)
        .ok_or_else(|| Error::Construction(format!("data file has no '{key}' line")))
}

fn parse_ints(s: &str) -> Result<Vec<i64>> {
    s.split_whitespace()
        .map(|w| {
            w.parse()
                .map_err(|_| Error::Construction(format!("not an integer in data file: {w}")))
        })
        .collect()
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn k105(out: &mut Vec<ReproCheck>) -> Result<()> {
    let expected: Vec<String> = data_lines(K105)
        .map(|l| parse_ints(l).map(|v| format!("({}, {})", v[0], v[1])))
        .collect::<Result<_>>()?;
    let actual: Vec<String> = solve_euler(105, None)?
        .iter()
        .map(ToString::to_string)
        .collect();
    out.push(check(
        ReproTarget::K105,
        "solutions for k = 105",
        expected.join(" "),
        actual.join(" "),
    ));
    Ok(())
}

fn ek16(out: &mut Vec<ReproCheck>) -> Result<()> {
    let values = parse_ints(keyed(EK16, "values")?)?;
    let folded = parse_ints(keyed(EK16, "folded")?)?;
    out.push(check(
        ReproTarget::Ek16,
        "realized values",
        join(values),
        join(realized_values()),
    ));
    out.push(check(
        ReproTarget::Ek16,
        "realized values up to orientation",
        join(folded),
        join(realized_folded()),
    ));
    Ok(())
}

fn cell_of(l_class: &str, k_parity: &str) -> Result<TableCell> {
    let l_class = match l_class {
        "l_even" => LClass::Even,
        "l_odd" => LClass::Odd,
        "l_zero" => LClass::Zero,
        other => return Err(Error::Construction(format!("unknown row {other}"))),
    };
    let k_even = match k_parity {
        "k_even" => true,
        "k_odd" => false,
        other => return Err(Error::Construction(format!("unknown column {other}"))),
    };
    Ok(TableCell { k_even, l_class })
}

fn table42(out: &mut Vec<ReproCheck>) -> Result<()> {
    for line in data_lines(TABLE42) {
        let words: Vec<&str> = line.split_whitespace().collect();
        let [row, col, f1, f2] = words[..] else {
            return Err(Error::Construction(format!("bad table line: {line}")));
        };
        let cell = cell_of(row, col)?;
        let label = format!("{row}/{col}");
        out.push(check(
            ReproTarget::Table42,
            format!("{label} formulas"),
            format!("{f1} {f2}"),
            cell.formulas().join(" "),
        ));
        // evaluate the expected formulas against the orbit types of the action
        let mut evaluated = 0usize;
        let mut disagreements = Vec::new();
        let ns: Vec<i64> = if cell.l_class == LClass::Zero {
            (-TABLE_FAMILY_RANGE..=TABLE_FAMILY_RANGE).collect()
        } else {
            vec![0]
        };
        for k in -TABLE_RANGE..=TABLE_RANGE {
            for l in -TABLE_RANGE..=TABLE_RANGE {
                if TableCell::of(k, l) != cell {
                    continue;
                }
                for &n in &ns {
                    let mut orders = eval_order_formula(f1, k, l, n)?;
                    orders.extend(eval_order_formula(f2, k, l, n)?);
                    let tabulated = from_orders(&orders);
                    let direct = orbit_types(&table_params(k, l, n)?)?;
                    evaluated += 1;
                    if !tabulated.same_types(&direct) {
                        disagreements.push(format!(
                            "(k, l, n) = ({k}, {l}, {n}): {tabulated} vs {direct}"
                        ));
                    }
                }
            }
        }
        let actual = match disagreements.first() {
            None => format!("agrees on {evaluated} cases"),
            Some(first) => format!("{} disagreements, first {first}", disagreements.len()),
        };
        out.push(check(
            ReproTarget::Table42,
            format!("{label} against orbit types"),
            format!("agrees on {evaluated} cases"),
            actual,
        ));
    }
    Ok(())
}

fn thm45(out: &mut Vec<ReproCheck>) -> Result<()> {
    let formulas: Vec<&str> = keyed(THM45, "orders")?.split_whitespace().collect();
    let range = parse_ints(keyed(THM45, "range")?)?;
    let (lo, hi) = match range[..] {
        [lo, hi] => (lo, hi),
        _ => return Err(Error::Construction("range needs two integers".into())),
    };
    let mut disagreements = Vec::new();
    let mut not_almost_free = BTreeSet::new();
    let mut extension_possible = BTreeSet::new();
    for n in lo..=hi {
        let mut orders = Vec::new();
        for f in &formulas {
            orders.extend(eval_order_formula(f, 0, 0, n)?);
        }
        let (_, types) = hopf_family(n)?;
        if !from_orders(&orders).same_types(&types) {
            disagreements.push(n);
        }
        if !is_almost_free(&types) {
            not_almost_free.insert(n);
        }
        if oliver_obstruction(&types) != OliverVerdict::ExtensionExcluded {
            extension_possible.insert(n);
        }
    }
    out.push(check(
        ReproTarget::Thm45,
        "orbit types for each n",
        "none".into(),
        if disagreements.is_empty() {
            "none".into()
        } else {
            format!("disagree at n = {}", join(disagreements))
        },
    ));
    let sorted = |v: Vec<i64>| join(v.into_iter().collect::<BTreeSet<_>>());
    out.push(check(
        ReproTarget::Thm45,
        "members that are not almost free",
        sorted(parse_ints(keyed(THM45, "not_almost_free")?)?),
        join(not_almost_free),
    ));
    out.push(check(
        ReproTarget::Thm45,
        "members whose extension is not excluded",
        sorted(parse_ints(keyed(THM45, "extension_possible")?)?),
        join(extension_possible),
    ));
    Ok(())
}

/// Evaluates an order formula such as `|k-2l±3|/2` or `|2n+1±k|` at
/// `(k, l, n)`. Each `±` doubles the number of values.
pub fn eval_order_formula(formula: &str, k: i64, l: i64, n: i64) -> Result<Vec<u64>> {
    let bad = || Error::Construction(format!("cannot parse order formula {formula}"));
    let (body, divisor) = match formula.strip_suffix("/2") {
        Some(b) => (b, 2),
        None => (formula, 1),
    };
    let inner = body
        .strip_prefix('|')
        .and_then(|b| b.strip_suffix('|'))
        .ok_or_else(bad)?;

    // partial sums, one per choice of signs so far
    let mut sums = vec![0i64];
    let mut chars = inner.chars().peekable();
    while chars.peek().is_some() {
        let signs: &[i64] = match chars.peek() {
            Some('+') => {
                chars.next();
                &[1]
            }
            Some('-') => {
                chars.next();
                &[-1]
            }
            Some('±') => {
                chars.next();
                &[1, -1]
            }
            _ => &[1],
        };
        let mut digits = String::new();
        while let Some(c) = chars.peek().filter(|c| c.is_ascii_digit()) {
            digits.push(*c);
            chars.next();
        }
        let var = match chars.peek() {
            Some('k') => Some(k),
            Some('l') => Some(l),
            Some('n') => Some(n),
            _ => None,
        };
        if var.is_some() {
            chars.next();
        }
        let coefficient: i64 = if digits.is_empty() {
            if var.is_none() {
                return Err(bad());
            }
            1
        } else {
            digits.parse().map_err(|_| bad())?
        };
        let term = coefficient * var.unwrap_or(1);
        sums = sums
            .iter()
            .flat_map(|s| signs.iter().map(move |sign| s + sign * term))
            .collect();
    }
    sums.into_iter()
        .map(|s| {
            if s % divisor != 0 {
                Err(Error::Construction(format!(
                    "{formula} is not an integer at (k, l, n) = ({k}, {l}, {n})"
                )))
            } else {
                Ok((s / divisor).unsigned_abs())
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_evaluation() {
        assert_eq!(eval_order_formula("|k+l|", 3, -5, 0).unwrap(), vec![2]);
        assert_eq!(
            eval_order_formula("|k-2l±3|/2", 3, 2, 0).unwrap(),
            vec![1, 2]
        );
        assert_eq!(eval_order_formula("|2n+1±k|", 2, 0, 1).unwrap(), vec![5, 1]);
        assert!(eval_order_formula("|k+l|/2", 1, 0, 0).is_err());
        assert!(eval_order_formula("k+l", 1, 0, 0).is_err());
    }

    #[test]
    fn every_target_reproduces() {
        let report = repro(ReproTarget::All).unwrap();
        let bad: Vec<_> = report.checks.iter().filter(|c| !c.ok).collect();
        assert!(bad.is_empty(), "{bad:#?}");
        assert_eq!(report.checks.len(), 1 + 2 + 12 + 3);
    }
}
