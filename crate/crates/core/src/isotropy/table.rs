use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::orbit::{from_orders, is_almost_free, orbit_types, OrbitTypeSet};
use crate::bundle::{canonical_solution, solve_euler, ActionParams, BundleParams};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LClass {
    Even,
    Odd,
    Zero,
}

/// Position in the table of standard actions: parity of `k` and the class
/// of `l` (with `l = 0` on its own row).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TableCell {
    pub k_even: bool,
    pub l_class: LClass,
}

impl TableCell {
    pub fn of(k: i64, l: i64) -> Self {
        let l_class = if l == 0 {
            LClass::Zero
        } else if l % 2 == 0 {
            LClass::Even
        } else {
            LClass::Odd
        };
        TableCell {
            k_even: k % 2 == 0,
            l_class,
        }
    }

    /// The dihedral orders (beyond `1, Z_2, D_2`) as displayed formulas.
    pub fn formulas(&self) -> [&'static str; 2] {
        match (self.k_even, self.l_class) {
            (true, LClass::Even) => ["|k+l|", "|k-l±1|"],
            (false, LClass::Even) => ["|k+2l±1|/2", "|k-2l±3|/2"],
            (true, LClass::Odd) => ["|2k+l±1|/2", "|2k-l±3|/2"],
            (false, LClass::Odd) => ["|k-l±4|/2", "|k+l|/2"],
            (true, LClass::Zero) => ["|2n+1±k|", "|2n±k|"],
            (false, LClass::Zero) => ["|4n+3±k|/2", "|4n-1±k|/2"],
        }
    }

    /// The formulas evaluated (`n` only matters on the `l = 0` row).
    pub fn orders(&self, k: i64, l: i64, n: i64) -> Vec<u64> {
        let (k, l, n) = (i128::from(k), i128::from(l), i128::from(n));
        let abs = |x: i128| u64::try_from(x.unsigned_abs()).expect("order fits in u64");
        let half = |x: i128| {
            debug_assert_eq!(x % 2, 0);
            abs(x) / 2
        };
        match (self.k_even, self.l_class) {
            (true, LClass::Even) => vec![abs(k + l), abs(k - l + 1), abs(k - l - 1)],
            (false, LClass::Even) => vec![
                half(k + 2 * l + 1),
                half(k + 2 * l - 1),
                half(k - 2 * l + 3),
                half(k - 2 * l - 3),
            ],
            (true, LClass::Odd) => vec![
                half(2 * k + l + 1),
                half(2 * k + l - 1),
                half(2 * k - l + 3),
                half(2 * k - l - 3),
            ],
            (false, LClass::Odd) => vec![half(k - l + 4), half(k - l - 4), half(k + l)],
            (true, LClass::Zero) => vec![
                abs(2 * n + 1 + k),
                abs(2 * n + 1 - k),
                abs(2 * n + k),
                abs(2 * n - k),
            ],
            (false, LClass::Zero) => vec![
                half(4 * n + 3 + k),
                half(4 * n + 3 - k),
                half(4 * n - 1 + k),
                half(4 * n - 1 - k),
            ],
        }
    }
}

/// The `(q_-, q_+)` used for class `l` in the table: `(q_+, q_-)` is the
/// canonical solution for `l`, and `l = 0` uses `(4n+1, 4n+1)`.
pub fn table_q(l: i64, n: i64) -> Result<BundleParams> {
    if l == 0 {
        let q = 4 * n + 1;
        return BundleParams::new(q, q);
    }
    Ok(canonical_solution(l)?.swapped())
}

/// Slopes of the table's action for `(k, l)` (member `n` when `l = 0`).
pub fn table_params(k: i64, l: i64, n: i64) -> Result<ActionParams> {
    Ok(ActionParams::from_pairs(
        canonical_solution(k)?,
        table_q(l, n)?,
    ))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableMember {
    pub n: Option<i64>,
    pub params: ActionParams,
    pub orders: Vec<u64>,
    pub orbit_types: OrbitTypeSet,
    pub almost_free: bool,
}

/// One entry of the table of standard actions.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableEntry {
    pub k: i64,
    pub l: i64,
    pub cell: TableCell,
    pub formulas: [&'static str; 2],
    /// One member, or the members `n ∈ [-family_bound, family_bound]` for `l = 0`.
    pub members: Vec<TableMember>,
}

/// Orbit types of the standard action on the bundle with classes
/// `(k, l)`: slopes from the canonical solutions, evaluated both through
/// the cell formulas and through [`orbit_types`] (which must agree).
pub fn isotropy_table(k: i64, l: i64, family_bound: i64) -> Result<TableEntry> {
    let cell = TableCell::of(k, l);
    let ns: Vec<Option<i64>> = if l == 0 {
        (-family_bound..=family_bound).map(Some).collect()
    } else {
        vec![None]
    };
    let mut members = Vec::new();
    for n in ns {
        let params = table_params(k, l, n.unwrap_or(0))?;
        let types = orbit_types(&params)?;
        let orders = cell.orders(k, l, n.unwrap_or(0));
        let from_formula = from_orders(&orders);
        if !from_formula.same_types(&types) {
            return Err(Error::Validation(vec![format!(
                "table formula {from_formula} disagrees with {types} for {params}"
            )]));
        }
        members.push(TableMember {
            n,
            params,
            orders,
            almost_free: is_almost_free(&types),
            orbit_types: types,
        });
    }
    Ok(TableEntry {
        k,
        l,
        cell,
        formulas: cell.formulas(),
        members,
    })
}

/// The symbolic table: rows `l` even / odd / zero, columns `k` even / odd.
pub fn render_isotropy_table() -> String {
    let mut rows = vec![["".to_string(), "k even".to_string(), "k odd".to_string()]];
    for (name, l_class) in [
        ("l even", LClass::Even),
        ("l odd", LClass::Odd),
        ("l = 0", LClass::Zero),
    ] {
        let cell = |k_even| {
            let [a, b] = TableCell { k_even, l_class }.formulas();
            format!("D_{a}, D_{b}")
        };
        rows.push([name.to_string(), cell(true), cell(false)]);
    }
    let widths: Vec<usize> = (0..3)
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:<w$}", w = *w))
            .collect();
        out.push_str(line.join("  |  ").trim_end());
        out.push('\n');
    }
    out
}

/// The action on the Hopf bundle `(k, l) = (1, 0)` with slopes
/// `(-3, 4n+1, 1, 4n+1)`.
pub fn hopf_family(n: i64) -> Result<(ActionParams, OrbitTypeSet)> {
    let q = 4 * n + 1;
    let params = ActionParams::new(-3, q, 1, q)?;
    Ok((params, orbit_types(&params)?))
}

/// The orders `|2n-1|, |2n|, |2n+1|, |2n+2|` of the Hopf family.
pub fn hopf_family_orders(n: i64) -> [u64; 4] {
    [2 * n - 1, 2 * n, 2 * n + 1, 2 * n + 2].map(i64::unsigned_abs)
}

/// Actions on the homotopy sphere with `(k', 1-k')`, `k' = k + 56n`, which
/// is oriented diffeomorphic to the one for `k`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Mod56Member {
    pub k: i64,
    pub n: i64,
    pub shifted_k: i64,
    pub orders: [u64; 4],
    pub orbit_types: OrbitTypeSet,
    pub params: ActionParams,
}

/// For even `k`: orders `|k'+1±1|/2` and `|3k'-1±3|/2`; for odd `k`:
/// `|k'-2±1|/2` and `|3k'-2±3|/2`, with `k' = k + 56n`. The result is
/// checked against [`orbit_types`] of the table's action for `(k', 1-k')`.
pub fn mod56_family(k: i64, n: i64) -> Result<Mod56Member> {
    let shifted = k
        .checked_add(n.checked_mul(56).ok_or(Error::Overflow("mod56_family"))?)
        .ok_or(Error::Overflow("mod56_family"))?;
    let kp = i128::from(shifted);
    let half = |x: i128| u64::try_from(x.unsigned_abs() / 2).expect("order fits");
    let orders = if shifted % 2 == 0 {
        [half(kp + 2), half(kp), half(3 * kp + 2), half(3 * kp - 4)]
    } else {
        [
            half(kp - 1),
            half(kp - 3),
            half(3 * kp + 1),
            half(3 * kp - 5),
        ]
    };
    let types = from_orders(&orders);
    let params = table_params(shifted, 1 - shifted, 0)?;
    let direct = orbit_types(&params)?;
    if !types.same_types(&direct) {
        return Err(Error::Validation(vec![format!(
            "closed form {types} disagrees with {direct} for {params}"
        )]));
    }
    Ok(Mod56Member {
        k,
        n,
        shifted_k: shifted,
        orders,
        orbit_types: types,
        params,
    })
}

/// A tuple of slopes realizing `(k, l)` together with its orbit types.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Lift {
    pub params: ActionParams,
    pub orbit_types: OrbitTypeSet,
}

impl fmt::Display for Lift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.params, self.orbit_types)
    }
}

/// All almost free actions on the bundle with classes `(k, l)`: every
/// `(p_-, p_+)` for `k` joined with every `(q_-, q_+)` for `l` (that is,
/// `(q_-^2 - q_+^2)/8 = -l`). `bound` limits `|p_-|` and `|q_-|` and is
/// required when `k` or `l` is zero.
pub fn find_almost_free_lift(k: i64, l: i64, bound: Option<i64>) -> Result<Vec<Lift>> {
    let ps = solve_euler(k, bound)?;
    let minus_l = l
        .checked_neg()
        .ok_or(Error::Overflow("find_almost_free_lift"))?;
    let qs = solve_euler(minus_l, bound)?;
    let pairs: Vec<(BundleParams, BundleParams)> = ps
        .iter()
        .flat_map(|p| qs.iter().map(move |q| (*p, *q)))
        .collect();
    let lifts: Result<Vec<Option<Lift>>> = pairs
        .par_iter()
        .map(|(p, q)| {
            let params = ActionParams::from_pairs(*p, *q);
            let types = orbit_types(&params)?;
            Ok(is_almost_free(&types).then_some(Lift {
                params,
                orbit_types: types,
            }))
        })
        .collect();
    // the join is already ordered by (p, q) position
    Ok(lifts?.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::classify_pair;
    use crate::isotropy::OrbitType;

    #[test]
    fn table_params_realize_classes() {
        for k in -12..=12 {
            for l in -12..=12 {
                let p = table_params(k, l, 2).unwrap();
                assert_eq!(classify_pair(&p).unwrap(), (k, l));
            }
        }
    }

    #[test]
    fn table_cells_agree_with_orbit_types() {
        for k in -30..=30 {
            for l in -30..=30 {
                isotropy_table(k, l, 3).unwrap();
            }
        }
    }

    #[test]
    fn hopf_row_matches_family() {
        let entry = isotropy_table(1, 0, 20).unwrap();
        for m in &entry.members {
            let n = m.n.unwrap();
            let (params, types) = hopf_family(n).unwrap();
            assert_eq!(params, m.params);
            assert!(types.same_types(&from_orders(&hopf_family_orders(n))));
        }
    }

    #[test]
    fn two_power_classes_have_no_almost_free_lift() {
        for r in 0..=6 {
            let k = 1i64 << r;
            assert!(find_almost_free_lift(k, -k, None).unwrap().is_empty());
        }
    }

    #[test]
    fn three_minus_two_has_one_almost_free_lift() {
        let lifts = find_almost_free_lift(3, -2, None).unwrap();
        assert_eq!(lifts.len(), 1);
        let lift = &lifts[0];
        assert_eq!(lift.params, ActionParams::new(-7, 5, 5, -3).unwrap());
        use OrbitType::*;
        let expected: OrbitTypeSet = [Trivial, Z2, Dihedral(2), Dihedral(4), Dihedral(6)]
            .into_iter()
            .collect();
        assert!(lift.orbit_types.same_types(&expected));
    }

    #[test]
    fn unbounded_family_needs_bound() {
        assert_eq!(
            find_almost_free_lift(1, 0, None),
            Err(Error::UnboundedFamily)
        );
        assert!(!find_almost_free_lift(1, 0, Some(41)).unwrap().is_empty());
    }

    #[test]
    fn mod56_examples() {
        let m = mod56_family(3, 0).unwrap();
        assert_eq!(m.orders, [1, 0, 5, 2]);
        assert!(m.orbit_types.contains(OrbitType::SO2));
        let m = mod56_family(2, 0).unwrap();
        assert_eq!(m.orders, [2, 1, 4, 1]);
        for k in -30..30 {
            for n in -3..=3 {
                mod56_family(k, n).unwrap();
            }
        }
    }

    #[test]
    fn rendered_table_has_three_rows() {
        let t = render_isotropy_table();
        assert_eq!(t.lines().count(), 4);
        assert!(t.contains("D_|k+l|"));
    }
}
