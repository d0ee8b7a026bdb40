//! Integer arithmetic of principal `S^3` and `S^3 × S^3` bundles over `S^4`
//! (and `S^3` bundles over `S^7`) carrying cohomogeneity one actions.
//!
//! Slopes `p_±, q_± ≡ 1 (mod 4)` determine the bundle through
//! `k = (p_-^2 - p_+^2)/8` and `l = -(q_-^2 - q_+^2)/8`.

mod cohomology;

pub use cohomology::{cohomology_report, CohomologyGroup, CohomologyKind, CohomologyReport};

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A pair of slopes `(p_-, p_+)`, both `≡ 1 (mod 4)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BundleParams {
    pub p_minus: i64,
    pub p_plus: i64,
}

impl BundleParams {
    pub fn new(p_minus: i64, p_plus: i64) -> Result<Self> {
        check_mod4("p_minus", p_minus)?;
        check_mod4("p_plus", p_plus)?;
        Ok(BundleParams { p_minus, p_plus })
    }

    pub fn swapped(self) -> Self {
        BundleParams {
            p_minus: self.p_plus,
            p_plus: self.p_minus,
        }
    }
}

impl fmt::Display for BundleParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p_minus, self.p_plus)
    }
}

/// Four slopes `(p_-, q_-, p_+, q_+)` for the `S^3 × S^3 × S^3` diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ActionParams {
    pub p_minus: i64,
    pub q_minus: i64,
    pub p_plus: i64,
    pub q_plus: i64,
}

impl ActionParams {
    pub fn new(p_minus: i64, q_minus: i64, p_plus: i64, q_plus: i64) -> Result<Self> {
        check_mod4("p_minus", p_minus)?;
        check_mod4("q_minus", q_minus)?;
        check_mod4("p_plus", p_plus)?;
        check_mod4("q_plus", q_plus)?;
        Ok(ActionParams {
            p_minus,
            q_minus,
            p_plus,
            q_plus,
        })
    }

    /// Combines `p = (p_-, p_+)` and `q = (q_-, q_+)`.
    pub fn from_pairs(p: BundleParams, q: BundleParams) -> Self {
        ActionParams {
            p_minus: p.p_minus,
            q_minus: q.p_minus,
            p_plus: p.p_plus,
            q_plus: q.p_plus,
        }
    }

    pub fn p(&self) -> BundleParams {
        BundleParams {
            p_minus: self.p_minus,
            p_plus: self.p_plus,
        }
    }

    pub fn q(&self) -> BundleParams {
        BundleParams {
            p_minus: self.q_minus,
            p_plus: self.q_plus,
        }
    }

    pub fn as_array(&self) -> [i64; 4] {
        [self.p_minus, self.q_minus, self.p_plus, self.q_plus]
    }
}

impl fmt::Display for ActionParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {})",
            self.p_minus, self.q_minus, self.p_plus, self.q_plus
        )
    }
}

fn check_mod4(name: &'static str, value: i64) -> Result<()> {
    if value.rem_euclid(4) == 1 {
        Ok(())
    } else {
        Err(Error::NotOneModFour { name, value })
    }
}

fn narrow(value: i128, what: &'static str) -> Result<i64> {
    i64::try_from(value).map_err(|_| Error::Overflow(what))
}

/// `(p_-^2 - p_+^2)/8`.
pub fn euler_class(p: &BundleParams) -> Result<i64> {
    let BundleParams { p_minus, p_plus } = BundleParams::new(p.p_minus, p.p_plus)?;
    let diff = i128::from(p_minus).pow(2) - i128::from(p_plus).pow(2);
    debug_assert_eq!(diff % 8, 0, "slopes ≡ 1 mod 4 give a multiple of 8");
    narrow(diff / 8, "euler_class")
}

/// All `(p_-, p_+)` with `(p_-^2 - p_+^2)/8 = k`, ordered by `|p_-|`.
///
/// Writing `k = n m` with `n` odd, `p_- = n + 2m` and `p_+ = n - 2m`; the
/// factorization contributes a solution exactly when `n + 2m ≡ 1 (mod 4)`.
/// For `k = 0` the solutions are `p_- = p_+ = 4n+1`, an infinite family,
/// so `bound` (on `|p_-|`) is required.
pub fn solve_euler(k: i64, bound: Option<i64>) -> Result<Vec<BundleParams>> {
    if k == 0 {
        let bound = bound.ok_or(Error::UnboundedFamily)?;
        let mut out: Vec<BundleParams> = (-(bound / 4) - 1..=bound / 4)
            .map(|n| 4 * n + 1)
            .filter(|p| p.abs() <= bound)
            .map(|p| BundleParams {
                p_minus: p,
                p_plus: p,
            })
            .collect();
        out.sort_by_key(|b| (b.p_minus.unsigned_abs(), b.p_minus));
        return Ok(out);
    }
    let k = i128::from(k);
    let mut odd = k.abs();
    while odd % 2 == 0 {
        odd /= 2;
    }
    let mut out = Vec::new();
    for n in odd_divisors(odd) {
        for n in [n, -n] {
            let m = k / n;
            let p_minus = n + 2 * m;
            if p_minus.rem_euclid(4) != 1 {
                continue;
            }
            let p = BundleParams {
                p_minus: narrow(p_minus, "solve_euler")?,
                p_plus: narrow(n - 2 * m, "solve_euler")?,
            };
            if bound.is_none_or(|b| p.p_minus.abs() <= b) {
                out.push(p);
            }
        }
    }
    out.sort_by_key(|b| (b.p_minus.unsigned_abs(), b.p_minus));
    Ok(out)
}

fn odd_divisors(odd: i128) -> Vec<i128> {
    let mut divs = Vec::new();
    let mut d = 1i128;
    while d * d <= odd {
        if odd % d == 0 {
            divs.push(d);
            if d * d != odd {
                divs.push(odd / d);
            }
        }
        d += 2;
    }
    divs
}

/// The standard choice of slopes for Euler class `k`:
/// `(2k+1, -2k+1)` for even `k`, `(-k-2, -k+2)` for `k ≡ 1` and
/// `(k+2, k-2)` for `k ≡ 3 (mod 4)`.
pub fn canonical_solution(k: i64) -> Result<BundleParams> {
    let k = i128::from(k);
    let (a, b) = match k.rem_euclid(4) {
        0 | 2 => (2 * k + 1, -2 * k + 1),
        1 => (-k - 2, -k + 2),
        _ => (k + 2, k - 2),
    };
    Ok(BundleParams {
        p_minus: narrow(a, "canonical_solution")?,
        p_plus: narrow(b, "canonical_solution")?,
    })
}

/// `(k, l)` with `k = (p_-^2 - p_+^2)/8` and `l = -(q_-^2 - q_+^2)/8`.
pub fn classify_pair(params: &ActionParams) -> Result<(i64, i64)> {
    let params = ActionParams::new(params.p_minus, params.q_minus, params.p_plus, params.q_plus)?;
    let k = euler_class(&params.p())?;
    let l = euler_class(&params.q())?
        .checked_neg()
        .ok_or(Error::Overflow("classify_pair"))?;
    Ok((k, l))
}

/// The `2 × 2` matrix of the difference of the restriction maps in the
/// Mayer–Vietoris sequence of the two disc bundles, in degrees 3 and 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MvMatrix {
    pub entries: [[i128; 2]; 2],
    pub determinant: i128,
    /// `|det|/8`; the factor 8 comes from the covering of the principal orbit.
    pub k_abs: i128,
}

pub fn mv_matrix(p: &BundleParams) -> Result<MvMatrix> {
    let p = BundleParams::new(p.p_minus, p.p_plus)?;
    let pm = i128::from(p.p_minus).pow(2);
    let pp = i128::from(p.p_plus).pow(2);
    let entries = [[-1, 1], [pm, -pp]];
    let determinant = entries[0][0] * entries[1][1] - entries[0][1] * entries[1][0];
    debug_assert_eq!(determinant % 8, 0);
    let k_abs = determinant.abs() / 8;
    debug_assert_eq!(
        Some(k_abs),
        euler_class(&p).ok().map(|k| i128::from(k).abs())
    );
    Ok(MvMatrix {
        entries,
        determinant,
        k_abs,
    })
}

/// Residues `r = k(k+1)/2 mod 12` realized by `S^3` bundles over `S^7`
/// with the cohomogeneity one structure.
pub const S7_ACHIEVABLE: [i64; 8] = [0, 1, 3, 4, 6, 7, 9, 10];

/// `k(k+1)/2 mod 12`.
pub fn s7_bundle_class(k: i64) -> i64 {
    let k = i128::from(k);
    // k(k+1)/2 only matters mod 12, so reduce k mod 24 first
    let k = k.rem_euclid(24);
    i64::try_from((k * (k + 1) / 2) % 12).expect("residue fits")
}

/// For a residue outside [`S7_ACHIEVABLE`], the achievable residue giving
/// the same total space up to orientation (`r ↦ -r mod 12`).
pub fn s7_orientation_partner(r: i64) -> i64 {
    (-r).rem_euclid(12)
}

/// Bundles over `S^5` built from Lie groups lie outside the slope
/// arithmetic above; this records the fact without computing anything.
pub const S5_BUNDLE_NOTE: &str =
    "Principal bundles over S^5 obtained from Lie group constructions \
are not cohomogeneity one data of the form handled here; no arithmetic is provided for them.";

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(a: i64, b: i64) -> BundleParams {
        BundleParams::new(a, b).unwrap()
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler_class(&bp(-3, 1)).unwrap(), 1);
        assert_eq!(euler_class(&bp(29, 1)).unwrap(), 105);
        assert_eq!(euler_class(&bp(5, 5)).unwrap(), 0);
        let bad = BundleParams {
            p_minus: 3,
            p_plus: 1,
        };
        assert!(matches!(
            euler_class(&bad),
            Err(Error::NotOneModFour { .. })
        ));
    }

    #[test]
    fn zero_needs_bound() {
        assert_eq!(solve_euler(0, None), Err(Error::UnboundedFamily));
        let fam = solve_euler(0, Some(9)).unwrap();
        let ps: Vec<i64> = fam.iter().map(|b| b.p_minus).collect();
        assert_eq!(ps, vec![1, -3, 5, -7, 9]);
        assert!(fam.iter().all(|b| b.p_minus == b.p_plus));
    }

    #[test]
    fn canonical_cases() {
        assert_eq!(canonical_solution(2).unwrap(), bp(5, -3));
        assert_eq!(canonical_solution(1).unwrap(), bp(-3, 1));
        assert_eq!(canonical_solution(3).unwrap(), bp(5, 1));
        for k in -40..=40 {
            let c = canonical_solution(k).unwrap();
            assert_eq!(euler_class(&c).unwrap(), k);
        }
    }

    #[test]
    fn classify_examples() {
        let hopf = ActionParams::new(-3, 1, 1, 1).unwrap();
        assert_eq!(classify_pair(&hopf).unwrap(), (1, 0));
        for n in -5..=5 {
            let q = 4 * n + 1;
            let p = ActionParams::new(-3, q, 1, q).unwrap();
            assert_eq!(classify_pair(&p).unwrap().1, 0);
        }
    }

    #[test]
    fn mv_examples() {
        let m = mv_matrix(&bp(5, 1)).unwrap();
        assert_eq!(m.determinant, -24);
        assert_eq!(m.k_abs, 3);
        assert_eq!(mv_matrix(&bp(-3, 1)).unwrap().determinant, -8);
        assert_eq!(mv_matrix(&bp(9, 9)).unwrap().determinant, 0);
    }

    #[test]
    fn s7_residues() {
        assert_eq!(s7_bundle_class(1), 1);
        let mut image: Vec<i64> = (0..24).map(s7_bundle_class).collect();
        image.sort();
        image.dedup();
        assert_eq!(image, S7_ACHIEVABLE);
        for (r, partner) in [(2, 10), (5, 7), (8, 4), (11, 1)] {
            assert_eq!(s7_orientation_partner(r), partner);
        }
        assert_eq!(s7_bundle_class(-1), 0);
    }

    #[test]
    fn large_k_does_not_overflow() {
        let k = 3 * 5 * 7 * 11 * 13 * 17 * 19 * 23 * 29i64;
        let sols = solve_euler(k, None).unwrap();
        assert!(!sols.is_empty());
        for s in sols {
            assert_eq!(euler_class(&s).unwrap(), k);
        }
        assert!(canonical_solution(i64::MAX).is_err());
    }
}
