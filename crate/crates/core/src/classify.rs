//! Euler classes of `S^3` bundles over `S^4`, the `Z_28` invariant of the
//! homotopy spheres among them, and the Brieskorn and `RP^5` bookkeeping.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};

/// Euler class `e = k + l` of the `S^3` bundle with classes `(k, l)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EulerReport {
    pub k: i64,
    pub l: i64,
    pub euler: i128,
    pub homotopy_sphere: bool,
}

pub fn euler_m(k: i64, l: i64) -> EulerReport {
    let euler = i128::from(k) + i128::from(l);
    EulerReport {
        k,
        l,
        euler,
        homotopy_sphere: euler.abs() == 1,
    }
}

/// Oriented diffeomorphism class in `Z_28` and its orientation-free
/// representative in `0..=14`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DiffeoClass {
    pub value: u8,
    pub orientation_folded: u8,
}

impl DiffeoClass {
    pub fn from_value(value: i64) -> Self {
        let value = value.rem_euclid(28) as u8;
        DiffeoClass {
            value,
            orientation_folded: value.min(28 - value),
        }
    }

    pub fn is_standard(&self) -> bool {
        self.value == 0
    }

    pub fn label(&self) -> String {
        match self.value {
            0 => "standard sphere".into(),
            1 => "generator of Z_28".into(),
            v => format!("{v} times the generator of Z_28"),
        }
    }
}

/// `k(k-1)/2 mod 28`, the class of the homotopy sphere with `(k, 1-k)`.
pub fn eells_kuiper(k: i64) -> DiffeoClass {
    // k(k-1)/2 mod 28 depends on k mod 56
    let k = i128::from(k).rem_euclid(56);
    DiffeoClass::from_value(((k * (k - 1) / 2) % 28) as i64)
}

/// Values of [`eells_kuiper`] over all integers (one period suffices).
pub fn realized_values() -> BTreeSet<u8> {
    (0..56).map(|k| eells_kuiper(k).value).collect()
}

/// Orientation-folded values of [`eells_kuiper`] over all integers.
pub fn realized_folded() -> BTreeSet<u8> {
    (0..56)
        .map(|k| eells_kuiper(k).orientation_folded)
        .collect()
}

/// Whether the spheres for `k` and `m` are oriented diffeomorphic:
/// `k(k-1) ≡ m(m-1) (mod 56)`.
///
/// The equivalent congruences `m ≡ k or 1-k` modulo 7 and modulo 8 are
/// evaluated as well and must agree.
pub fn diffeo_equiv(k: i64, m: i64) -> bool {
    let product = diffeo_equiv_product(k, m);
    debug_assert_eq!(product, diffeo_equiv_congruence(k, m));
    product
}

pub fn diffeo_equiv_product(k: i64, m: i64) -> bool {
    let f = |x: i64| {
        let x = i128::from(x).rem_euclid(56);
        (x * (x - 1)).rem_euclid(56)
    };
    f(k) == f(m)
}

pub fn diffeo_equiv_congruence(k: i64, m: i64) -> bool {
    let ok = |n: i64| {
        let (k, m) = (k.rem_euclid(n), m.rem_euclid(n));
        m == k || m == (1 - k).rem_euclid(n)
    };
    ok(7) && ok(8)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BrieskornVerdict {
    StandardSphere,
    KervaireSphere,
}

/// The link of `z_0^d + z_1^2 + ... + z_n^2 = 0` in `S^{2n+1}`, for odd `n`
/// and odd `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BrieskornClass {
    pub n: i64,
    pub d: i64,
    pub dimension: i64,
    pub verdict: BrieskornVerdict,
    /// Kervaire spheres are exotic exactly when `n + 1` is not a power of 2.
    pub exotic: bool,
}

pub fn brieskorn_classify(n: i64, d: i64) -> Result<BrieskornClass> {
    if n < 2 || n % 2 == 0 {
        return Err(Error::OutOfRegime(format!(
            "n = {n}: the sphere regime needs odd n >= 3"
        )));
    }
    if d % 2 == 0 {
        return Err(Error::OutOfRegime(format!("d = {d} is even")));
    }
    let verdict = match d.rem_euclid(8) {
        1 | 7 => BrieskornVerdict::StandardSphere,
        _ => BrieskornVerdict::KervaireSphere,
    };
    let exotic = verdict == BrieskornVerdict::KervaireSphere && !(n as u64 + 1).is_power_of_two();
    Ok(BrieskornClass {
        n,
        d,
        dimension: 2 * n - 1,
        verdict,
        exotic,
    })
}

pub const RP5_CAVEAT: &str = "orientation-reversing diffeomorphisms between the exotic \
structures are not known, so two of the oriented types might coincide";

/// Oriented diffeomorphism and homeomorphism type of the `RP^5` obtained
/// from the Brieskorn link with exponent `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rp5Type {
    pub d: i64,
    /// `d mod 8`, one of 1, 3, 5, 7.
    pub diffeo_type: u8,
    /// `"±1"` or `"±3"`.
    pub homeo_type: &'static str,
    /// `d = 1` is the linear action.
    pub linear: bool,
    pub caveat: &'static str,
}

pub fn rp5_type(d: i64) -> Result<Rp5Type> {
    if d % 2 == 0 {
        return Err(Error::OutOfRegime(format!("d = {d} is even")));
    }
    let diffeo_type = d.rem_euclid(8) as u8;
    let homeo_type = match diffeo_type {
        1 | 7 => "±1",
        _ => "±3",
    };
    Ok(Rp5Type {
        d,
        diffeo_type,
        homeo_type,
        linear: d == 1,
        caveat: RP5_CAVEAT,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_examples() {
        assert!(euler_m(2, -1).homotopy_sphere);
        assert!(!euler_m(5, -5).homotopy_sphere);
        assert_eq!(euler_m(1, 0).euler, 1);
    }

    #[test]
    fn ek_generator() {
        let c = eells_kuiper(2);
        assert_eq!(c.value, 1);
        assert_eq!(c.label(), "generator of Z_28");
        assert_eq!(eells_kuiper(-5), eells_kuiper(51));
    }

    #[test]
    fn ek_realized_sets() {
        let v: Vec<u8> = realized_values().into_iter().collect();
        assert_eq!(
            v,
            [0, 1, 3, 6, 7, 8, 10, 13, 14, 15, 17, 20, 21, 22, 24, 27]
        );
        let f: Vec<u8> = realized_folded().into_iter().collect();
        assert_eq!(f, [0, 1, 3, 4, 6, 7, 8, 10, 11, 13, 14]);
    }

    #[test]
    fn equivalence_examples() {
        assert!(diffeo_equiv(5, 61));
        assert!(diffeo_equiv(5, -4));
        assert!(!diffeo_equiv(2, 3));
    }

    #[test]
    fn brieskorn_examples() {
        let b = brieskorn_classify(5, 3).unwrap();
        assert_eq!(b.verdict, BrieskornVerdict::KervaireSphere);
        assert!(b.exotic);
        assert_eq!(
            brieskorn_classify(3, 7).unwrap().verdict,
            BrieskornVerdict::StandardSphere
        );
        let k = brieskorn_classify(3, 3).unwrap();
        assert_eq!(k.verdict, BrieskornVerdict::KervaireSphere);
        assert!(!k.exotic);
        assert!(brieskorn_classify(4, 3).is_err());
        assert!(brieskorn_classify(3, 4).is_err());
    }

    #[test]
    fn rp5_examples() {
        let t = rp5_type(1).unwrap();
        assert_eq!((t.diffeo_type, t.homeo_type, t.linear), (1, "±1", true));
        let t = rp5_type(9).unwrap();
        assert_eq!((t.diffeo_type, t.homeo_type, t.linear), (1, "±1", false));
        assert_eq!(rp5_type(3).unwrap().homeo_type, "±3");
        assert_eq!(rp5_type(-1).unwrap().diffeo_type, 7);
        assert!(rp5_type(2).is_err());
    }
}
