use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::quaternion::Quaternion;
use crate::error::{Error, Result};

/// One of the three imaginary quaternion directions of an `su(2)` factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axis {
    I,
    J,
    K,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::I, Axis::J, Axis::K];

    pub fn index(self) -> usize {
        match self {
            Axis::I => 0,
            Axis::J => 1,
            Axis::K => 2,
        }
    }

    pub fn quaternion(self) -> Quaternion {
        match self {
            Axis::I => Quaternion::I,
            Axis::J => Quaternion::J,
            Axis::K => Quaternion::K,
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::I => "i",
            Axis::J => "j",
            Axis::K => "k",
        })
    }
}

/// An element of `su(2) ⊕ ... ⊕ su(2)` (`n` factors), stored as `3n`
/// coordinates in the per-factor basis `(i, j, k)`.
///
/// The bi-invariant metric `Q` is normalized so that this basis is
/// orthonormal, i.e. `Q` is the Euclidean dot product of coordinates. With
/// this normalization `[i, j] = 2k` and the round `S^3` factors have
/// sectional curvature 1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LieAlgebraElement {
    coords: Vec<f64>,
}

impl LieAlgebraElement {
    pub fn zero(factors: usize) -> Self {
        LieAlgebraElement {
            coords: vec![0.0; 3 * factors],
        }
    }

    pub fn from_coords(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() || coords.len() % 3 != 0 {
            return Err(Error::Dimension {
                expected: 3 * (coords.len() / 3).max(1),
                found: coords.len(),
            });
        }
        Ok(LieAlgebraElement { coords })
    }

    /// Basis vector `axis` in factor `factor` (zero-based).
    pub fn basis(factors: usize, factor: usize, axis: Axis) -> Self {
        assert!(
            factor < factors,
            "factor {factor} out of range for su(2)^{factors}"
        );
        let mut e = Self::zero(factors);
        e.coords[3 * factor + axis.index()] = 1.0;
        e
    }

    /// Imaginary parts of one quaternion per factor.
    pub fn from_quaternions(qs: &[Quaternion]) -> Self {
        LieAlgebraElement {
            coords: qs.iter().flat_map(|q| q.imag()).collect(),
        }
    }

    /// The same vector `v` placed in every factor.
    pub fn diagonal(factors: usize, v: [f64; 3]) -> Self {
        LieAlgebraElement {
            coords: (0..factors).flat_map(|_| v).collect(),
        }
    }

    pub fn factor_count(&self) -> usize {
        self.coords.len() / 3
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    pub fn factor(&self, f: usize) -> [f64; 3] {
        [
            self.coords[3 * f],
            self.coords[3 * f + 1],
            self.coords[3 * f + 2],
        ]
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.coords.len() == other.coords.len() {
            Ok(())
        } else {
            Err(Error::Dimension {
                expected: self.coords.len(),
                found: other.coords.len(),
            })
        }
    }

    /// The bi-invariant inner product `Q`.
    pub fn dot(&self, other: &Self) -> Result<f64> {
        self.check_same(other)?;
        Ok(dot(&self.coords, &other.coords))
    }

    pub fn norm_sq(&self) -> f64 {
        dot(&self.coords, &self.coords)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.coords.iter().fold(0.0f64, |m, c| m.max(c.abs()))
    }

    pub fn scaled(&self, s: f64) -> Self {
        LieAlgebraElement {
            coords: self.coords.iter().map(|c| c * s).collect(),
        }
    }

    /// `self += s * other`, panicking on a dimension mismatch.
    pub fn axpy(&mut self, s: f64, other: &Self) {
        assert_eq!(self.coords.len(), other.coords.len());
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            *a += s * b;
        }
    }

    /// The Lie bracket, factorwise `XY - YX = 2 X × Y`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(LieAlgebraElement {
            coords: bracket_coords(&self.coords, &other.coords),
        })
    }

    /// `Ad_g X = g X g^{-1}` for a group element given by one unit
    /// quaternion per factor.
    pub fn adjoint(&self, g: &[Quaternion]) -> Result<Self> {
        if g.len() != self.factor_count() {
            return Err(Error::Dimension {
                expected: self.factor_count(),
                found: g.len(),
            });
        }
        for q in g {
            q.require_unit()?;
        }
        Ok(LieAlgebraElement {
            coords: g
                .iter()
                .enumerate()
                .flat_map(|(f, q)| q.rotate(self.factor(f)))
                .collect(),
        })
    }
}

/// `[X, Y]` on `su(2)^n`; fails when the factor counts differ.
pub fn bracket(x: &LieAlgebraElement, y: &LieAlgebraElement) -> Result<LieAlgebraElement> {
    x.bracket(y)
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn bracket_coords(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len()];
    for ((o, x), y) in out
        .chunks_exact_mut(3)
        .zip(a.chunks_exact(3))
        .zip(b.chunks_exact(3))
    {
        o[0] = 2.0 * (x[1] * y[2] - x[2] * y[1]);
        o[1] = 2.0 * (x[2] * y[0] - x[0] * y[2]);
        o[2] = 2.0 * (x[0] * y[1] - x[1] * y[0]);
    }
    out
}

impl Add for &LieAlgebraElement {
    type Output = LieAlgebraElement;

    fn add(self, rhs: &LieAlgebraElement) -> LieAlgebraElement {
        assert_eq!(self.coords.len(), rhs.coords.len());
        LieAlgebraElement {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Add for LieAlgebraElement {
    type Output = LieAlgebraElement;

    fn add(self, rhs: LieAlgebraElement) -> LieAlgebraElement {
        &self + &rhs
    }
}

impl AddAssign<&LieAlgebraElement> for LieAlgebraElement {
    fn add_assign(&mut self, rhs: &LieAlgebraElement) {
        self.axpy(1.0, rhs);
    }
}

impl Sub for &LieAlgebraElement {
    type Output = LieAlgebraElement;

    fn sub(self, rhs: &LieAlgebraElement) -> LieAlgebraElement {
        assert_eq!(self.coords.len(), rhs.coords.len());
        LieAlgebraElement {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Sub for LieAlgebraElement {
    type Output = LieAlgebraElement;

    fn sub(self, rhs: LieAlgebraElement) -> LieAlgebraElement {
        &self - &rhs
    }
}

impl Mul<f64> for &LieAlgebraElement {
    type Output = LieAlgebraElement;

    fn mul(self, s: f64) -> LieAlgebraElement {
        self.scaled(s)
    }
}

impl Mul<f64> for LieAlgebraElement {
    type Output = LieAlgebraElement;

    fn mul(self, s: f64) -> LieAlgebraElement {
        self.scaled(s)
    }
}

impl Neg for LieAlgebraElement {
    type Output = LieAlgebraElement;

    fn neg(self) -> LieAlgebraElement {
        self.scaled(-1.0)
    }
}

impl fmt::Display for LieAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for fi in 0..self.factor_count() {
            if fi > 0 {
                f.write_str(" | ")?;
            }
            let [a, b, c] = self.factor(fi);
            write!(f, "{a:.6}i {b:+.6}j {c:+.6}k")?;
        }
        f.write_str(")")
    }
}

/// The Lie algebra `su(2)^n` with its standard orthonormal basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Su2Sum {
    factors: usize,
}

impl Su2Sum {
    pub fn new(factors: usize) -> Result<Self> {
        if factors == 0 {
            return Err(Error::Dimension {
                expected: 1,
                found: 0,
            });
        }
        Ok(Su2Sum { factors })
    }

    pub fn factors(&self) -> usize {
        self.factors
    }

    pub fn dim(&self) -> usize {
        3 * self.factors
    }

    pub fn zero(&self) -> LieAlgebraElement {
        LieAlgebraElement::zero(self.factors)
    }

    pub fn basis(&self) -> Vec<LieAlgebraElement> {
        (0..self.factors)
            .flat_map(|f| Axis::ALL.map(|a| LieAlgebraElement::basis(self.factors, f, a)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(f: usize, a: Axis) -> LieAlgebraElement {
        LieAlgebraElement::basis(2, f, a)
    }

    #[test]
    fn bracket_of_i_and_j_is_two_k() {
        let b = bracket(&e(0, Axis::I), &e(0, Axis::J)).unwrap();
        assert_eq!(b, e(0, Axis::K) * 2.0);
    }

    #[test]
    fn bracket_is_alternating() {
        let b = bracket(&e(0, Axis::I), &e(0, Axis::I)).unwrap();
        assert_eq!(b, LieAlgebraElement::zero(2));
    }

    #[test]
    fn distinct_factors_commute() {
        let b = bracket(&e(0, Axis::I), &e(1, Axis::J)).unwrap();
        assert_eq!(b, LieAlgebraElement::zero(2));
    }

    #[test]
    fn bracket_matches_quaternion_commutator() {
        let x = Quaternion::from_imag([0.3, -1.2, 0.5]);
        let y = Quaternion::from_imag([2.0, 0.1, -0.7]);
        let comm = x * y - y * x;
        let b = bracket(
            &LieAlgebraElement::from_quaternions(&[x]),
            &LieAlgebraElement::from_quaternions(&[y]),
        )
        .unwrap();
        assert!(comm.w.abs() < 1e-15);
        for (p, q) in b.coords().iter().zip(comm.imag()) {
            assert!((p - q).abs() < 1e-14);
        }
    }

    #[test]
    fn mismatched_factor_counts_fail() {
        let x = LieAlgebraElement::zero(1);
        let y = LieAlgebraElement::zero(2);
        assert!(matches!(bracket(&x, &y), Err(Error::Dimension { .. })));
        assert!(LieAlgebraElement::from_coords(vec![1.0, 2.0]).is_err());
    }

    #[test]
    fn adjoint_preserves_bracket() {
        let g = [
            Quaternion::new(0.6, 0.0, 0.8, 0.0),
            Quaternion::new(0.5, 0.5, 0.5, 0.5),
        ];
        let x = LieAlgebraElement::from_coords(vec![1.0, 2.0, -1.0, 0.5, 0.0, 3.0]).unwrap();
        let y = LieAlgebraElement::from_coords(vec![-0.3, 0.1, 0.4, 2.0, -1.0, 0.2]).unwrap();
        let lhs = x.bracket(&y).unwrap().adjoint(&g).unwrap();
        let rhs = x
            .adjoint(&g)
            .unwrap()
            .bracket(&y.adjoint(&g).unwrap())
            .unwrap();
        assert!((&lhs - &rhs).max_abs() < 1e-13);
    }
}
