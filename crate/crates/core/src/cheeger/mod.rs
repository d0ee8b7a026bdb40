//! Left-invariant metrics `Q_a` on `su(2)^n` obtained by scaling the
//! bi-invariant metric by `a` along a subalgebra, their curvature, and the
//! quotient scaling that produces them.

mod oracle;
mod quotient;
mod search;

pub use oracle::KoszulOracle;
pub use quotient::{
    cheeger_quotient_factors, compensating_scale, horizontal_lift_check, CheegerScaling, LiftReport,
};
pub use search::{
    find_negative_plane, sampled_minimum, NegativePlane, SampledMinimum, SearchOutcome,
    WITNESS_THRESHOLD,
};

use crate::error::{Error, Result};
use crate::quat_lie::{split_projections, LieAlgebraElement, ReductiveSplit};

/// Gram determinants below this are treated as degenerate planes.
pub const GRAM_TOLERANCE: f64 = 1e-12;

/// Tolerance on the `m`/`k` membership of closed-form inputs.
pub const MEMBERSHIP_TOLERANCE: f64 = 1e-9;

/// `Q_a = Q` on `m` and `a Q` on `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformedMetric {
    split: ReductiveSplit,
    a: f64,
}

impl DeformedMetric {
    pub fn new(split: ReductiveSplit, a: f64) -> Result<Self> {
        check_a(a)?;
        Ok(DeformedMetric { split, a })
    }

    pub fn split(&self) -> &ReductiveSplit {
        &self.split
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn factors(&self) -> usize {
        self.split.factors()
    }

    pub fn dim(&self) -> usize {
        3 * self.split.factors()
    }

    /// `Q_a(U, V) = Q(U_m, V_m) + a Q(U_k, V_k)`.
    pub fn inner(&self, u: &LieAlgebraElement, v: &LieAlgebraElement) -> Result<f64> {
        let (um, uk) = split_projections(&self.split, u)?;
        let (vm, vk) = split_projections(&self.split, v)?;
        Ok(um.dot(&vm)? + self.a * uk.dot(&vk)?)
    }

    pub fn norm_sq(&self, u: &LieAlgebraElement) -> Result<f64> {
        self.inner(u, u)
    }

    /// `Q_a(R(A+X, B+Y)(B+Y), A+X)` by the four-term closed form, for
    /// `A, B ∈ m` and `X, Y ∈ k`.
    pub fn curvature_components(
        &self,
        a_m: &LieAlgebraElement,
        x_k: &LieAlgebraElement,
        b_m: &LieAlgebraElement,
        y_k: &LieAlgebraElement,
    ) -> Result<f64> {
        for (v, in_m) in [(a_m, true), (b_m, true), (x_k, false), (y_k, false)] {
            let (vm, vk) = split_projections(&self.split, v)?;
            let (stray, subspace) = if in_m { (vk, "m") } else { (vm, "k") };
            let residual = stray.norm();
            if residual > MEMBERSHIP_TOLERANCE * v.norm().max(1.0) {
                return Err(Error::NotInSubspace { subspace, residual });
            }
        }
        Ok(self.closed_form(a_m, x_k, b_m, y_k))
    }

    /// The closed form applied to `u = A+X`, `v = B+Y` after splitting.
    pub fn curvature(&self, u: &LieAlgebraElement, v: &LieAlgebraElement) -> Result<f64> {
        let (am, xk) = split_projections(&self.split, u)?;
        let (bm, yk) = split_projections(&self.split, v)?;
        Ok(self.closed_form(&am, &xk, &bm, &yk))
    }

    fn closed_form(
        &self,
        am: &LieAlgebraElement,
        xk: &LieAlgebraElement,
        bm: &LieAlgebraElement,
        yk: &LieAlgebraElement,
    ) -> f64 {
        let a = self.a;
        let br = |p: &LieAlgebraElement, q: &LieAlgebraElement| {
            p.bracket(q).expect("inputs share the split's factor count")
        };
        let ab = br(am, bm);
        let ab_k = self.split.project_k(&ab);
        let ab_m = &ab - &ab_k;
        let xy = br(xk, yk);

        let mut t1 = ab_m;
        t1.axpy(a, &br(xk, bm));
        t1.axpy(a, &br(am, yk));
        let mut t2 = ab_k.clone();
        t2.axpy(a * a, &xy);
        let mut t4 = ab_k;
        t4.axpy(a, &xy);

        0.25 * t1.norm_sq()
            + 0.25 * t2.norm_sq()
            + 0.25 * a * (1.0 - a).powi(3) * xy.norm_sq()
            + 0.75 * (1.0 - a) * t4.norm_sq()
    }

    /// `Q_a`-Gram determinant `|u|^2 |v|^2 - Q_a(u, v)^2`.
    pub fn gram(&self, u: &LieAlgebraElement, v: &LieAlgebraElement) -> Result<f64> {
        let uu = self.inner(u, u)?;
        let vv = self.inner(v, v)?;
        let uv = self.inner(u, v)?;
        Ok(uu * vv - uv * uv)
    }

    /// Sectional curvature of `span{u, v}`.
    pub fn sectional_curvature(&self, u: &LieAlgebraElement, v: &LieAlgebraElement) -> Result<f64> {
        let gram = self.gram(u, v)?;
        if gram < GRAM_TOLERANCE {
            return Err(Error::DegeneratePlane {
                gram,
                tolerance: GRAM_TOLERANCE,
            });
        }
        Ok(self.curvature(u, v)? / gram)
    }

    /// `(1/4) |[u, v]|^2`, the curvature of the bi-invariant metric.
    pub fn bi_invariant_curvature(u: &LieAlgebraElement, v: &LieAlgebraElement) -> Result<f64> {
        Ok(0.25 * u.bracket(v)?.norm_sq())
    }
}

fn check_a(a: f64) -> Result<()> {
    if a > 0.0 && a.is_finite() {
        Ok(())
    } else {
        Err(Error::Parameter {
            name: "a",
            value: a,
            reason: "the deformation parameter must be positive",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat_lie::Axis;
    use approx::assert_abs_diff_eq;

    fn e(n: usize, f: usize, a: Axis) -> LieAlgebraElement {
        LieAlgebraElement::basis(n, f, a)
    }

    #[test]
    fn rejects_nonpositive_a() {
        let split = ReductiveSplit::circle(1, 0).unwrap();
        assert!(matches!(
            DeformedMetric::new(split.clone(), 0.0),
            Err(Error::Parameter { .. })
        ));
        assert!(DeformedMetric::new(split, -1.0).is_err());
    }

    #[test]
    fn horizontal_plane_of_a_circle() {
        // [j, k] = 2i lies in k, so the value is (1 - 3a/4) |2i|^2 = 4 - 3a
        let split = ReductiveSplit::circle(1, 0).unwrap();
        let (j, k) = (e(1, 0, Axis::J), e(1, 0, Axis::K));
        let zero = LieAlgebraElement::zero(1);
        for a in [0.5, 1.0, 4.0 / 3.0, 1.5] {
            let m = DeformedMetric::new(split.clone(), a).unwrap();
            let v = m.curvature_components(&j, &zero, &k, &zero).unwrap();
            assert_abs_diff_eq!(v, 4.0 - 3.0 * a, epsilon = 1e-14);
        }
    }

    #[test]
    fn membership_is_enforced() {
        let split = ReductiveSplit::circle(1, 0).unwrap();
        let m = DeformedMetric::new(split, 1.2).unwrap();
        let i = e(1, 0, Axis::I);
        let j = e(1, 0, Axis::J);
        assert!(matches!(
            m.curvature_components(&i, &j, &j, &i),
            Err(Error::NotInSubspace { .. })
        ));
    }

    #[test]
    fn round_sphere_plane_has_curvature_one() {
        let m = DeformedMetric::new(ReductiveSplit::circle(1, 0).unwrap(), 1.0).unwrap();
        let (i, j) = (e(1, 0, Axis::I), e(1, 0, Axis::J));
        assert_abs_diff_eq!(m.sectional_curvature(&i, &j).unwrap(), 1.0, epsilon = 1e-14);
        let s = m
            .sectional_curvature(&i.scaled(2.0), &j.scaled(3.0))
            .unwrap();
        assert_abs_diff_eq!(s, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn degenerate_plane_is_reported() {
        let m = DeformedMetric::new(ReductiveSplit::diagonal(2).unwrap(), 0.7).unwrap();
        let u = e(2, 0, Axis::I);
        assert!(matches!(
            m.sectional_curvature(&u, &u.scaled(2.0)),
            Err(Error::DegeneratePlane { .. })
        ));
    }

    #[test]
    fn abelian_plane_is_flat() {
        let m = DeformedMetric::new(ReductiveSplit::torus(2).unwrap(), 1.2).unwrap();
        let s = m
            .sectional_curvature(&e(2, 0, Axis::I), &e(2, 1, Axis::I))
            .unwrap();
        assert_eq!(s, 0.0);
    }
}
