use nalgebra::{DMatrix, SymmetricEigen};
use num_traits::{Num, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quat_lie::{LieAlgebraElement, ReductiveSplit};

/// Scale factors `(on m, on p)` of the metric induced on `G/H` from
/// `G × K/H` when `K/H` carries `λ Q`: `(1, λ/(λ+1))`.
///
/// Generic so the identity can be checked in exact rational arithmetic.
pub fn cheeger_quotient_factors<T>(lambda: T) -> Result<(T, T)>
where
    T: Num + PartialOrd + Copy + ToPrimitive,
{
    check_lambda(lambda)?;
    Ok((T::one(), lambda / (lambda + T::one())))
}

/// The scale `(λ+1)/λ` on `k` that undoes the quotient shrinking, so the
/// induced metric on `h^⊥` is `Q` again.
pub fn compensating_scale<T>(lambda: T) -> Result<T>
where
    T: Num + PartialOrd + Copy + ToPrimitive,
{
    check_lambda(lambda)?;
    Ok((lambda + T::one()) / lambda)
}

fn check_lambda<T: Num + PartialOrd + ToPrimitive>(lambda: T) -> Result<()> {
    if lambda > T::zero() {
        Ok(())
    } else {
        Err(Error::Parameter {
            name: "lambda",
            value: lambda.to_f64().unwrap_or(f64::NAN),
            reason: "the quotient parameter must be positive",
        })
    }
}

/// A positive quotient parameter `λ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CheegerScaling {
    lambda: f64,
}

impl CheegerScaling {
    pub fn new(lambda: f64) -> Result<Self> {
        if !lambda.is_finite() {
            return Err(Error::Parameter {
                name: "lambda",
                value: lambda,
                reason: "the quotient parameter must be finite",
            });
        }
        check_lambda(lambda)?;
        Ok(CheegerScaling { lambda })
    }

    /// The `λ` producing the deformation `a = λ/(λ+1) < 1` on `p`.
    pub fn for_shrink(a: f64) -> Result<Self> {
        if !(a > 0.0 && a < 1.0) {
            return Err(Error::Parameter {
                name: "a",
                value: a,
                reason: "a quotient can only shrink: need 0 < a < 1",
            });
        }
        Self::new(a / (1.0 - a))
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn factor_m(&self) -> f64 {
        1.0
    }

    pub fn factor_p(&self) -> f64 {
        self.lambda / (self.lambda + 1.0)
    }
}

/// Residuals of the horizontal-space computation on `g × p`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LiftReport {
    pub lambda: f64,
    /// Dimension of the numerically computed horizontal space.
    pub horizontal_dim: usize,
    /// Distance from the numerical complement to the closed-form space.
    pub complement_residual: f64,
    /// Failure of the closed-form vectors to be orthogonal to the fibres.
    pub orthogonality_residual: f64,
    /// Largest error of `|lift(U)|^2` against `|U_m|^2 + λ/(λ+1) |U_p|^2`.
    pub norm_residual: f64,
}

impl LiftReport {
    pub fn max_residual(&self) -> f64 {
        self.complement_residual
            .max(self.orthogonality_residual)
            .max(self.norm_residual)
    }
}

/// Builds the vertical space `h × 0 + {(-X, X) : X ∈ p}` of
/// `G × K/H -> G` at the base point for the metric `Q ⊕ λ Q|p`, computes its
/// orthogonal complement numerically, and compares it with the closed form
/// `m × 0 + {(λY, Y) : Y ∈ p}`. Samples (projected to `h^⊥`) are lifted and
/// their norms compared with the quotient factors.
pub fn horizontal_lift_check(
    split: &ReductiveSplit,
    lambda: f64,
    samples: &[LieAlgebraElement],
) -> Result<LiftReport> {
    let scaling = CheegerScaling::new(lambda)?;
    let g_dim = 3 * split.factors();
    let p = split.p_basis();
    let n = g_dim + p.len();

    // product coordinates: standard coordinates on g, p-basis coordinates
    let metric = DMatrix::from_fn(n, n, |i, j| match (i == j, i < g_dim) {
        (false, _) => 0.0,
        (true, true) => 1.0,
        (true, false) => lambda,
    });
    let embed = |g_part: &LieAlgebraElement, p_part: &[f64]| {
        let mut col = g_part.coords().to_vec();
        col.extend_from_slice(p_part);
        nalgebra::DVector::from_vec(col)
    };
    let unit = |i: usize| {
        let mut c = vec![0.0; p.len()];
        c[i] = 1.0;
        c
    };

    let mut vertical = Vec::new();
    for x in split.h_basis() {
        vertical.push(embed(x, &vec![0.0; p.len()]));
    }
    for (i, x) in p.iter().enumerate() {
        vertical.push(embed(&x.scaled(-1.0), &unit(i)));
    }
    let mut closed = Vec::new();
    for a in split.m_basis() {
        closed.push(embed(a, &vec![0.0; p.len()]));
    }
    for (i, y) in p.iter().enumerate() {
        closed.push(embed(&y.scaled(lambda), &unit(i)));
    }

    let v = DMatrix::from_columns(&vertical);
    let h = DMatrix::from_columns(&closed);

    // Euclidean projector onto the complement of G V; its range is the
    // G-orthogonal complement of V
    let gv = &metric * &v;
    let gram = gv.transpose() * &gv;
    let gram_inv = gram
        .try_inverse()
        .ok_or_else(|| Error::Basis("vertical space is degenerate".into()))?;
    let projector = DMatrix::identity(n, n) - &gv * gram_inv * gv.transpose();
    let eig = SymmetricEigen::new(projector);
    let numerical: Vec<_> = (0..n)
        .filter(|&k| eig.eigenvalues[k] > 0.5)
        .map(|k| eig.eigenvectors.column(k).into_owned())
        .collect();

    // distance of each numerical vector to span(closed form), via least squares
    let h_qr = h.clone().qr();
    let q = h_qr.q();
    let mut complement_residual = 0.0f64;
    for w in &numerical {
        let r = w - &q * (q.transpose() * w);
        complement_residual = complement_residual.max(r.amax());
    }
    if numerical.len() != closed.len() {
        complement_residual = f64::INFINITY;
    }
    let orthogonality_residual = (v.transpose() * &metric * &h).amax();

    let factor_p = scaling.factor_p();
    let mut norm_residual = 0.0f64;
    for u in samples {
        if u.factor_count() != split.factors() {
            return Err(Error::Dimension {
                expected: split.factors(),
                found: u.factor_count(),
            });
        }
        let um = split.project_m(u);
        let up_coords: Vec<f64> = p.iter().map(|e| u.dot(e).expect("same factors")).collect();
        let up = split.project_p(u);
        // lift: (U_m + λ/(λ+1) U_p, U_p/(λ+1))
        let mut g_part = um.clone();
        g_part.axpy(factor_p, &up);
        let p_part: Vec<f64> = up_coords.iter().map(|c| c / (lambda + 1.0)).collect();
        let lift = embed(&g_part, &p_part);
        let lift_norm = (lift.transpose() * &metric * &lift)[(0, 0)];
        let expected = um.norm_sq() + factor_p * up.norm_sq();
        let scale = expected.abs().max(1.0);
        norm_residual = norm_residual.max((lift_norm - expected).abs() / scale);
        // the lift must be horizontal and project back to U_m + U_p
        norm_residual = norm_residual.max((v.transpose() * &metric * &lift).amax() / scale);
        let mut pushed = g_part;
        pushed.axpy(1.0 / (lambda + 1.0), &up);
        norm_residual = norm_residual.max((&pushed - &(&um + &up)).max_abs() / scale);
    }

    Ok(LiftReport {
        lambda,
        horizontal_dim: numerical.len(),
        complement_residual,
        orthogonality_residual,
        norm_residual,
    })
}
