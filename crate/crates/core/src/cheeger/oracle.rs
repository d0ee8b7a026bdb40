use super::DeformedMetric;
use crate::error::Result;
use crate::quat_lie::LieAlgebraElement;

/// Curvature of a left-invariant metric computed from the Levi-Civita
/// connection on a `Q_a`-orthonormal basis.
///
/// This shares nothing with the closed form in [`DeformedMetric`] beyond the
/// bracket itself, which makes it usable as an independent check.
#[derive(Clone, Debug)]
pub struct KoszulOracle {
    metric: DeformedMetric,
    dim: usize,
    // orthonormal basis: m vectors, then k vectors scaled by 1/sqrt(a)
    basis: Vec<LieAlgebraElement>,
    // coordinate weights: Q-coefficient times this gives the Q_a-coefficient
    weights: Vec<f64>,
    // structure constants c[i][j][k] = <[e_i, e_j], e_k>
    c: Vec<f64>,
    // connection coefficients: nabla_{e_i} e_j = sum_k gamma[i][j][k] e_k
    gamma: Vec<f64>,
}

impl KoszulOracle {
    pub fn new(metric: &DeformedMetric) -> Self {
        let split = metric.split();
        let s = metric.a().sqrt();
        let mut basis = Vec::new();
        let mut weights = Vec::new();
        for e in split.m_basis() {
            basis.push(e.clone());
            weights.push(1.0);
        }
        for e in split.k_basis() {
            basis.push(e.scaled(1.0 / s));
            weights.push(s);
        }
        let dim = basis.len();
        let idx = |i: usize, j: usize, k: usize| (i * dim + j) * dim + k;

        let mut oracle = KoszulOracle {
            metric: metric.clone(),
            dim,
            basis,
            weights,
            c: vec![0.0; dim * dim * dim],
            gamma: vec![0.0; dim * dim * dim],
        };
        for i in 0..dim {
            for j in 0..dim {
                let b = oracle.basis[i]
                    .bracket(&oracle.basis[j])
                    .expect("basis shares one factor count");
                let coords = oracle.coordinates(&b);
                for (k, ck) in coords.into_iter().enumerate() {
                    oracle.c[idx(i, j, k)] = ck;
                }
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    oracle.gamma[idx(i, j, k)] = 0.5
                        * (oracle.c[idx(i, j, k)] - oracle.c[idx(j, k, i)]
                            + oracle.c[idx(k, i, j)]);
                }
            }
        }
        oracle
    }

    pub fn metric(&self) -> &DeformedMetric {
        &self.metric
    }

    /// Coordinates in the `Q_a`-orthonormal basis.
    fn coordinates(&self, u: &LieAlgebraElement) -> Vec<f64> {
        let split = self.metric.split();
        split
            .m_basis()
            .iter()
            .chain(split.k_basis())
            .zip(&self.weights)
            .map(|(e, w)| w * u.dot(e).expect("same factor count"))
            .collect()
    }

    fn connection(&self, u: &[f64], v: &[f64]) -> Vec<f64> {
        let d = self.dim;
        let mut out = vec![0.0; d];
        for (i, ui) in u.iter().enumerate() {
            if *ui == 0.0 {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                let s = ui * vj;
                if s == 0.0 {
                    continue;
                }
                let row = &self.gamma[(i * d + j) * d..(i * d + j + 1) * d];
                for (o, g) in out.iter_mut().zip(row) {
                    *o += s * g;
                }
            }
        }
        out
    }

    fn bracket(&self, u: &[f64], v: &[f64]) -> Vec<f64> {
        let d = self.dim;
        let mut out = vec![0.0; d];
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                let s = ui * vj;
                if s == 0.0 {
                    continue;
                }
                let row = &self.c[(i * d + j) * d..(i * d + j + 1) * d];
                for (o, c) in out.iter_mut().zip(row) {
                    *o += s * c;
                }
            }
        }
        out
    }

    /// `<R(u, v) v, u>` with `R(u, v) = [∇_u, ∇_v] - ∇_[u, v]`.
    pub fn curvature(&self, u: &LieAlgebraElement, v: &LieAlgebraElement) -> Result<f64> {
        u.dot(v)?;
        let (u, v) = (self.coordinates(u), self.coordinates(v));
        let nvv = self.connection(&v, &v);
        let nuv = self.connection(&u, &v);
        let uv = self.bracket(&u, &v);
        let r1 = self.connection(&u, &nvv);
        let r2 = self.connection(&v, &nuv);
        let r3 = self.connection(&uv, &v);
        Ok((0..self.dim).map(|k| (r1[k] - r2[k] - r3[k]) * u[k]).sum())
    }

    /// `<R(A+X, B+Y)(B+Y), A+X>` for split inputs.
    pub fn curvature_components(
        &self,
        a_m: &LieAlgebraElement,
        x_k: &LieAlgebraElement,
        b_m: &LieAlgebraElement,
        y_k: &LieAlgebraElement,
    ) -> Result<f64> {
        self.curvature(&(a_m + x_k), &(b_m + y_k))
    }

    /// Sectional curvature normalized by the orthonormal-coordinate Gram
    /// determinant.
    pub fn sectional_curvature(&self, u: &LieAlgebraElement, v: &LieAlgebraElement) -> Result<f64> {
        let (cu, cv) = (self.coordinates(u), self.coordinates(v));
        let dot = |p: &[f64], q: &[f64]| p.iter().zip(q).map(|(x, y)| x * y).sum::<f64>();
        let gram = dot(&cu, &cu) * dot(&cv, &cv) - dot(&cu, &cv).powi(2);
        if gram < super::GRAM_TOLERANCE {
            return Err(crate::error::Error::DegeneratePlane {
                gram,
                tolerance: super::GRAM_TOLERANCE,
            });
        }
        Ok(self.curvature(u, v)? / gram)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat_lie::{Axis, ReductiveSplit};
    use approx::assert_abs_diff_eq;

    #[test]
    fn bi_invariant_case() {
        let m = DeformedMetric::new(ReductiveSplit::diagonal(2).unwrap(), 1.0).unwrap();
        let o = KoszulOracle::new(&m);
        let u = LieAlgebraElement::from_coords(vec![0.3, -1.0, 0.2, 0.5, 0.9, -0.4]).unwrap();
        let v = LieAlgebraElement::from_coords(vec![1.1, 0.0, -0.7, 0.2, -0.3, 0.8]).unwrap();
        let expected = DeformedMetric::bi_invariant_curvature(&u, &v).unwrap();
        assert_abs_diff_eq!(o.curvature(&u, &v).unwrap(), expected, epsilon = 1e-12);
    }

    #[test]
    fn berger_horizontal_plane() {
        let split = ReductiveSplit::circle(1, 0).unwrap();
        for a in [0.3, 1.0, 4.0 / 3.0, 2.0] {
            let o = KoszulOracle::new(&DeformedMetric::new(split.clone(), a).unwrap());
            let j = LieAlgebraElement::basis(1, 0, Axis::J);
            let k = LieAlgebraElement::basis(1, 0, Axis::K);
            assert_abs_diff_eq!(o.curvature(&j, &k).unwrap(), 4.0 - 3.0 * a, epsilon = 1e-12);
        }
    }

    #[test]
    fn parallel_vectors_give_zero() {
        let m = DeformedMetric::new(ReductiveSplit::diagonal(2).unwrap(), 0.7).unwrap();
        let o = KoszulOracle::new(&m);
        let u = LieAlgebraElement::from_coords(vec![0.3, -1.0, 0.2, 0.5, 0.9, -0.4]).unwrap();
        assert_abs_diff_eq!(
            o.curvature(&u, &u.scaled(-2.5)).unwrap(),
            0.0,
            epsilon = 1e-12
        );
    }
}
