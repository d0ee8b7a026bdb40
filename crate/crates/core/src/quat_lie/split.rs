use super::algebra::{Axis, LieAlgebraElement};
use crate::error::{Error, Result};

/// Orthonormality tolerance for user-supplied bases.
pub const ORTHONORMAL_TOLERANCE: f64 = 1e-12;
/// Tolerance for the closure conditions `[k, k] ⊂ k` and `[m, k] ⊂ m`.
pub const CLOSURE_TOLERANCE: f64 = 1e-10;

/// A subalgebra `k ⊂ g = su(2)^n` with its `Q`-orthogonal complement `m`,
/// optionally refined by `h ⊂ k` with `p = h^⊥ ∩ k`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReductiveSplit {
    factors: usize,
    label: String,
    k_basis: Vec<LieAlgebraElement>,
    m_basis: Vec<LieAlgebraElement>,
    h_basis: Vec<LieAlgebraElement>,
    p_basis: Vec<LieAlgebraElement>,
}

impl ReductiveSplit {
    /// Builds a split from an orthonormal basis of `k` and an orthonormal
    /// basis of `h ⊂ k` (empty for `h = 0`). Complements are computed.
    pub fn new(
        factors: usize,
        k_basis: Vec<LieAlgebraElement>,
        h_basis: Vec<LieAlgebraElement>,
    ) -> Result<Self> {
        if factors == 0 {
            return Err(Error::Dimension {
                expected: 1,
                found: 0,
            });
        }
        for v in k_basis.iter().chain(&h_basis) {
            if v.factor_count() != factors {
                return Err(Error::Dimension {
                    expected: factors,
                    found: v.factor_count(),
                });
            }
        }
        check_orthonormal("k", &k_basis)?;
        check_orthonormal("h", &h_basis)?;
        for v in &h_basis {
            let residual = (v - &project(&k_basis, v)).max_abs();
            if residual > CLOSURE_TOLERANCE {
                return Err(Error::NotInSubspace {
                    subspace: "k",
                    residual,
                });
            }
        }
        let standard: Vec<_> = (0..factors)
            .flat_map(|f| Axis::ALL.map(|a| LieAlgebraElement::basis(factors, f, a)))
            .collect();
        let m_basis = complete(&k_basis, &standard)[k_basis.len()..].to_vec();
        let p_basis = complete(&h_basis, &k_basis)[h_basis.len()..].to_vec();
        let split = ReductiveSplit {
            factors,
            label: String::from("custom"),
            k_basis,
            m_basis,
            h_basis,
            p_basis,
        };
        split.validate()?;
        Ok(split)
    }

    fn labelled(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// The diagonal `Δsu(2)` in `su(2)^n`.
    pub fn diagonal(factors: usize) -> Result<Self> {
        let s = 1.0 / (factors as f64).sqrt();
        let k = Axis::ALL
            .iter()
            .map(|&a| {
                let mut v = [0.0; 3];
                v[a.index()] = s;
                LieAlgebraElement::diagonal(factors, v)
            })
            .collect();
        Ok(Self::new(factors, k, vec![])?.labelled("diag"))
    }

    /// A single `su(2)` factor (zero-based index).
    pub fn one_factor(factors: usize, factor: usize) -> Result<Self> {
        check_factor(factors, factor)?;
        let k = Axis::ALL
            .iter()
            .map(|&a| LieAlgebraElement::basis(factors, factor, a))
            .collect();
        Ok(Self::new(factors, k, vec![])?.labelled(format!("factor:{}", factor + 1)))
    }

    /// The circle `span(i)` inside one factor.
    pub fn circle(factors: usize, factor: usize) -> Result<Self> {
        check_factor(factors, factor)?;
        let k = vec![LieAlgebraElement::basis(factors, factor, Axis::I)];
        Ok(Self::new(factors, k, vec![])?.labelled(format!("circle:{}", factor + 1)))
    }

    /// The diagonal circle `span(i, ..., i)`.
    pub fn diagonal_circle(factors: usize) -> Result<Self> {
        let s = 1.0 / (factors as f64).sqrt();
        let k = vec![LieAlgebraElement::diagonal(factors, [s, 0.0, 0.0])];
        Ok(Self::new(factors, k, vec![])?.labelled("diag-circle"))
    }

    /// The maximal torus `span(i_1, ..., i_n)`.
    pub fn torus(factors: usize) -> Result<Self> {
        let k = (0..factors)
            .map(|f| LieAlgebraElement::basis(factors, f, Axis::I))
            .collect();
        Ok(Self::new(factors, k, vec![])?.labelled("torus"))
    }

    /// The circle through `(s_1 i, ..., s_n i)`, the tangent line of a
    /// slope circle `θ ↦ (e^{i s_1 θ}, ..., e^{i s_n θ})`.
    pub fn slope_circle(slopes: &[i64]) -> Result<Self> {
        Self::slope_circle_along(Axis::I, slopes)
    }

    /// As [`slope_circle`](Self::slope_circle) with `i` replaced by `axis`.
    pub fn slope_circle_along(axis: Axis, slopes: &[i64]) -> Result<Self> {
        let norm = slopes
            .iter()
            .map(|&s| (s as f64).powi(2))
            .sum::<f64>()
            .sqrt();
        if norm == 0.0 {
            return Err(Error::Basis("slope circle needs a nonzero slope".into()));
        }
        let coords = slopes
            .iter()
            .flat_map(|&s| {
                let mut v = [0.0; 3];
                v[axis.index()] = s as f64 / norm;
                v
            })
            .collect();
        let k = vec![LieAlgebraElement::from_coords(coords)?];
        let label = format!(
            "slope{}:{}",
            if axis == Axis::I {
                String::new()
            } else {
                format!("-{axis}")
            },
            slopes
                .iter()
                .map(i64::to_string)
                .collect::<Vec<_>>()
                .join(",")
        );
        Ok(Self::new(slopes.len(), k, vec![])?.labelled(label))
    }

    /// Parses the textual subalgebra names used on the command line:
    /// `diag`, `factor:<f>`, `circle:<f>`, `diag-circle`, `torus` and
    /// `slope:<s1>,...,<sn>`. Factor indices are one-based.
    pub fn parse(factors: usize, spec: &str) -> Result<Self> {
        let factor_arg = |rest: &str| -> Result<usize> {
            let f: usize = rest
                .parse()
                .map_err(|_| Error::Basis(format!("bad factor index '{rest}'")))?;
            if f == 0 {
                return Err(Error::Basis("factor indices start at 1".into()));
            }
            Ok(f - 1)
        };
        match spec {
            "diag" => Self::diagonal(factors),
            "diag-circle" => Self::diagonal_circle(factors),
            "torus" => Self::torus(factors),
            _ => {
                if let Some(rest) = spec.strip_prefix("factor:") {
                    Self::one_factor(factors, factor_arg(rest)?)
                } else if let Some(rest) = spec.strip_prefix("circle:") {
                    Self::circle(factors, factor_arg(rest)?)
                } else if let Some(rest) = spec.strip_prefix("slope:") {
                    let slopes = rest
                        .split(',')
                        .map(|s| s.trim().parse::<i64>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|_| Error::Basis(format!("bad slope list '{rest}'")))?;
                    if slopes.len() != factors {
                        return Err(Error::Dimension {
                            expected: factors,
                            found: slopes.len(),
                        });
                    }
                    Self::slope_circle(&slopes)
                } else {
                    Err(Error::Basis(format!("unknown subalgebra '{spec}'")))
                }
            }
        }
    }

    /// Replaces the refinement `h` (must lie in `k`).
    pub fn with_isotropy(self, h_basis: Vec<LieAlgebraElement>) -> Result<Self> {
        let label = self.label.clone();
        Ok(Self::new(self.factors, self.k_basis, h_basis)?.labelled(label))
    }

    /// Re-checks orthonormality, `[k, k] ⊂ k` and `[m, k] ⊂ m`.
    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        for (name, basis) in [
            ("k", &self.k_basis),
            ("m", &self.m_basis),
            ("h", &self.h_basis),
            ("p", &self.p_basis),
        ] {
            if let Err(e) = check_orthonormal(name, basis) {
                problems.push(e.to_string());
            }
        }
        if self.k_basis.len() + self.m_basis.len() != 3 * self.factors {
            problems.push("k and m do not span g".into());
        }
        let k_closure = self.max_residual(&self.k_basis, &self.k_basis, &self.k_basis);
        if k_closure > CLOSURE_TOLERANCE {
            problems.push(format!("[k, k] leaves k (residual {k_closure:e})"));
        }
        let m_closure = self.max_residual(&self.m_basis, &self.k_basis, &self.m_basis);
        if m_closure > CLOSURE_TOLERANCE {
            problems.push(format!("[m, k] leaves m (residual {m_closure:e})"));
        }
        let h_closure = self.max_residual(&self.h_basis, &self.h_basis, &self.h_basis);
        if h_closure > CLOSURE_TOLERANCE {
            problems.push(format!("[h, h] leaves h (residual {h_closure:e})"));
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(problems))
        }
    }

    // largest component of [x, y] outside span(target) over basis pairs
    fn max_residual(
        &self,
        xs: &[LieAlgebraElement],
        ys: &[LieAlgebraElement],
        target: &[LieAlgebraElement],
    ) -> f64 {
        let mut worst = 0.0f64;
        for x in xs {
            for y in ys {
                let b = x.bracket(y).expect("same factor count");
                worst = worst.max((&b - &project(target, &b)).max_abs());
            }
        }
        worst
    }

    pub fn factors(&self) -> usize {
        self.factors
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn k_basis(&self) -> &[LieAlgebraElement] {
        &self.k_basis
    }

    pub fn m_basis(&self) -> &[LieAlgebraElement] {
        &self.m_basis
    }

    pub fn h_basis(&self) -> &[LieAlgebraElement] {
        &self.h_basis
    }

    pub fn p_basis(&self) -> &[LieAlgebraElement] {
        &self.p_basis
    }

    pub fn project_k(&self, u: &LieAlgebraElement) -> LieAlgebraElement {
        project(&self.k_basis, u)
    }

    pub fn project_m(&self, u: &LieAlgebraElement) -> LieAlgebraElement {
        u - &project(&self.k_basis, u)
    }

    pub fn project_p(&self, u: &LieAlgebraElement) -> LieAlgebraElement {
        project(&self.p_basis, u)
    }

    pub fn project_h(&self, u: &LieAlgebraElement) -> LieAlgebraElement {
        project(&self.h_basis, u)
    }

    /// True when `[k, k] = 0`.
    pub fn k_is_abelian(&self) -> bool {
        pairwise_bracket_norm(&self.k_basis) <= ORTHONORMAL_TOLERANCE
    }

    /// Largest `|[X, Y]|` over pairs of `p` basis vectors.
    pub fn p_bracket_norm(&self) -> f64 {
        pairwise_bracket_norm(&self.p_basis)
    }
}

/// Splits `u` into its `m` and `k` components.
pub fn split_projections(
    split: &ReductiveSplit,
    u: &LieAlgebraElement,
) -> Result<(LieAlgebraElement, LieAlgebraElement)> {
    if u.factor_count() != split.factors {
        return Err(Error::Dimension {
            expected: split.factors,
            found: u.factor_count(),
        });
    }
    check_orthonormal("k", &split.k_basis)?;
    let uk = split.project_k(u);
    Ok((u - &uk, uk))
}

fn check_factor(factors: usize, factor: usize) -> Result<()> {
    if factor < factors {
        Ok(())
    } else {
        Err(Error::Basis(format!(
            "factor {} out of range for {factors} factors",
            factor + 1
        )))
    }
}

fn check_orthonormal(name: &str, basis: &[LieAlgebraElement]) -> Result<()> {
    for (a, u) in basis.iter().enumerate() {
        for (b, v) in basis.iter().enumerate().skip(a) {
            let target = if a == b { 1.0 } else { 0.0 };
            let d = (u.dot(v)? - target).abs();
            if d > ORTHONORMAL_TOLERANCE {
                return Err(Error::Basis(format!(
                    "{name} basis is not orthonormal: <e{a}, e{b}> off by {d:e}"
                )));
            }
        }
    }
    Ok(())
}

fn project(basis: &[LieAlgebraElement], u: &LieAlgebraElement) -> LieAlgebraElement {
    let mut out = LieAlgebraElement::zero(u.factor_count());
    for e in basis {
        out.axpy(u.dot(e).expect("same factor count"), e);
    }
    out
}

// extends an orthonormal set by Gram-Schmidt over candidates
fn complete(
    start: &[LieAlgebraElement],
    candidates: &[LieAlgebraElement],
) -> Vec<LieAlgebraElement> {
    let mut out = start.to_vec();
    for c in candidates {
        // two passes keep the result orthonormal to machine precision
        let mut v = c - &project(&out, c);
        v = &v - &project(&out, &v);
        let n = v.norm();
        if n > 1e-8 {
            out.push(v.scaled(1.0 / n));
        }
    }
    out
}

fn pairwise_bracket_norm(basis: &[LieAlgebraElement]) -> f64 {
    let mut worst = 0.0f64;
    for (a, x) in basis.iter().enumerate() {
        for y in &basis[a + 1..] {
            worst = worst.max(x.bracket(y).expect("same factor count").norm());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_splits_have_expected_dimensions() {
        let cases = [
            (ReductiveSplit::diagonal(2).unwrap(), 3, 3),
            (ReductiveSplit::diagonal(3).unwrap(), 3, 6),
            (ReductiveSplit::one_factor(3, 1).unwrap(), 3, 6),
            (ReductiveSplit::circle(1, 0).unwrap(), 1, 2),
            (ReductiveSplit::diagonal_circle(2).unwrap(), 1, 5),
            (ReductiveSplit::torus(3).unwrap(), 3, 6),
            (ReductiveSplit::slope_circle(&[5, 1]).unwrap(), 1, 5),
        ];
        for (split, k, m) in cases {
            assert_eq!(split.k_basis().len(), k, "{}", split.label());
            assert_eq!(split.m_basis().len(), m, "{}", split.label());
        }
    }

    #[test]
    fn projections_of_pure_components() {
        let split = ReductiveSplit::diagonal(2).unwrap();
        let x = split.k_basis()[1].clone();
        let (um, uk) = split_projections(&split, &x).unwrap();
        assert!(um.max_abs() < 1e-15);
        assert!((&uk - &x).max_abs() < 1e-15);

        let a = split.m_basis()[0].clone();
        let (um, uk) = split_projections(&split, &a).unwrap();
        assert!((&um - &a).max_abs() < 1e-15);
        assert!(uk.max_abs() < 1e-15);
    }

    #[test]
    fn refinement_complement() {
        let split = ReductiveSplit::one_factor(2, 0)
            .unwrap()
            .with_isotropy(vec![LieAlgebraElement::basis(2, 0, Axis::I)])
            .unwrap();
        assert_eq!(split.p_basis().len(), 2);
        assert!(split.p_bracket_norm() > 1.0);
    }

    #[test]
    fn non_orthonormal_basis_is_rejected() {
        let k = vec![LieAlgebraElement::basis(1, 0, Axis::I).scaled(2.0)];
        assert!(matches!(
            ReductiveSplit::new(1, k, vec![]),
            Err(Error::Basis(_))
        ));
    }

    #[test]
    fn non_subalgebra_is_rejected() {
        let k = vec![
            LieAlgebraElement::basis(1, 0, Axis::I),
            LieAlgebraElement::basis(1, 0, Axis::J),
        ];
        assert!(matches!(
            ReductiveSplit::new(1, k, vec![]),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn parse_names() {
        assert_eq!(ReductiveSplit::parse(2, "diag").unwrap().label(), "diag");
        assert_eq!(
            ReductiveSplit::parse(3, "factor:2").unwrap().label(),
            "factor:2"
        );
        assert!(ReductiveSplit::parse(2, "factor:3").is_err());
        assert!(ReductiveSplit::parse(2, "factor:0").is_err());
        assert!(ReductiveSplit::parse(2, "slope:5").is_err());
        assert!(ReductiveSplit::parse(2, "nope").is_err());
    }
}
