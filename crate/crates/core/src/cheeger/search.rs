use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use super::{DeformedMetric, KoszulOracle};
use crate::quat_lie::LieAlgebraElement;

/// A plane counts as negatively curved below this value.
pub const WITNESS_THRESHOLD: f64 = -1e-10;
/// Agreement required between the optimizer value and the oracle.
const ORACLE_AGREEMENT: f64 = 1e-8;
const MAX_STARTS: usize = 32;
const SAMPLE_CHUNK: usize = 4096;

/// A negatively curved plane, `Q_a`-orthonormal.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NegativePlane {
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    /// Sectional curvature from the closed form.
    pub value: f64,
    /// The same plane evaluated by [`KoszulOracle`].
    pub oracle_value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchOutcome {
    pub witness: Option<NegativePlane>,
    /// Smallest sectional curvature reached by any start.
    pub best_value: f64,
    /// Curvature evaluations spent.
    pub evaluations: usize,
    pub starts: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampledMinimum {
    pub min: f64,
    pub samples: usize,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

/// Minimum sectional curvature over `samples` random planes with Gaussian
/// spanning vectors. Deterministic in `seed` regardless of thread count.
pub fn sampled_minimum(metric: &DeformedMetric, samples: usize, seed: u64) -> SampledMinimum {
    let dim = metric.dim();
    let chunks = samples.div_ceil(SAMPLE_CHUNK);
    let best = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let count = SAMPLE_CHUNK.min(samples - c * SAMPLE_CHUNK);
            let mut best: Option<(f64, usize, LieAlgebraElement, LieAlgebraElement)> = None;
            for s in 0..count {
                let u = gaussian(&mut rng, dim);
                let v = gaussian(&mut rng, dim);
                let Ok(value) = metric.sectional_curvature(&u, &v) else {
                    continue;
                };
                if best.as_ref().is_none_or(|b| value < b.0) {
                    best = Some((value, c * SAMPLE_CHUNK + s, u, v));
                }
            }
            best
        })
        .flatten()
        .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    match best {
        Some((min, _, u, v)) => SampledMinimum {
            min,
            samples,
            u: u.into_coords(),
            v: v.into_coords(),
        },
        None => SampledMinimum {
            min: f64::INFINITY,
            samples,
            u: vec![],
            v: vec![],
        },
    }
}

/// Seeded multi-start search for a plane of negative sectional curvature.
///
/// For a fixed unit `u` the curvature numerator is a quadratic form in `v`,
/// so each half-step minimizes it exactly over the unit sphere of
/// `u^⊥` (smallest eigenvector); the roles of `u` and `v` then swap. The
/// budget counts closed-form curvature evaluations.
pub fn find_negative_plane(metric: &DeformedMetric, budget: usize, seed: u64) -> SearchOutcome {
    let dim = metric.dim();
    let per_step = (dim - 1) * dim / 2;
    let starts = (budget / (8 * per_step)).clamp(1, MAX_STARTS);
    let per_start = budget / starts;

    let mut seeder = ChaCha8Rng::seed_from_u64(seed);
    let seeds: Vec<u64> = (0..starts).map(|_| seeder.random()).collect();

    let runs: Vec<(f64, usize, usize, LieAlgebraElement, LieAlgebraElement)> = seeds
        .par_iter()
        .enumerate()
        .map(|(i, &s)| {
            let (value, evals, u, v) = run_start(metric, per_start, s);
            (value, i, evals, u, v)
        })
        .collect();

    let evaluations = runs.iter().map(|r| r.2).sum();
    let best = runs
        .into_iter()
        .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)))
        .expect("at least one start");
    let (best_value, _, _, u, v) = best;

    let witness = (best_value < WITNESS_THRESHOLD)
        .then(|| {
            let oracle = KoszulOracle::new(metric);
            let oracle_value = oracle.sectional_curvature(&u, &v).ok()?;
            let agrees = (oracle_value - best_value).abs() <= ORACLE_AGREEMENT;
            (agrees && oracle_value < WITNESS_THRESHOLD).then(|| NegativePlane {
                u: u.clone().into_coords(),
                v: v.clone().into_coords(),
                value: best_value,
                oracle_value,
            })
        })
        .flatten();

    SearchOutcome {
        witness,
        best_value,
        evaluations,
        starts,
    }
}

fn run_start(
    metric: &DeformedMetric,
    budget: usize,
    seed: u64,
) -> (f64, usize, LieAlgebraElement, LieAlgebraElement) {
    let dim = metric.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut u = normalize(metric, gaussian(&mut rng, dim));
    let mut v = {
        let w = gaussian(&mut rng, dim);
        let c = metric.inner(&w, &u).expect("same dimension");
        let mut w = w;
        w.axpy(-c, &u);
        normalize(metric, w)
    };
    let mut value = metric.sectional_curvature(&u, &v).unwrap_or(f64::INFINITY);
    let mut evals = 1;
    let per_step = (dim - 1) * dim / 2;

    while evals + per_step <= budget {
        let (next_v, next_value, used) = minimize_partner(metric, &u);
        evals += used;
        let improvement = value - next_value;
        if next_value < value {
            v = next_v;
            value = next_value;
        }
        std::mem::swap(&mut u, &mut v);
        if improvement <= 1e-14 * value.abs().max(1.0) {
            break;
        }
    }
    (value, evals, u, v)
}

// minimizes the curvature numerator over Q_a-unit vectors orthogonal to u
fn minimize_partner(
    metric: &DeformedMetric,
    u: &LieAlgebraElement,
) -> (LieAlgebraElement, f64, usize) {
    let basis = orthonormal_complement(metric, u);
    let d = basis.len();
    let q = |w: &LieAlgebraElement| metric.curvature(u, w).expect("same dimension");
    let diag: Vec<f64> = basis.iter().map(q).collect();
    let mut m = DMatrix::<f64>::zeros(d, d);
    let mut evals = d;
    for i in 0..d {
        m[(i, i)] = diag[i];
        for j in i + 1..d {
            let off = 0.5 * (q(&(&basis[i] + &basis[j])) - diag[i] - diag[j]);
            m[(i, j)] = off;
            m[(j, i)] = off;
            evals += 1;
        }
    }
    let eig = SymmetricEigen::new(m);
    let (k, &lambda) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1).then(a.0.cmp(&b.0)))
        .expect("nonempty complement");
    let mut v = LieAlgebraElement::zero(u.factor_count());
    for (i, b) in basis.iter().enumerate() {
        v.axpy(eig.eigenvectors[(i, k)], b);
    }
    (v, lambda, evals)
}

fn orthonormal_complement(
    metric: &DeformedMetric,
    u: &LieAlgebraElement,
) -> Vec<LieAlgebraElement> {
    let split = metric.split();
    let s = metric.a().sqrt();
    let candidates = split
        .m_basis()
        .iter()
        .cloned()
        .chain(split.k_basis().iter().map(|e| e.scaled(1.0 / s)));
    let mut out: Vec<LieAlgebraElement> = vec![u.clone()];
    for c in candidates {
        let mut w = c;
        for _ in 0..2 {
            for e in &out {
                let p = metric.inner(&w, e).expect("same dimension");
                w.axpy(-p, e);
            }
        }
        let n = metric.norm_sq(&w).expect("same dimension").sqrt();
        if n > 1e-6 {
            out.push(w.scaled(1.0 / n));
        }
        if out.len() == metric.dim() {
            break;
        }
    }
    out.remove(0);
    out
}

fn normalize(metric: &DeformedMetric, u: LieAlgebraElement) -> LieAlgebraElement {
    let n = metric.norm_sq(&u).expect("same dimension").sqrt();
    u.scaled(1.0 / n)
}

fn gaussian(rng: &mut ChaCha8Rng, dim: usize) -> LieAlgebraElement {
    let coords = (0..dim)
        .map(|_| rng.sample::<f64, _>(StandardNormal))
        .collect();
    LieAlgebraElement::from_coords(coords).expect("dimension is a multiple of three")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat_lie::ReductiveSplit;

    #[test]
    fn finds_berger_horizontal_plane() {
        // min over planes of the Berger metric at a = 1.5 is 4 - 3a = -0.5
        let m = DeformedMetric::new(ReductiveSplit::circle(1, 0).unwrap(), 1.5).unwrap();
        let out = find_negative_plane(&m, 2_000, 7);
        let w = out.witness.expect("negative plane");
        assert!((w.value + 0.5).abs() < 1e-9, "{}", w.value);
    }

    #[test]
    fn search_is_deterministic() {
        let m = DeformedMetric::new(ReductiveSplit::diagonal(2).unwrap(), 1.2).unwrap();
        assert_eq!(
            find_negative_plane(&m, 5_000, 3),
            find_negative_plane(&m, 5_000, 3)
        );
        assert_eq!(
            sampled_minimum(&m, 10_000, 3),
            sampled_minimum(&m, 10_000, 3)
        );
    }

    #[test]
    fn round_metric_has_no_witness() {
        let m = DeformedMetric::new(ReductiveSplit::diagonal(2).unwrap(), 1.0).unwrap();
        let out = find_negative_plane(&m, 5_000, 1);
        assert!(out.witness.is_none());
        assert!(out.best_value >= -1e-9);
    }
}
