//! Gluing a codimension-two disc bundle `G ×_K D^2` to a Cheeger-deformed
//! principal part: the disc profile, the matching time, and a checkable
//! nonnegativity certificate.

mod profile;

pub use profile::{
    matching_level, matching_level_sq, orbit_factor, GlueParams, ProfileFunction, ProfileReport,
    ProfileShape,
};

use serde::Serialize;

use crate::cheeger::{find_negative_plane, sampled_minimum, DeformedMetric};
use crate::error::{Error, Result};
use crate::quat_lie::ReductiveSplit;

/// Largest deformation for which an abelian `p` keeps nonnegative curvature.
pub const MAX_ABELIAN_A: f64 = 4.0 / 3.0;
const NEGATIVITY_TOLERANCE: f64 = 1e-9;
const CERTIFICATE_SAMPLES: usize = 10_000;
const CERTIFICATE_SEARCH_BUDGET: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Clause {
    pub name: &'static str,
    pub passed: bool,
    pub value: f64,
    pub tolerance: f64,
    pub detail: String,
}

/// The individual checks behind a nonnegativity claim for the glued metric.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub a: f64,
    pub clauses: Vec<Clause>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.passed)
    }

    pub fn failed_clauses(&self) -> Vec<&'static str> {
        self.clauses
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name)
            .collect()
    }
}

/// Checks the data entering the nonnegativity argument for
/// `G ×_K D^2`: the metric deformed by `a` along `p` only, the bound
/// `a <= 4/3`, the curvature of the disc and the plateau match.
///
/// `p` must be one-dimensional (so `K/H` is a circle) and hence abelian;
/// anything else is rejected before any clause is evaluated.
pub fn nonneg_certificate(
    profile: &ProfileFunction,
    metric: &DeformedMetric,
) -> Result<Certificate> {
    let split = metric.split();
    let p = split.p_basis();
    if p.len() != 1 {
        return Err(Error::Precondition(format!(
            "K/H must be a circle: p has dimension {}",
            p.len()
        )));
    }
    let p_bracket = split.p_bracket_norm();
    if p_bracket > 1e-12 {
        return Err(Error::Precondition(format!(
            "p is not abelian (|[p, p]| = {p_bracket:e})"
        )));
    }
    let a = metric.a();
    let mut clauses = Vec::new();

    clauses.push(Clause {
        name: "deformation_bound",
        passed: a <= MAX_ABELIAN_A + 1e-12,
        value: a,
        tolerance: MAX_ABELIAN_A,
        detail: "a <= 4/3".into(),
    });
    let same_a = (profile.a() - a).abs();
    clauses.push(Clause {
        name: "profile_parameter",
        passed: same_a <= 1e-12,
        value: same_a,
        tolerance: 1e-12,
        detail: "the profile was built for the metric's a".into(),
    });

    // Q deformed by a along p alone
    let p_split = ReductiveSplit::new(split.factors(), p.to_vec(), vec![])?;
    let p_metric = DeformedMetric::new(p_split, a)?;
    let sampled = sampled_minimum(&p_metric, CERTIFICATE_SAMPLES, 0);
    let searched = find_negative_plane(&p_metric, CERTIFICATE_SEARCH_BUDGET, 0);
    let min = sampled.min.min(searched.best_value);
    clauses.push(Clause {
        name: "deformed_metric_nonnegative",
        passed: min >= -NEGATIVITY_TOLERANCE,
        value: min,
        tolerance: -NEGATIVITY_TOLERANCE,
        detail: format!(
            "minimum over {} sampled planes and {} optimizer starts",
            sampled.samples, searched.starts
        ),
    });

    let report = profile.check();
    clauses.push(Clause {
        name: "concavity",
        passed: report.max_second_derivative <= NEGATIVITY_TOLERANCE,
        value: report.max_second_derivative,
        tolerance: NEGATIVITY_TOLERANCE,
        detail: "max f'' on the grid".into(),
    });
    clauses.push(Clause {
        name: "disc_curvature",
        passed: report.min_disc_curvature >= -NEGATIVITY_TOLERANCE,
        value: report.min_disc_curvature,
        tolerance: -NEGATIVITY_TOLERANCE,
        detail: "min -f''/f on the grid".into(),
    });
    let slope_err = (report.slope_at_zero - 1.0).abs();
    clauses.push(Clause {
        name: "smooth_center",
        passed: report.f_at_zero == 0.0 && slope_err <= 1e-8,
        value: slope_err,
        tolerance: 1e-8,
        detail: "f(0) = 0 and f'(0) = 1".into(),
    });
    let scale = profile.plateau().powi(2).max(1.0);
    let plateau = report
        .plateau_residual
        .max(report.flatness_residual * profile.plateau());
    clauses.push(Clause {
        name: "plateau_match",
        passed: plateau <= 1e-8 * scale,
        value: plateau,
        tolerance: 1e-8 * scale,
        detail: "f^2 = a r^2/(a-1) from t0 on".into(),
    });

    Ok(Certificate { a, clauses })
}

/// How a singular orbit of the given codimension is handled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GluingRule {
    /// Codimension one: the bi-invariant metric on `G` already induces a
    /// product metric on `G ×_K D^1`; no deformation (`a = 1`).
    Undeformed,
    /// Codimension two: deform by `a <= 4/3` and glue a disc profile.
    CheegerDeformed,
    /// No construction available.
    OutOfScope,
}

pub fn codim_one_rule(codimension: u32) -> GluingRule {
    match codimension {
        1 => GluingRule::Undeformed,
        2 => GluingRule::CheegerDeformed,
        _ => GluingRule::OutOfScope,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle_metric(a: f64) -> DeformedMetric {
        DeformedMetric::new(ReductiveSplit::circle(1, 0).unwrap(), a).unwrap()
    }

    #[test]
    fn reference_configuration_passes() {
        let a = 4.0 / 3.0;
        let profile = ProfileFunction::sine_cap(a, 1.0).unwrap();
        let cert = nonneg_certificate(&profile, &circle_metric(a)).unwrap();
        assert!(cert.passed(), "{:?}", cert.failed_clauses());
    }

    #[test]
    fn large_a_fails_the_bound_and_the_sampling() {
        let a = 1.5;
        let profile = ProfileFunction::sine_cap(a, 1.0).unwrap();
        let cert = nonneg_certificate(&profile, &circle_metric(a)).unwrap();
        let failed = cert.failed_clauses();
        assert!(failed.contains(&"deformation_bound"));
        assert!(failed.contains(&"deformed_metric_nonnegative"));
    }

    #[test]
    fn convex_bump_fails_concavity() {
        let a = 4.0 / 3.0;
        let p = matching_level(a, 1.0).unwrap();
        let step = 0.01;
        let n = 400;
        let t0 = step * n as f64;
        let values: Vec<f64> = (0..=n)
            .map(|i| {
                let t = i as f64 * step;
                let base = p * (std::f64::consts::FRAC_PI_2 * t / t0).sin();
                let x = t / t0 - 0.5;
                base + 0.05 * (-(x * x) / 0.002).exp() * (1.0 - 4.0 * x * x)
            })
            .collect();
        let profile = ProfileFunction::tabulated(a, 1.0, step, values).unwrap();
        let cert = nonneg_certificate(&profile, &circle_metric(a)).unwrap();
        assert!(cert.failed_clauses().contains(&"concavity"));
    }

    #[test]
    fn nonabelian_p_is_rejected() {
        let a = 4.0 / 3.0;
        let profile = ProfileFunction::sine_cap(a, 1.0).unwrap();
        let metric = DeformedMetric::new(ReductiveSplit::diagonal(2).unwrap(), a).unwrap();
        assert!(matches!(
            nonneg_certificate(&profile, &metric),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn codimension_rules() {
        assert_eq!(codim_one_rule(1), GluingRule::Undeformed);
        assert_eq!(codim_one_rule(2), GluingRule::CheegerDeformed);
        assert_eq!(codim_one_rule(3), GluingRule::OutOfScope);
    }
}
