use std::f64::consts::FRAC_PI_2;
use std::fmt::Write as _;

use num_traits::Num;
use serde::Serialize;

use crate::error::{Error, Result};

/// The plateau `f = r sqrt(a/(a-1))` at which the disc metric
/// `dt^2 + f^2 dθ^2` matches the circle `K/H` of length `2πr`.
pub fn matching_level(a: f64, r: f64) -> Result<f64> {
    if !(a > 1.0) || !a.is_finite() {
        return Err(Error::NoFiniteMatching { a });
    }
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Parameter {
            name: "r",
            value: r,
            reason: "the circle radius must be positive",
        });
    }
    Ok(r * (a / (a - 1.0)).sqrt())
}

/// `a r^2 / (a - 1)`, the squared plateau, in any exact field.
pub fn matching_level_sq<T: Num + Copy>(a: T, r: T) -> T {
    a * r * r / (a - T::one())
}

/// `f^2 a / (f^2 + a r^2)`, the factor by which the metric on `p` differs
/// from `Q` at a point where the profile takes the value `f`.
pub fn orbit_factor<T: Num + Copy>(f_sq: T, a: T, r: T) -> T {
    f_sq * a / (f_sq + a * r * r)
}

/// Shape of an analytic profile with plateau `P`: a sine arc of radius
/// `cap_ratio·P` up to slope angle `bend`, a straight segment, then a
/// shoulder arc of radius `shoulder_ratio·P` turning flat at the plateau.
///
/// The default (`cap_ratio = 1`, `bend = π/2`) is the single arc
/// `f = P sin(t/P)`, reaching the plateau at `t0 = πP/2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProfileShape {
    pub cap_ratio: f64,
    pub bend: f64,
    pub shoulder_ratio: f64,
}

impl Default for ProfileShape {
    fn default() -> Self {
        ProfileShape {
            cap_ratio: 1.0,
            bend: FRAC_PI_2,
            shoulder_ratio: 0.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Kind {
    Analytic {
        c1: f64,
        bend: f64,
        line: f64,
        c2: f64,
        // breakpoints
        t1: f64,
        t2: f64,
    },
    // samples on a uniform grid; t >= last sample is treated as plateau
    Tabulated {
        step: f64,
        values: Vec<f64>,
    },
}

/// A rotationally symmetric disc metric `dt^2 + f(t)^2 dθ^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProfileFunction {
    kind: Kind,
    a: f64,
    r: f64,
    plateau: f64,
    t0: f64,
    step: f64,
}

/// Matching data of a profile.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GlueParams {
    pub a: f64,
    pub r: f64,
    pub t0: f64,
    pub plateau: f64,
}

/// Results of the pointwise profile checks.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProfileReport {
    pub f_at_zero: f64,
    pub slope_at_zero: f64,
    /// Largest sampled `f''`; concave profiles give a value `<= 0`.
    pub max_second_derivative: f64,
    /// Smallest sampled disc curvature `-f''/f` for `t > 0`.
    pub min_disc_curvature: f64,
    /// `|f(t0)^2 - a r^2/(a-1)|`.
    pub plateau_residual: f64,
    /// Largest deviation from the plateau value for `t >= t0`.
    pub flatness_residual: f64,
    pub slope_at_t0: f64,
}

impl ProfileFunction {
    /// Builds the analytic profile for `(a, r)` with the given shape.
    pub fn build(a: f64, r: f64, shape: ProfileShape) -> Result<Self> {
        let plateau = matching_level(a, r)?;
        let ProfileShape {
            cap_ratio,
            bend,
            shoulder_ratio,
        } = shape;
        if !(cap_ratio > 0.0) || !(bend > 0.0 && bend <= FRAC_PI_2) || !(shoulder_ratio >= 0.0) {
            return Err(Error::Construction(format!(
                "shape needs cap_ratio > 0, 0 < bend <= π/2, shoulder_ratio >= 0 (got {cap_ratio}, {bend}, {shoulder_ratio})"
            )));
        }
        let c1 = cap_ratio * plateau;
        let c2 = shoulder_ratio * plateau;
        let (s, c) = bend.sin_cos();
        let line = if (bend - FRAC_PI_2).abs() < 1e-15 {
            if (cap_ratio - 1.0).abs() > 1e-12 {
                return Err(Error::Construction(
                    "a quarter-turn cap must have cap_ratio = 1 to meet the plateau".into(),
                ));
            }
            0.0
        } else {
            (plateau - c1 * s - c2 * (1.0 - s)) / c
        };
        if line < -1e-12 * plateau {
            return Err(Error::Construction(format!(
                "cap and shoulder overshoot the plateau {plateau} (segment length {line})"
            )));
        }
        let line = line.max(0.0);
        let t1 = c1 * bend;
        let t2 = t1 + line;
        let t0 = t2 + c2 * (FRAC_PI_2 - bend);
        Ok(ProfileFunction {
            kind: Kind::Analytic {
                c1,
                bend,
                line,
                c2,
                t1,
                t2,
            },
            a,
            r,
            plateau,
            t0,
            step: 1e-3 * t0,
        })
    }

    /// The default single sine arc.
    pub fn sine_cap(a: f64, r: f64) -> Result<Self> {
        Self::build(a, r, ProfileShape::default())
    }

    /// A profile given by samples `values[i] = f(i·step)`; the last sample
    /// sets the matching time and is continued as a constant.
    pub fn tabulated(a: f64, r: f64, step: f64, values: Vec<f64>) -> Result<Self> {
        let plateau = matching_level(a, r)?;
        if !(step > 0.0) || values.len() < 3 {
            return Err(Error::Construction(
                "a tabulated profile needs a positive step and at least three samples".into(),
            ));
        }
        let t0 = step * (values.len() - 1) as f64;
        Ok(ProfileFunction {
            kind: Kind::Tabulated { step, values },
            a,
            r,
            plateau,
            t0,
            step,
        })
    }

    /// Overrides the grid step used by [`check`](Self::check).
    pub fn with_step(mut self, step: f64) -> Result<Self> {
        if !(step > 0.0) {
            return Err(Error::Parameter {
                name: "step",
                value: step,
                reason: "grid step must be positive",
            });
        }
        self.step = step;
        Ok(self)
    }

    pub fn params(&self) -> GlueParams {
        GlueParams {
            a: self.a,
            r: self.r,
            t0: self.t0,
            plateau: self.plateau,
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn plateau(&self) -> f64 {
        self.plateau
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    /// `f(t)`, extended oddly to `t < 0`.
    pub fn value(&self, t: f64) -> f64 {
        if t < 0.0 {
            return -self.value(-t);
        }
        match &self.kind {
            Kind::Analytic {
                c1,
                bend,
                c2,
                t1,
                t2,
                ..
            } => {
                if t <= *t1 {
                    c1 * (t / c1).sin()
                } else if t <= *t2 {
                    c1 * bend.sin() + bend.cos() * (t - t1)
                } else if t <= self.t0 {
                    let base = c1 * bend.sin() + bend.cos() * (t2 - t1);
                    base + c2 * ((bend + (t - t2) / c2).sin() - bend.sin())
                } else {
                    self.plateau
                }
            }
            Kind::Tabulated { step, values } => {
                let x = t / step;
                let i = x.floor() as usize;
                if i + 1 >= values.len() {
                    return *values.last().expect("nonempty");
                }
                let w = x - i as f64;
                values[i] * (1.0 - w) + values[i + 1] * w
            }
        }
    }

    /// `f'(t)`, taken from the left at breakpoints.
    pub fn derivative(&self, t: f64) -> f64 {
        match &self.kind {
            Kind::Analytic {
                c1,
                bend,
                c2,
                t1,
                t2,
                ..
            } => {
                let t = t.abs();
                if t <= *t1 {
                    (t / c1).cos()
                } else if t <= *t2 {
                    bend.cos()
                } else if t <= self.t0 {
                    (bend + (t - t2) / c2).cos()
                } else {
                    0.0
                }
            }
            Kind::Tabulated { .. } => {
                let h = self.step;
                (self.value(t + h) - self.value(t - h)) / (2.0 * h)
            }
        }
    }

    /// `f''(t)`, taken from the left at breakpoints.
    pub fn second_derivative(&self, t: f64) -> f64 {
        if t < 0.0 {
            return -self.second_derivative(-t);
        }
        match &self.kind {
            Kind::Analytic {
                c1,
                bend,
                c2,
                t1,
                t2,
                ..
            } => {
                if t <= *t1 {
                    -(t / c1).sin() / c1
                } else if t <= *t2 {
                    0.0
                } else if t <= self.t0 {
                    -(bend + (t - t2) / c2).sin() / c2
                } else {
                    0.0
                }
            }
            Kind::Tabulated { step, values } => {
                let i = (t / step).round() as usize;
                if i == 0 || i + 1 >= values.len() {
                    return 0.0;
                }
                (values[i + 1] - 2.0 * values[i] + values[i - 1]) / (step * step)
            }
        }
    }

    /// Sample points `0, h, 2h, ...` up to `1.25 t0`, with `t0` included.
    pub fn grid(&self) -> Vec<f64> {
        let end = 1.25 * self.t0;
        let n = (end / self.step).ceil() as usize;
        let mut pts: Vec<f64> = (0..=n).map(|i| (i as f64 * self.step).min(end)).collect();
        pts.push(self.t0);
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        pts
    }

    /// `f(t)^2 a / (f(t)^2 + a r^2)`: zero on the singular orbit and one
    /// from the matching time on.
    pub fn orbit_metric_factor(&self, t: f64) -> f64 {
        let f = self.value(t.max(0.0));
        orbit_factor(f * f, self.a, self.r)
    }

    pub fn check(&self) -> ProfileReport {
        let delta = 1e-7 * self.t0;
        let grid = self.grid();
        let mut max_second = f64::NEG_INFINITY;
        let mut min_curv = f64::INFINITY;
        let mut flat = 0.0f64;
        for &t in &grid {
            let f2 = self.second_derivative(t);
            max_second = max_second.max(f2);
            if t > 0.0 {
                min_curv = min_curv.min(-f2 / self.value(t));
            }
            if t >= self.t0 {
                flat = flat.max((self.value(t) - self.plateau).abs());
            }
        }
        let f_t0 = self.value(self.t0);
        ProfileReport {
            f_at_zero: self.value(0.0),
            slope_at_zero: (self.value(delta) - self.value(0.0)) / delta,
            max_second_derivative: max_second,
            min_disc_curvature: min_curv,
            plateau_residual: (f_t0 * f_t0 - self.plateau * self.plateau).abs(),
            flatness_residual: flat,
            slope_at_t0: self.derivative(self.t0),
        }
    }

    /// CSV with columns `t,f,factor` on the check grid.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,f,factor\n");
        for t in self.grid() {
            writeln!(
                out,
                "{t:.9},{:.12},{:.12}",
                self.value(t),
                self.orbit_metric_factor(t)
            )
            .expect("writing to a String cannot fail");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use num_rational::Ratio;

    #[test]
    fn plateau_values() {
        assert_abs_diff_eq!(
            matching_level(4.0 / 3.0, 1.0).unwrap(),
            2.0,
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            matching_level(1.01, 1.0).unwrap(),
            101f64.sqrt(),
            epsilon = 1e-12
        );
        assert!(matches!(
            matching_level(1.0, 1.0),
            Err(Error::NoFiniteMatching { .. })
        ));
        assert!(matching_level(0.5, 1.0).is_err());
        assert!(matches!(
            matching_level(1.2, 0.0),
            Err(Error::Parameter { .. })
        ));
    }

    #[test]
    fn exact_factor_is_one_on_plateau() {
        let a = Ratio::new(4i64, 3);
        let r = Ratio::from_integer(1);
        let f_sq = matching_level_sq(a, r);
        assert_eq!(f_sq, Ratio::from_integer(4));
        assert_eq!(orbit_factor(f_sq, a, r), Ratio::from_integer(1));
    }

    #[test]
    fn sine_cap_checks() {
        let p = ProfileFunction::sine_cap(4.0 / 3.0, 1.0).unwrap();
        assert_abs_diff_eq!(p.t0(), std::f64::consts::PI, epsilon = 1e-14);
        let rep = p.check();
        assert_eq!(rep.f_at_zero, 0.0);
        assert!((rep.slope_at_zero - 1.0).abs() < 1e-8);
        assert!(rep.max_second_derivative <= 1e-9);
        assert!(rep.plateau_residual < 1e-12);
        assert!(rep.slope_at_t0.abs() < 1e-12);
        assert_abs_diff_eq!(p.value(-0.3), -p.value(0.3));
    }

    #[test]
    fn composite_shape_is_c1_and_concave() {
        let shape = ProfileShape {
            cap_ratio: 0.25,
            bend: 0.6,
            shoulder_ratio: 0.3,
        };
        let p = ProfileFunction::build(1.2, 0.5, shape).unwrap();
        let rep = p.check();
        assert!(rep.max_second_derivative <= 1e-9);
        assert!(rep.plateau_residual < 1e-10);
        assert!(rep.slope_at_t0.abs() < 1e-12);
        // derivative is continuous across the breakpoints
        for t in p.grid().windows(2) {
            assert!((p.value(t[1]) - p.value(t[0])).abs() <= p.step() * 1.0000001);
        }
    }

    #[test]
    fn overshooting_shape_is_rejected() {
        let shape = ProfileShape {
            cap_ratio: 2.0,
            bend: 1.2,
            shoulder_ratio: 0.5,
        };
        assert!(matches!(
            ProfileFunction::build(4.0 / 3.0, 1.0, shape),
            Err(Error::Construction(_))
        ));
        let quarter = ProfileShape {
            cap_ratio: 0.5,
            ..ProfileShape::default()
        };
        assert!(ProfileFunction::build(4.0 / 3.0, 1.0, quarter).is_err());
    }

    #[test]
    fn factor_is_monotone_up_to_t0() {
        let p = ProfileFunction::sine_cap(1.1, 1.0).unwrap();
        assert_eq!(p.orbit_metric_factor(0.0), 0.0);
        let g = p.grid();
        for w in g.windows(2).filter(|w| w[1] <= p.t0()) {
            assert!(p.orbit_metric_factor(w[1]) > p.orbit_metric_factor(w[0]));
        }
        assert_abs_diff_eq!(p.orbit_metric_factor(p.t0()), 1.0, epsilon = 1e-12);
    }
}
