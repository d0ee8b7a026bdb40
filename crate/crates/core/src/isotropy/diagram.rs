//! Group diagrams `H ⊂ {K_-, K_+} ⊂ G` with `G` a product of copies of
//! `S^3`, kept symbolic: finite subgroups as explicit quaternion units,
//! circles as integer slopes. Membership is exact arithmetic on rational
//! turns.

use std::fmt;
use std::ops::Mul;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::quat_lie::{Axis, Quaternion, ReductiveSplit};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Unit {
    One,
    I,
    J,
    K,
}

impl From<Axis> for Unit {
    fn from(a: Axis) -> Self {
        match a {
            Axis::I => Unit::I,
            Axis::J => Unit::J,
            Axis::K => Unit::K,
        }
    }
}

/// An element of the quaternion group `{±1, ±i, ±j, ±k}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QElem {
    pub negative: bool,
    pub unit: Unit,
}

impl QElem {
    pub const ONE: QElem = QElem::new(false, Unit::One);
    pub const MINUS_ONE: QElem = QElem::new(true, Unit::One);
    pub const I: QElem = QElem::new(false, Unit::I);
    pub const J: QElem = QElem::new(false, Unit::J);
    pub const K: QElem = QElem::new(false, Unit::K);

    pub const fn new(negative: bool, unit: Unit) -> Self {
        QElem { negative, unit }
    }

    pub fn all() -> [QElem; 8] {
        let mut out = [QElem::ONE; 8];
        for (n, unit) in [Unit::One, Unit::I, Unit::J, Unit::K]
            .into_iter()
            .enumerate()
        {
            out[2 * n] = QElem::new(false, unit);
            out[2 * n + 1] = QElem::new(true, unit);
        }
        out
    }

    pub fn inverse(self) -> Self {
        match self.unit {
            Unit::One => self,
            _ => QElem::new(!self.negative, self.unit),
        }
    }

    /// `axis^m`, which is `e^{axis·mπ/2}`.
    pub fn axis_power(axis: Axis, m: i64) -> Self {
        let u = QElem::new(false, axis.into());
        match m.rem_euclid(4) {
            0 => QElem::ONE,
            1 => u,
            2 => QElem::MINUS_ONE,
            _ => u.inverse(),
        }
    }

    pub fn to_quaternion(self) -> Quaternion {
        let q = match self.unit {
            Unit::One => Quaternion::ONE,
            Unit::I => Quaternion::I,
            Unit::J => Quaternion::J,
            Unit::K => Quaternion::K,
        };
        if self.negative {
            -q
        } else {
            q
        }
    }
}

impl Mul for QElem {
    type Output = QElem;

    fn mul(self, rhs: QElem) -> QElem {
        use Unit::*;
        let (flip, unit) = match (self.unit, rhs.unit) {
            (One, u) | (u, One) => (false, u),
            (I, I) | (J, J) | (K, K) => (true, One),
            (I, J) => (false, K),
            (J, K) => (false, I),
            (K, I) => (false, J),
            (J, I) => (true, K),
            (K, J) => (true, I),
            (I, K) => (true, J),
        };
        QElem::new(self.negative ^ rhs.negative ^ flip, unit)
    }
}

impl fmt::Display for QElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.negative { "-" } else { "" };
        let u = match self.unit {
            Unit::One => "1",
            Unit::I => "i",
            Unit::J => "j",
            Unit::K => "k",
        };
        write!(f, "{sign}{u}")
    }
}

fn tuple_product(a: &[QElem], b: &[QElem]) -> Vec<QElem> {
    a.iter().zip(b).map(|(x, y)| *x * *y).collect()
}

fn is_identity(g: &[QElem]) -> bool {
    g.iter().all(|x| *x == QElem::ONE)
}

/// `e^{axis·2π s t}` when it lies in the quaternion group, i.e. when `4st`
/// is an integer.
fn circle_point(axis: Axis, s: i64, t: Ratio<i64>) -> Option<QElem> {
    let x = t * Ratio::from_integer(4 * s);
    x.is_integer()
        .then(|| QElem::axis_power(axis, x.to_integer()))
}

/// A closed subgroup of `(S^3)^n`, described symbolically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Subgroup {
    /// The quaternion group embedded diagonally.
    DiagonalQuaternion { factors: usize },
    /// `{(e^{axis·s_1θ}, ..., e^{axis·s_nθ})} ∪ reflection·{...}`.
    PinType {
        axis: Axis,
        slopes: Vec<i64>,
        reflection: Vec<QElem>,
    },
}

impl Subgroup {
    pub fn pin(axis: Axis, slopes: Vec<i64>, reflection: Vec<QElem>) -> Self {
        Subgroup::PinType {
            axis,
            slopes,
            reflection,
        }
    }

    pub fn factors(&self) -> usize {
        match self {
            Subgroup::DiagonalQuaternion { factors } => *factors,
            Subgroup::PinType { slopes, .. } => slopes.len(),
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            Subgroup::DiagonalQuaternion { .. } => 0,
            Subgroup::PinType { slopes, .. } => usize::from(slopes.iter().any(|&s| s != 0)),
        }
    }

    /// Elements of a finite subgroup (`None` for circles).
    pub fn elements(&self) -> Option<Vec<Vec<QElem>>> {
        match self {
            Subgroup::DiagonalQuaternion { factors } => {
                Some(QElem::all().iter().map(|q| vec![*q; *factors]).collect())
            }
            Subgroup::PinType { .. } => None,
        }
    }

    /// Generators `(i,..,i)`, `(j,..,j)`, `(-1,..,-1)` of a finite subgroup.
    pub fn generators(&self) -> Option<Vec<Vec<QElem>>> {
        match self {
            Subgroup::DiagonalQuaternion { factors } => Some(
                [QElem::I, QElem::J, QElem::MINUS_ONE]
                    .iter()
                    .map(|q| vec![*q; *factors])
                    .collect(),
            ),
            Subgroup::PinType { .. } => None,
        }
    }

    pub fn contains(&self, g: &[QElem]) -> bool {
        if g.len() != self.factors() {
            return false;
        }
        match self {
            Subgroup::DiagonalQuaternion { .. } => g.iter().all(|x| *x == g[0]),
            Subgroup::PinType {
                axis,
                slopes,
                reflection,
            } => {
                let back: Vec<QElem> = reflection.iter().map(|r| r.inverse()).collect();
                circle_contains(*axis, slopes, g)
                    || circle_contains(*axis, slopes, &tuple_product(&back, g))
            }
        }
    }

    /// Whether the reflection lies outside the identity component.
    fn has_two_components(&self) -> bool {
        match self {
            Subgroup::PinType {
                axis,
                slopes,
                reflection,
            } => !circle_contains(*axis, slopes, reflection),
            Subgroup::DiagonalQuaternion { .. } => false,
        }
    }

    fn in_reflection_component(&self, g: &[QElem]) -> bool {
        match self {
            Subgroup::PinType {
                axis,
                slopes,
                reflection,
            } => {
                let back: Vec<QElem> = reflection.iter().map(|r| r.inverse()).collect();
                circle_contains(*axis, slopes, &tuple_product(&back, g))
            }
            Subgroup::DiagonalQuaternion { .. } => false,
        }
    }

    /// Whether only the identity has last coordinate `1`.
    pub fn last_slot_injective(&self) -> bool {
        match self {
            Subgroup::DiagonalQuaternion { .. } => self
                .elements()
                .into_iter()
                .flatten()
                .filter(|g| g.last() == Some(&QElem::ONE))
                .all(|g| is_identity(&g)),
            Subgroup::PinType {
                axis,
                slopes,
                reflection,
            } => pin_last_slot_injective(*axis, slopes, reflection),
        }
    }
}

fn circle_contains(axis: Axis, slopes: &[i64], g: &[QElem]) -> bool {
    let Some(s0) = slopes.iter().copied().find(|&s| s != 0) else {
        return is_identity(g);
    };
    // e^{axis·2π s0 t} must be a quaternion unit, so t = j/(4|s0|)
    let den = 4 * s0.abs();
    (0..den).any(|j| {
        let t = Ratio::new(j, den);
        slopes
            .iter()
            .zip(g)
            .all(|(&s, &x)| circle_point(axis, s, t) == Some(x))
    })
}

fn pin_last_slot_injective(axis: Axis, slopes: &[i64], reflection: &[QElem]) -> bool {
    let Some((&last, rest)) = slopes.split_last() else {
        return true;
    };
    let r_last = *reflection
        .last()
        .expect("reflection has one entry per factor");
    if last == 0 {
        // the whole circle sits over the identity of the last slot
        if rest.iter().any(|&s| s != 0) {
            return false;
        }
        return r_last != QElem::ONE || is_identity(reflection);
    }
    if rest.iter().any(|&s| s % last != 0) {
        return false;
    }
    // reflection component: c_last = r_last^{-1} on the circle
    let target = r_last.inverse();
    let Some(m) = (0..4).find(|&m| QElem::axis_power(axis, m) == target) else {
        return true;
    };
    let den = 4 * last;
    (0..last.abs()).all(|j| {
        let t = Ratio::new(m + 4 * j, den);
        slopes
            .iter()
            .zip(reflection)
            .all(|(&s, &r)| circle_point(axis, s, t).is_some_and(|c| r * c == QElem::ONE))
    })
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subgroup::DiagonalQuaternion { factors } => write!(f, "ΔQ in (S^3)^{factors}"),
            Subgroup::PinType {
                axis,
                slopes,
                reflection,
            } => {
                let circle: Vec<String> = slopes
                    .iter()
                    .map(|s| match s {
                        0 => "1".to_string(),
                        1 => format!("e^{{{axis}θ}}"),
                        -1 => format!("e^{{-{axis}θ}}"),
                        s => format!("e^{{{s}{axis}θ}}"),
                    })
                    .collect();
                let r: Vec<String> = reflection.iter().map(ToString::to_string).collect();
                let c = circle.join(", ");
                write!(f, "({c}) ∪ ({})·({c})", r.join(", "))
            }
        }
    }
}

impl Serialize for Subgroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DiagramKind {
    /// `S^3` acting on `S^4` with `H = Q`.
    S4Base,
    /// `S^3 × S^3` on the principal `S^3` bundle with slopes `(p_-, p_+)`.
    PrincipalS3,
    /// `S^3 × S^3 × S^3` on the principal `S^3 × S^3` bundle with slopes
    /// `(p_-, q_-, p_+, q_+)`.
    PrincipalS3xS3,
    Custom,
}

/// `H ⊂ {K_-, K_+} ⊂ G = (S^3)^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupDiagram {
    pub kind: DiagramKind,
    pub params: Vec<i64>,
    pub h: Subgroup,
    pub k_minus: Subgroup,
    pub k_plus: Subgroup,
}

impl GroupDiagram {
    /// `Q ⊂ {e^{iθ} ∪ j e^{iθ}, e^{jθ} ∪ i e^{jθ}} ⊂ S^3`.
    pub fn s4_base() -> Self {
        GroupDiagram {
            kind: DiagramKind::S4Base,
            params: vec![],
            h: Subgroup::DiagonalQuaternion { factors: 1 },
            k_minus: Subgroup::pin(Axis::I, vec![1], vec![QElem::J]),
            k_plus: Subgroup::pin(Axis::J, vec![1], vec![QElem::I]),
        }
    }

    /// `K_- = (e^{ip_-θ}, e^{iθ}) ∪ (j, j)·K_-^0`,
    /// `K_+ = (e^{jp_+θ}, e^{jθ}) ∪ (i, i)·K_+^0`, `H = ΔQ`.
    pub fn principal_s3(p_minus: i64, p_plus: i64) -> Self {
        Self::sliced(DiagramKind::PrincipalS3, vec![p_minus], vec![p_plus])
    }

    /// As [`principal_s3`](Self::principal_s3) with slopes `(p_-, q_-, 1)`
    /// and `(p_+, q_+, 1)` in `S^3 × S^3 × S^3`.
    pub fn principal_s3xs3(p_minus: i64, q_minus: i64, p_plus: i64, q_plus: i64) -> Self {
        Self::sliced(
            DiagramKind::PrincipalS3xS3,
            vec![p_minus, q_minus],
            vec![p_plus, q_plus],
        )
    }

    fn sliced(kind: DiagramKind, minus: Vec<i64>, plus: Vec<i64>) -> Self {
        let n = minus.len() + 1;
        let params = minus.iter().chain(&plus).copied().collect();
        let with_one = |mut v: Vec<i64>| {
            v.push(1);
            v
        };
        GroupDiagram {
            kind,
            params,
            h: Subgroup::DiagonalQuaternion { factors: n },
            k_minus: Subgroup::pin(Axis::I, with_one(minus), vec![QElem::J; n]),
            k_plus: Subgroup::pin(Axis::J, with_one(plus), vec![QElem::I; n]),
        }
    }

    pub fn custom(h: Subgroup, k_minus: Subgroup, k_plus: Subgroup) -> Self {
        GroupDiagram {
            kind: DiagramKind::Custom,
            params: vec![],
            h,
            k_minus,
            k_plus,
        }
    }

    pub fn factors(&self) -> usize {
        self.h.factors()
    }

    /// Codimensions `dim K_±/H + 1` of the two singular orbits.
    pub fn end_codimensions(&self) -> [usize; 2] {
        let h = self.h.dimension();
        [self.k_minus.dimension(), self.k_plus.dimension()].map(|k| k.saturating_sub(h) + 1)
    }

    /// The Lie algebras of `K_-` and `K_+` as splits of `su(2)^n` (with
    /// `h = 0`, `H` being finite), for codimension-two ends.
    pub fn end_algebras(&self) -> Result<(ReductiveSplit, ReductiveSplit)> {
        let algebra = |k: &Subgroup| match k {
            Subgroup::PinType { axis, slopes, .. } => {
                ReductiveSplit::slope_circle_along(*axis, slopes)
            }
            Subgroup::DiagonalQuaternion { .. } => Err(Error::Precondition(
                "a finite K has no codimension-two end".into(),
            )),
        };
        if self.h.dimension() != 0 {
            return Err(Error::Precondition("H must be finite".into()));
        }
        Ok((algebra(&self.k_minus)?, algebra(&self.k_plus)?))
    }
}

/// Checks the slope congruences, `H ⊂ K_±` on the generators of `H`, and
/// that `K_±/H` is a circle: `K_±` is one-dimensional with two components
/// and `H` meets the non-identity one.
pub fn validate_diagram(d: &GroupDiagram) -> Result<()> {
    let mut errors = Vec::new();
    let names = match d.kind {
        DiagramKind::PrincipalS3 => &["p_-", "p_+"][..],
        DiagramKind::PrincipalS3xS3 => &["p_-", "q_-", "p_+", "q_+"][..],
        _ => &[][..],
    };
    for (name, v) in names.iter().zip(&d.params) {
        if v.rem_euclid(4) != 1 {
            errors.push(format!("{name} = {v} is not 1 mod 4"));
        }
    }
    let n = d.factors();
    for (label, k) in [("K_-", &d.k_minus), ("K_+", &d.k_plus)] {
        if k.factors() != n {
            errors.push(format!(
                "{label} lives in {} factors, H in {n}",
                k.factors()
            ));
            continue;
        }
        if let Subgroup::PinType { reflection, .. } = k {
            if reflection.len() != n {
                errors.push(format!(
                    "{label} reflection has {} entries",
                    reflection.len()
                ));
                continue;
            }
        }
        match d.h.generators() {
            Some(gens) => {
                for g in gens.iter().filter(|g| !k.contains(g)) {
                    errors.push(format!("H generator {} is not in {label}", tuple_label(g)));
                }
                if k.dimension() != 1 {
                    errors.push(format!("{label} is not one-dimensional"));
                } else if !k.has_two_components() {
                    errors.push(format!("{label} is connected"));
                } else {
                    let meets =
                        d.h.elements()
                            .into_iter()
                            .flatten()
                            .any(|g| k.in_reflection_component(&g));
                    if !meets {
                        errors.push(format!(
                            "H misses the second component of {label}, so {label}/H is two circles"
                        ));
                    }
                }
            }
            None => errors.push("H must be finite".into()),
        }
    }
    if errors.is_empty() {
        Ok(())
    } else {
        Err(Error::Validation(errors))
    }
}

/// Freeness of the subgroup acting through all slots but the last: the
/// projection to the last `S^3` must be injective on `H` and on `K_±`.
pub fn check_principal_freeness(d: &GroupDiagram) -> bool {
    [&d.h, &d.k_minus, &d.k_plus]
        .iter()
        .all(|k| k.last_slot_injective())
}

fn tuple_label(g: &[QElem]) -> String {
    let parts: Vec<String> = g.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quaternion_table_matches_floats() {
        for a in QElem::all() {
            for b in QElem::all() {
                let exact = (a * b).to_quaternion();
                let float = a.to_quaternion() * b.to_quaternion();
                assert!(exact.distance_max(&float) < 1e-15, "{a} * {b}");
            }
            assert_eq!(a * a.inverse(), QElem::ONE);
        }
    }

    #[test]
    fn base_diagram_is_valid() {
        let d = GroupDiagram::s4_base();
        validate_diagram(&d).unwrap();
        assert_eq!(d.end_codimensions(), [2, 2]);
    }

    #[test]
    fn principal_five_one_is_valid_and_free() {
        let d = GroupDiagram::principal_s3(5, 1);
        validate_diagram(&d).unwrap();
        assert!(check_principal_freeness(&d));
    }

    #[test]
    fn slope_three_is_rejected() {
        let err = validate_diagram(&GroupDiagram::principal_s3(3, 1)).unwrap_err();
        let Error::Validation(list) = err else {
            panic!()
        };
        assert!(list.iter().any(|e| e.contains("p_- = 3")));
        assert!(list.iter().any(|e| e.contains("not in K_-")));
    }

    #[test]
    fn valid_families_are_free() {
        for p in (-23..=25).step_by(4) {
            for q in (-11..=13).step_by(4) {
                let d = GroupDiagram::principal_s3(p, q);
                validate_diagram(&d).unwrap();
                assert!(check_principal_freeness(&d));
                let d = GroupDiagram::principal_s3xs3(p, q, q, p);
                validate_diagram(&d).unwrap();
                assert!(check_principal_freeness(&d));
            }
        }
    }

    #[test]
    fn trivial_last_slot_is_not_free() {
        let k_minus = Subgroup::pin(Axis::I, vec![1, 0], vec![QElem::J, QElem::ONE]);
        let k_plus = Subgroup::pin(Axis::J, vec![1, 1], vec![QElem::I, QElem::I]);
        let d = GroupDiagram::custom(Subgroup::DiagonalQuaternion { factors: 2 }, k_minus, k_plus);
        assert!(!check_principal_freeness(&d));
    }

    #[test]
    fn end_algebras_are_circles() {
        let (km, kp) = GroupDiagram::principal_s3(5, 1).end_algebras().unwrap();
        assert_eq!(km.k_basis().len(), 1);
        assert_eq!(kp.p_basis().len(), 1);
        assert!(km.k_is_abelian());
    }
}
