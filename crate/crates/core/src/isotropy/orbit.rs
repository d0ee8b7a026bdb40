use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::bundle::ActionParams;
use crate::error::Result;

/// Isotropy types of an `SO(3)` action, ordered
/// `1 < Z_2 < Z_m < D_m < SO(2) < O(2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrbitType {
    Trivial,
    Z2,
    /// Cyclic of order `m >= 3`.
    Cyclic(u64),
    /// Dihedral of order `2m`, `m >= 2`.
    Dihedral(u64),
    SO2,
    O2,
}

impl OrbitType {
    /// Labels for the dihedral order `m`: `D_0` stands for both `SO(2)` and
    /// `O(2)`, and `D_1` is `Z_2`.
    pub fn from_dihedral(m: u64) -> Vec<OrbitType> {
        LiftedType::from_dihedral(m)
            .into_iter()
            .map(LiftedType::effective)
            .collect()
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, OrbitType::SO2 | OrbitType::O2)
    }
}

impl fmt::Display for OrbitType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitType::Trivial => f.write_str("1"),
            OrbitType::Z2 => f.write_str("Z2"),
            OrbitType::Cyclic(m) => write!(f, "Z{m}"),
            OrbitType::Dihedral(m) => write!(f, "D{m}"),
            OrbitType::SO2 => f.write_str("SO(2)"),
            OrbitType::O2 => f.write_str("O(2)"),
        }
    }
}

impl Serialize for OrbitType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Isotropy of the ineffective `S^3` action, before dividing by `±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LiftedType {
    /// `{±1}`.
    Center,
    /// `⟨i⟩`, cyclic of order 4.
    Z4,
    /// The quaternion group `{±1, ±i, ±j, ±k}`.
    Quaternion,
    /// Binary dihedral of order `4m`, `m >= 3`.
    BinaryDihedral(u64),
    /// The circle `e^{iθ}`.
    Circle,
    /// `e^{iθ} ∪ j e^{iθ}`.
    Pin2,
}

impl LiftedType {
    /// The preimage in `S^3` of the dihedral group with order parameter `m`.
    pub fn from_dihedral(m: u64) -> Vec<LiftedType> {
        match m {
            0 => vec![LiftedType::Circle, LiftedType::Pin2],
            1 => vec![LiftedType::Z4],
            2 => vec![LiftedType::Quaternion],
            m => vec![LiftedType::BinaryDihedral(m)],
        }
    }

    /// Image under `S^3 -> SO(3)`.
    pub fn effective(self) -> OrbitType {
        match self {
            LiftedType::Center => OrbitType::Trivial,
            LiftedType::Z4 => OrbitType::Z2,
            LiftedType::Quaternion => OrbitType::Dihedral(2),
            LiftedType::BinaryDihedral(m) => OrbitType::Dihedral(m),
            LiftedType::Circle => OrbitType::SO2,
            LiftedType::Pin2 => OrbitType::O2,
        }
    }

    /// Order in `S^3` (`None` for the infinite groups).
    pub fn order(self) -> Option<u64> {
        match self {
            LiftedType::Center => Some(2),
            LiftedType::Z4 => Some(4),
            LiftedType::Quaternion => Some(8),
            LiftedType::BinaryDihedral(m) => Some(4 * m),
            LiftedType::Circle | LiftedType::Pin2 => None,
        }
    }
}

impl fmt::Display for LiftedType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LiftedType::Center => f.write_str("±1"),
            LiftedType::Z4 => f.write_str("Z4"),
            LiftedType::Quaternion => f.write_str("Q8"),
            LiftedType::BinaryDihedral(m) => write!(f, "Dic{m}"),
            LiftedType::Circle => f.write_str("S1"),
            LiftedType::Pin2 => f.write_str("Pin(2)"),
        }
    }
}

impl Serialize for LiftedType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A set of orbit types, with the number of times each type arose among
/// the generating entries kept as metadata.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OrbitTypeSet {
    types: BTreeSet<OrbitType>,
    multiplicity: BTreeMap<OrbitType, u32>,
    lifted: BTreeSet<LiftedType>,
}

impl OrbitTypeSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert_lifted(&mut self, t: LiftedType) {
        self.lifted.insert(t);
        self.insert(t.effective());
    }

    pub fn insert(&mut self, t: OrbitType) {
        self.types.insert(t);
        *self.multiplicity.entry(t).or_insert(0) += 1;
    }

    pub fn insert_dihedral(&mut self, m: u64) {
        for t in LiftedType::from_dihedral(m) {
            self.insert_lifted(t);
        }
    }

    pub fn contains(&self, t: OrbitType) -> bool {
        self.types.contains(&t)
    }

    pub fn types(&self) -> &BTreeSet<OrbitType> {
        &self.types
    }

    pub fn multiplicity(&self, t: OrbitType) -> u32 {
        self.multiplicity.get(&t).copied().unwrap_or(0)
    }

    /// The `S^3` isotropy types these came from, where known.
    pub fn lifted(&self) -> &BTreeSet<LiftedType> {
        &self.lifted
    }

    pub fn labels(&self) -> Vec<String> {
        self.types.iter().map(ToString::to_string).collect()
    }

    /// Same orbit types, ignoring multiplicities.
    pub fn same_types(&self, other: &OrbitTypeSet) -> bool {
        self.types == other.types
    }
}

impl FromIterator<OrbitType> for OrbitTypeSet {
    fn from_iter<I: IntoIterator<Item = OrbitType>>(iter: I) -> Self {
        let mut s = OrbitTypeSet::new();
        for t in iter {
            s.insert(t);
        }
        s
    }
}

impl fmt::Display for OrbitTypeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels().join(", "))
    }
}

impl Serialize for OrbitTypeSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.types.iter())
    }
}

/// The four dihedral order parameters `|p_- ± q_-|/2`, `|p_+ ± q_+|/2`,
/// in the order `(p_- + q_-, p_- - q_-, p_+ + q_+, p_+ - q_+)`.
pub fn dihedral_orders(params: &ActionParams) -> Result<[u64; 4]> {
    let p = ActionParams::new(params.p_minus, params.q_minus, params.p_plus, params.q_plus)?;
    let half = |x: i128| -> u64 {
        debug_assert_eq!(x % 2, 0);
        u64::try_from(x.unsigned_abs() / 2).expect("half of an i64 sum fits")
    };
    let (pm, qm, pp, qp) = (
        i128::from(p.p_minus),
        i128::from(p.q_minus),
        i128::from(p.p_plus),
        i128::from(p.q_plus),
    );
    let orders = [half(pm + qm), half(pm - qm), half(pp + qp), half(pp - qp)];
    // sums are 2 mod 4 and differences 0 mod 4
    debug_assert!(orders[0] % 2 == 1 && orders[2] % 2 == 1);
    debug_assert!(orders[1] % 2 == 0 && orders[3] % 2 == 0);
    Ok(orders)
}

/// Orbit types of the `SO(3)` action on the `S^3` bundle with slopes
/// `(p_-, q_-, p_+, q_+)`: the principal type `1`, the exceptional `Z_2` and
/// `D_2`, and one dihedral type per order from [`dihedral_orders`].
pub fn orbit_types(params: &ActionParams) -> Result<OrbitTypeSet> {
    let orders = dihedral_orders(params)?;
    Ok(from_orders(&orders))
}

/// `{1, Z_2, D_2}` together with the dihedral types of `orders`.
pub fn from_orders(orders: &[u64]) -> OrbitTypeSet {
    let mut set = OrbitTypeSet::new();
    set.insert_lifted(LiftedType::Center);
    set.insert_lifted(LiftedType::Z4);
    set.insert_lifted(LiftedType::Quaternion);
    for &m in orders {
        set.insert_dihedral(m);
    }
    set
}

/// No `SO(2)` or `O(2)` isotropy.
pub fn is_almost_free(types: &OrbitTypeSet) -> bool {
    !types.types().iter().any(|t| t.is_infinite())
}

/// What the fixed-point-free disc criterion says about extending an
/// almost free action on `S^7` to `D^8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OliverVerdict {
    /// Almost free without `Z_3` or `D_3`: no extension to the disc.
    ExtensionExcluded,
    /// `Z_3` or `D_3` occurs, so the criterion says nothing.
    Inconclusive,
    /// The action has positive-dimensional isotropy.
    NotApplicable,
}

impl fmt::Display for OliverVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OliverVerdict::ExtensionExcluded => "extension_excluded",
            OliverVerdict::Inconclusive => "inconclusive",
            OliverVerdict::NotApplicable => "not_applicable",
        })
    }
}

/// Any fixed-point-free `SO(3)` action on `D^8` shows `Z_3` or `D_3` on the
/// boundary, and an almost free boundary action cannot extend with fixed
/// points.
pub fn oliver_obstruction(types: &OrbitTypeSet) -> OliverVerdict {
    if !is_almost_free(types) {
        OliverVerdict::NotApplicable
    } else if types.contains(OrbitType::Cyclic(3)) || types.contains(OrbitType::Dihedral(3)) {
        OliverVerdict::Inconclusive
    } else {
        OliverVerdict::ExtensionExcluded
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(labels: &[OrbitType]) -> BTreeSet<OrbitType> {
        labels.iter().copied().collect()
    }

    #[test]
    fn canonicalization() {
        assert_eq!(
            OrbitType::from_dihedral(0),
            vec![OrbitType::SO2, OrbitType::O2]
        );
        assert_eq!(OrbitType::from_dihedral(1), vec![OrbitType::Z2]);
        assert_eq!(OrbitType::from_dihedral(5), vec![OrbitType::Dihedral(5)]);
    }

    #[test]
    fn five_minus_three_example() {
        let p = ActionParams::new(5, -3, 1, 5).unwrap();
        assert_eq!(dihedral_orders(&p).unwrap(), [1, 4, 3, 2]);
        let t = orbit_types(&p).unwrap();
        use OrbitType::*;
        assert_eq!(
            *t.types(),
            set(&[Trivial, Z2, Dihedral(2), Dihedral(3), Dihedral(4)])
        );
        assert!(is_almost_free(&t));
        assert_eq!(oliver_obstruction(&t), OliverVerdict::Inconclusive);
        assert_eq!(t.multiplicity(Dihedral(2)), 2);
        assert_eq!(t.to_string(), "{1, Z2, D2, D3, D4}");
    }

    #[test]
    fn equal_slopes_are_not_almost_free() {
        let t = orbit_types(&ActionParams::new(9, 9, 9, 9).unwrap()).unwrap();
        assert!(t.contains(OrbitType::SO2) && t.contains(OrbitType::O2));
        assert!(!is_almost_free(&t));
        assert_eq!(oliver_obstruction(&t), OliverVerdict::NotApplicable);
    }

    #[test]
    fn lifted_labels_are_kept() {
        let t = orbit_types(&ActionParams::new(-3, 1, 1, 1).unwrap()).unwrap();
        assert!(t.lifted().contains(&LiftedType::Pin2));
        assert_eq!(LiftedType::BinaryDihedral(3).order(), Some(12));
    }

    #[test]
    fn cyclic_three_is_inconclusive() {
        let t: OrbitTypeSet = [OrbitType::Trivial, OrbitType::Cyclic(3)]
            .into_iter()
            .collect();
        assert_eq!(oliver_obstruction(&t), OliverVerdict::Inconclusive);
    }
}
