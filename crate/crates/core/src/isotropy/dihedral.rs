use std::collections::HashSet;
use std::f64::consts::PI;

use nalgebra::Matrix3;
use serde::Serialize;

use super::orbit::{LiftedType, OrbitType};
use crate::bundle::BundleParams;
use crate::error::{Error, Result};
use crate::quat_lie::{double_cover, Quaternion};

/// `⟨e^{2πi/p}, j⟩ ⊂ S^3`, of order `4|p|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BinaryDihedral {
    pub p: i64,
    pub generators: [String; 2],
    pub order: u64,
    pub lifted: LiftedType,
    /// The image in `SO(3)`.
    pub image: OrbitType,
}

impl BinaryDihedral {
    pub fn new(p: i64) -> Result<Self> {
        if p == 0 {
            return Err(Error::Precondition(
                "p = 0 gives a circle, not a finite group".into(),
            ));
        }
        let m = p.unsigned_abs();
        let rotation = if m == 1 {
            "1".to_string()
        } else {
            format!("e^{{2πi/{m}}}")
        };
        let lifted = match m {
            1 => LiftedType::Z4,
            2 => LiftedType::Quaternion,
            m => LiftedType::BinaryDihedral(m),
        };
        Ok(BinaryDihedral {
            p,
            generators: [rotation, "j".into()],
            order: 4 * m,
            lifted,
            image: lifted.effective(),
        })
    }
}

/// The isotropy groups `⟨e^{2πi/p_-}, j⟩` and `⟨e^{2πi/p_+}, j⟩` of the
/// `S^3` action on the total space of the principal bundle.
pub fn binary_dihedral_lift(p: &BundleParams) -> Result<[BinaryDihedral; 2]> {
    let p = BundleParams::new(p.p_minus, p.p_plus)?;
    Ok([
        BinaryDihedral::new(p.p_minus)?,
        BinaryDihedral::new(p.p_plus)?,
    ])
}

/// Group orders found by generating `⟨e^{2πi/p}, j⟩` in floating point
/// and pushing it through `S^3 → SO(3)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ImageCount {
    pub lift_order: usize,
    pub image_order: usize,
    /// Elements of order two in the image.
    pub involutions: usize,
}

const KEY_SCALE: f64 = 1e8;

fn quat_key(q: &Quaternion) -> [i64; 4] {
    [q.w, q.x, q.y, q.z].map(|c| (c * KEY_SCALE).round() as i64)
}

fn matrix_key(m: &Matrix3<f64>) -> Vec<i64> {
    m.iter().map(|c| (c * KEY_SCALE).round() as i64).collect()
}

/// Closure of the generators under multiplication. Limited to
/// `|p| <= 2000`.
pub fn count_image(p: i64) -> Result<ImageCount> {
    if p == 0 || p.unsigned_abs() > 2000 {
        return Err(Error::Precondition(format!(
            "count_image needs 0 < |p| <= 2000, got {p}"
        )));
    }
    let gens = [
        Quaternion::exp_imag(Quaternion::I, 2.0 * PI / p as f64),
        Quaternion::J,
    ];
    let mut seen = HashSet::from([quat_key(&Quaternion::ONE)]);
    let mut elements = vec![Quaternion::ONE];
    let mut frontier = vec![Quaternion::ONE];
    while let Some(q) = frontier.pop() {
        for g in &gens {
            let next = q * *g;
            if seen.insert(quat_key(&next)) {
                elements.push(next);
                frontier.push(next);
            }
        }
    }
    let mut image = HashSet::new();
    let mut involutions = 0;
    let id = Matrix3::identity();
    for q in &elements {
        let m = double_cover(q)?;
        if image.insert(matrix_key(&m))
            && (m - id).abs().max() > 1e-6
            && (m * m - id).abs().max() < 1e-6
        {
            involutions += 1;
        }
    }
    Ok(ImageCount {
        lift_order: elements.len(),
        image_order: image.len(),
        involutions,
    })
}

/// Involutions of the dihedral group of order `2m` (`m` reflections and,
/// for even `m`, the half turn); `Z_2` for `m = 1`.
pub fn dihedral_involutions(m: u64) -> u64 {
    if m == 1 {
        1
    } else {
        m + u64::from(m % 2 == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_minus_three() {
        let [a, b] = binary_dihedral_lift(&BundleParams::new(5, -3).unwrap()).unwrap();
        assert_eq!(a.generators[0], "e^{2πi/5}");
        assert_eq!(b.generators[0], "e^{2πi/3}");
        assert_eq!((a.order, b.order), (20, 12));
        assert_eq!(a.image, OrbitType::Dihedral(5));
    }

    #[test]
    fn slope_one_degenerates() {
        let [a, b] = binary_dihedral_lift(&BundleParams::new(1, 1).unwrap()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.order, 4);
        assert_eq!(a.image, OrbitType::Z2);
    }

    #[test]
    fn numeric_images_are_dihedral() {
        for p in [1i64, -3, 5, -7, 9, 13, -15, 21] {
            let c = count_image(p).unwrap();
            let m = p.unsigned_abs();
            assert_eq!(c.lift_order as u64, 4 * m);
            assert_eq!(c.image_order as u64, 2 * m);
            assert_eq!(c.involutions as u64, dihedral_involutions(m));
        }
    }

    #[test]
    fn invalid_params_are_rejected() {
        assert!(binary_dihedral_lift(&BundleParams {
            p_minus: 3,
            p_plus: 1
        })
        .is_err());
    }
}
