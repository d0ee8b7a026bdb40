use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::Matrix3;

use crate::error::{Error, Result};

/// Tolerance on `|q|^2 - 1` accepted by the unit constructors.
pub const UNIT_TOLERANCE: f64 = 1e-12;

/// A real quaternion `w + x i + y j + z k`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    /// Builds a unit quaternion, rejecting inputs whose squared norm is not
    /// within [`UNIT_TOLERANCE`] of one.
    pub fn unit(w: f64, x: f64, y: f64, z: f64) -> Result<Self> {
        let q = Quaternion::new(w, x, y, z);
        q.require_unit()?;
        Ok(q)
    }

    /// Pure imaginary quaternion with the given `(i, j, k)` coordinates.
    pub const fn from_imag(v: [f64; 3]) -> Self {
        Quaternion::new(0.0, v[0], v[1], v[2])
    }

    /// `cos(theta) + sin(theta) * axis` for a unit imaginary `axis`.
    pub fn exp_imag(axis: Quaternion, theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Quaternion::new(c, s * axis.x, s * axis.y, s * axis.z)
    }

    pub fn imag(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn norm_sq(&self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn conj(&self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.norm_sq();
        (n > 0.0).then(|| self.conj() * (1.0 / n))
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::Normalization {
                norm_sq: self.norm_sq(),
            });
        }
        Ok(*self * (1.0 / n))
    }

    pub fn is_unit(&self) -> bool {
        (self.norm_sq() - 1.0).abs() <= UNIT_TOLERANCE
    }

    pub fn require_unit(&self) -> Result<()> {
        if self.is_unit() {
            Ok(())
        } else {
            Err(Error::Normalization {
                norm_sq: self.norm_sq(),
            })
        }
    }

    /// Largest coordinate difference.
    pub fn distance_max(&self, other: &Quaternion) -> f64 {
        (self.w - other.w)
            .abs()
            .max((self.x - other.x).abs())
            .max((self.y - other.y).abs())
            .max((self.z - other.z).abs())
    }

    /// `q v q^{-1}` for a unit quaternion acting on an imaginary vector.
    pub fn rotate(&self, v: [f64; 3]) -> [f64; 3] {
        (*self * Quaternion::from_imag(v) * self.conj()).imag()
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;

    fn mul(self, r: Quaternion) -> Quaternion {
        Quaternion::new(
            self.w * r.w - self.x * r.x - self.y * r.y - self.z * r.z,
            self.w * r.x + self.x * r.w + self.y * r.z - self.z * r.y,
            self.w * r.y - self.x * r.z + self.y * r.w + self.z * r.x,
            self.w * r.z + self.x * r.y - self.y * r.x + self.z * r.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;

    fn mul(self, s: f64) -> Quaternion {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;

    fn add(self, r: Quaternion) -> Quaternion {
        Quaternion::new(self.w + r.w, self.x + r.x, self.y + r.y, self.z + r.z)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;

    fn sub(self, r: Quaternion) -> Quaternion {
        Quaternion::new(self.w - r.w, self.x - r.x, self.y - r.y, self.z - r.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;

    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:+}i {:+}j {:+}k", self.w, self.x, self.y, self.z)
    }
}

/// The two-fold cover `S^3 -> SO(3)`: the matrix of `v -> q v q^{-1}` on the
/// imaginary quaternions in the basis `(i, j, k)`.
///
/// A unit quaternion at angle `theta` from `1` maps to the rotation by
/// `2 theta` about its imaginary part; `q` and `-q` have the same image.
pub fn double_cover(q: &Quaternion) -> Result<Matrix3<f64>> {
    q.require_unit()?;
    let Quaternion { w, x, y, z } = *q;
    Ok(Matrix3::new(
        1.0 - 2.0 * (y * y + z * z),
        2.0 * (x * y - w * z),
        2.0 * (x * z + w * y),
        2.0 * (x * y + w * z),
        1.0 - 2.0 * (x * x + z * z),
        2.0 * (y * z - w * x),
        2.0 * (x * z - w * y),
        2.0 * (y * z + w * x),
        1.0 - 2.0 * (x * x + y * y),
    ))
}
