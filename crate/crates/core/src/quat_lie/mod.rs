//! Quaternions, the double cover `S^3 -> SO(3)` and the Lie algebra
//! `su(2)^n` with its reductive splits.

mod algebra;
mod quaternion;
mod split;

pub use algebra::{bracket, Axis, LieAlgebraElement, Su2Sum};
pub use quaternion::{double_cover, Quaternion, UNIT_TOLERANCE};
pub use split::{split_projections, ReductiveSplit, CLOSURE_TOLERANCE, ORTHONORMAL_TOLERANCE};
