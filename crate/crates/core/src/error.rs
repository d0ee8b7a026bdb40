use thiserror::Error;

/// Errors raised by the geometry and arithmetic engines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    Dimension { expected: usize, found: usize },

    #[error("quaternion is not a unit: |q|^2 = {norm_sq}")]
    Normalization { norm_sq: f64 },

    #[error("invalid basis: {0}")]
    Basis(String),

    #[error("invalid parameter {name} = {value}: {reason}")]
    Parameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("degenerate plane: Gram determinant {gram} below {tolerance}")]
    DegeneratePlane { gram: f64, tolerance: f64 },

    #[error("vector is not in the {subspace} component (residual {residual:e})")]
    NotInSubspace {
        subspace: &'static str,
        residual: f64,
    },

    #[error("no finite matching time for a = {a}: the plateau f^2 = a r^2/(a-1) requires a > 1")]
    NoFiniteMatching { a: f64 },

    #[error("profile construction failed: {0}")]
    Construction(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("{value} is not congruent to 1 mod 4 ({name})")]
    NotOneModFour { name: &'static str, value: i64 },

    #[error("validation failed: {}", .0.join("; "))]
    Validation(Vec<String>),

    #[error("k = 0 has infinitely many solutions; a bound is required")]
    UnboundedFamily,

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("out of regime: {0}")]
    OutOfRegime(String),

    #[error("unknown kind: {0}")]
    UnknownKind(String),
}

impl Error {
    /// True for errors describing inputs that violate a structural constraint,
    /// as opposed to a numerical failure.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::Dimension { .. }
                | Error::Normalization { .. }
                | Error::Basis(_)
                | Error::Parameter { .. }
                | Error::NotInSubspace { .. }
                | Error::NoFiniteMatching { .. }
                | Error::Precondition(_)
                | Error::NotOneModFour { .. }
                | Error::Validation(_)
                | Error::UnboundedFamily
                | Error::OutOfRegime(_)
                | Error::UnknownKind(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
