use thiserror::Error;

/// Errors raised by the arithmetic, map and parsing layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("incompatible truncation orders: t^{left} vs t^{right}")]
    TruncationMismatch { left: u32, right: u32 },

    #[error("cannot substitute k := 1 + t into a scalar that already contains t")]
    DoubleSubstitution,

    #[error("q must be invertible, got q = 0")]
    NonInvertibleQ,

    #[error("expected a map of kind {expected}, got {found}")]
    WrongMapKind {
        expected: &'static str,
        found: &'static str,
    },

    #[error("a sigma-derivation needs an endomorphism as its twist")]
    InvalidTwist,

    #[error("element still depends on {0}; deformation inputs must be free of k and t")]
    UnsubstitutedParameter(&'static str),

    #[error("twisting map does not commute with {map} (first failure at y^{degree})")]
    NonCommuting { map: &'static str, degree: u32 },

    #[error("deformation requires the twisting map y -> k*y with symbolic k")]
    UnsupportedTwist,

    #[error("unknown check `{0}`")]
    UnknownCheck(String),

    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),

    #[error("parse error at position {pos}: {message}")]
    Parse { pos: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
