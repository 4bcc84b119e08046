use thiserror::Error;

use crate::compositions::Composition;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{fine} is not a refinement of {coarse}")]
    NotARefinement { fine: Composition, coarse: Composition },

    #[error("operation is undefined on the empty composition")]
    EmptyComposition,

    #[error("weight/truncation cap mismatch: {left} vs {right}")]
    CapMismatch { left: usize, right: usize },

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("component {component} is not a t-adic contraction of the identity")]
    NotTAdicContraction { component: usize },

    #[error("order {order} exceeds truncation cap {cap}")]
    OrderExceedsCap { order: usize, cap: usize },

    #[error("BCH depth {0} is too large (at most 6 is supported)")]
    DepthTooLarge(usize),

    #[error("bad dimensions: {0}")]
    BadDimensions(String),

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("field input must be free of t (component {component} has a term of t-order {tpow})")]
    FieldDependsOnT { component: usize, tpow: usize },

    #[error("invalid rational `{0}`")]
    InvalidRational(String),

    #[error("exponent {0} exceeds the supported range")]
    ExponentOverflow(u64),

    #[error("C_m recursion disagrees with (JH)^(m-1) H at m = {0}")]
    InconsistentIteratedField(usize),
}
