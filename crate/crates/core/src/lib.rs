//! Exact noncommutative symmetric functions and their differential-operator
//! specializations attached to formal maps `F_t(z) = z − tH(z)`.
//!
//! The crate is layered bottom-up:
//!
//! * [`compositions`]: compositions, refinements and coefficient functionals;
//! * [`nsym`]: the free algebra on `Λ_1, Λ_2, ...`, the five families and the
//!   change-of-basis identities;
//! * [`series`]: truncated power series in `z` and `t`, composition and a
//!   fixed-point inverse;
//! * [`diffops`]: differential operators and the operator system of a field `H`;
//! * [`inversion`]: inversion, Taylor, D-Log, BCH, flow and `C_m` formulas;
//! * [`jacobian`]: nilpotent-Jacobian experiments;
//! * [`corpus`]: seeded random fields for cross-checks.

pub mod compositions;
pub mod corpus;
pub mod diffops;
pub mod nsym;
pub mod error;
pub mod inversion;
pub mod jacobian;
pub mod par;
pub mod rational;
pub mod series;

pub use error::{Error, Result};
