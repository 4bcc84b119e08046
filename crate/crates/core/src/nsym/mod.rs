//! The free algebra NSym on generators `Λ_m`, the five families, and the
//! identity and formula checkers.

pub mod element;
pub mod families;
pub mod formulas;
pub mod identities;

pub use element::NSymElement;
pub use families::{compute_family, exp, log1p, AxiomResiduals, FamilyCombination, FamilyKind, FamilyTable, NcsfFamily};
pub use formulas::{
    binomial_identity_check, exp_phi_series, CmBasis, DLogBasis, Direction, ExpForm, ExpPhiSeries, InversionTable,
};
pub use identities::{verify_identity, IdentityId, IdentityReport};
