//! Differential operators on `t`-free polynomials and the operator system
//! attached to `F_t = z − tH`.

pub mod operator;
pub mod system;

pub use operator::DiffOperator;
pub use system::{
    apply_derivation, apply_with_table, default_test_space, iterated_fields, iterated_fields_closed, jacobian,
    AxiomReport, OperatorSystem,
};
