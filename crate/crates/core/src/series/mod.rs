//! Truncated formal power series in commutative `z_1..z_n` and a central `t`.
//!
//! The only truncation is the `t`-order; polynomial inputs keep every slice
//! finite in `z`.

mod monomial;
mod multiseries;
mod poly;
mod polymap;

pub use monomial::{render_monomial, Monomial};
pub use multiseries::MultiSeries;
pub use poly::Poly;
pub use polymap::{field_to_json, forward_map, invert_oracle, parse_field, series_to_json, MapRole, PolyMap};
