//! Curve models over finite fields: their function fields, places,
//! valuations, local expansions, residues, divisors, Riemann-Roch spaces
//! and zeta data.

pub mod divisor;
pub mod func;
pub mod local;
pub mod model;
pub mod place;
pub mod rr;
pub mod zeta;

pub use divisor::Divisor;
pub use func::{Differential, FuncElem};
pub use model::{CurveModel, ModelKind};
pub use place::{FiberKind, Place};
pub use rr::{basis_of_space, express_in_basis, solve_jets, JetCondition};
