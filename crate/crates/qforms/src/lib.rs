//! Exact computer algebra for a braided coordinate algebra of points on the
//! quantum line, the U_q(gl(2))-action on it, quantum binary n-forms and
//! their invariants.
//!
//! Everything is computed over the exact scalar field Q(s) with s^2 = q, so
//! all identity checks are exact; there is no floating-point mode.

pub mod action;
pub mod error;
pub mod forms;
pub mod pbw;
pub mod polar;
pub mod scalar;
pub mod solve;
pub mod symbolic;
pub mod vzero;

pub use action::{bracket, bracket_power, Generator};
pub use error::{Error, Result};
pub use pbw::{Element, Index, Letter, LetterKind, PBWMonomial, Word};
pub use scalar::{LaurentPoly, Rat, Scalar};
