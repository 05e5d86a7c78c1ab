//! Exact computation in the Thompson-like groups `Q_n`, their ambient groups
//! `Gamma_n`, and the Higman-Thompson groups `F_n`.
//!
//! All group elements are piecewise-linear homeomorphisms with rational
//! breakpoints. Maps act on the right, so `x·(fg) = (x·f)·g`.

pub mod error;
pub mod exact;
pub mod gammaq;
pub mod plmap;
pub mod thompson;

pub use error::{Error, Result};
pub use exact::Rational;
