//! Exact arithmetic for q-Fibonacci polynomials and a harness that checks
//! identities among them as zero residuals.

pub mod error;
pub mod golden;
pub mod harness;
pub mod matrix;
pub mod poly;
pub mod qcomb;
pub mod quad;
pub mod sequences;

pub use error::{HarnessError, MatrixError, PolyError};
pub use poly::{Monomial, Point, Poly, Var};
