//! Exact-arithmetic workbench for extensions of Leibniz algebras: validated
//! crossed systems, crossed products, the cohomologous equivalence with
//! explicit witnesses, and desk-scale classification over small prime fields
//! and the rationals.

pub mod algebra;
pub mod census;
pub mod classify;
pub mod crossed;
pub mod equiv;
pub mod error;
pub mod field;
pub mod io;
pub mod linalg;
pub mod sampling;

pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};

/// Default enumeration budget: searches touching more than this many
/// candidates refuse to run unless the caller raises the cap.
pub const DEFAULT_CAP: u64 = 1 << 24;
