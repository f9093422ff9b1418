//! Exact polyhedral cones and the cones of divisors ample in codimension `k`
//! on blow-ups of projective space.

pub mod blowup;
pub mod cone;
pub mod error;
pub mod picard;
pub mod toric;

pub use error::{Error, Result};
