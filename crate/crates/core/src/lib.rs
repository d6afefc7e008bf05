//! Exact evaluation of abelian gauge-theoretic Gromov-Witten invariants of
//! quot problems on curves and of full Seiberg-Witten invariants of ruled
//! surfaces, with an independent Segre-class route and a normalizer for the
//! slant-product algebra.

pub mod check;
pub mod cli;
pub mod error;
pub mod exterior;
pub mod grid;
pub mod index;
pub mod invariants;
pub mod pic_oracle;
pub mod slant;

pub use error::{Error, Result};
