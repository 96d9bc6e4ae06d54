//! Exact octonion arithmetic and a workbench for nonsingular bilinear maps.
//!
//! The crate is organized bottom-up:
//!
//! - [`algebra`]: the Cayley–Dickson tower R ⊂ C ⊂ H ⊂ K over exact rationals.
//! - [`maps`]: the catalog of explicit bilinear maps and their tensors.
//! - [`restriction`]: coordinate-subspace restriction and image-span compression.
//! - [`verify`]: fuzzing, exact rank certificates, kernel search and the
//!   floating-point margin estimator.
//! - [`bounds`]: admissibility, `r#s` upper bounds and section counts.
//! - [`cli`]: the `octobil` command-line front end.

pub mod algebra;
pub mod bounds;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod maps;
pub mod restriction;
pub mod scalar;
pub mod verify;

pub use algebra::{Element, Level};
pub use error::{Error, Result};
pub use maps::{builtin, BilinearMap, Construction, Tensor};
pub use scalar::Scalar;
