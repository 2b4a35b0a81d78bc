//! Exact dynamical zeta functions of toral endomorphisms.
//!
//! An integer matrix `M` acts on the torus `R^d / Z^d`. This crate computes
//! its Lefschetz zeta function (from the signed counts `det(1 - M^m)`) and
//! its Artin-Mazur zeta function (from the isolated fixed point counts
//! `|det(1 - M^m)|`) as reduced rational functions, along with the orbit
//! sign data, Euler product exponents, growth rate and spectral
//! classification. The [`oracle`] module holds independent brute-force
//! routes used to cross-check the main pipeline.
//!
//! ```
//! use toral_zeta::{zeta, IntMatrix};
//!
//! let cat = IntMatrix::from_i64(&[&[2, 1], &[1, 1]]);
//! let z = zeta::artin_mazur_zeta(&cat);
//! assert_eq!(z.to_string(), "(1 - 2 z + z^2) / (1 - 3 z + z^2)");
//! let counts = zeta::ZetaReport::compute(&cat, &Default::default()).unwrap().counts;
//! assert_eq!(counts[..4], [1.into(), 5.into(), 16.into(), 45.into()]);
//! ```

pub mod cli;
pub mod linalg;
pub mod oracle;

pub mod poly;
mod roots;
pub mod zeta;

pub use linalg::{IntMatrix, LinalgError};
pub use poly::{IntPoly, PolyError, RatFunc, RootRegion, Sign};
pub use zeta::{ClassificationReport, SignData, ZetaError, ZetaReport};
