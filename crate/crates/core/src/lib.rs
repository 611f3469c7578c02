//! Exact computations with periodic P-fractions and periodic generalized Jacobi
//! matrices: expansion, monodromy, spectrum, m-functions, reconstruction from a
//! monodromy matrix and realization of `(√R - U)/V` through the polynomial
//! Pell–Abel equations.
//!
//! All algebra is over `ℚ`; irrational couplings `b_j = √β_j` only ever appear
//! as a symbolic scale `1/√D`.

pub mod cli;
pub mod error;
pub mod exactpoly;
pub mod gjm;
pub mod monodromy;
pub mod pellabel;
pub mod pfrac;
pub mod spectral;

pub use error::{Error, Result};
pub use exactpoly::{Poly, Rat, ScaledMatrixPoly, ScaledPoly, SeriesAtInfinity};
pub use gjm::PeriodData;
pub use monodromy::{AlgebraicForm, PellCertificate};
pub use pfrac::{PStep, Tail, Terminal};
