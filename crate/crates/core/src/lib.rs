//! Exact Hochschild (co)homology and noncommutative differential calculus
//! for finite-dimensional hom-associative algebras over the rationals.

pub mod algebra;
pub mod bv;
pub mod cli;
pub mod chain;
pub mod cochain;
pub mod error;
pub mod fixtures;
pub mod homology;
pub mod io;
pub mod linalg;
pub mod rng;
pub mod scalar;
pub mod tensor;
pub mod verifier;

pub use algebra::{Bimodule, Coefficients, HomAlgebra, SymmetricStructure, ValidationReport};
pub use chain::Chain;
pub use cochain::{Cochain, DualCochain};
pub use error::{Error, Result};
pub use linalg::{Matrix, Vector};
pub use scalar::Scalar;
