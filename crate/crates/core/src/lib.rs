//! Exact construction and verification of bialgebroids and Hopf algebroids over the
//! rationals: depth-two extensions, smash-product algebroids, the Connes-Moscovici
//! bialgebroid, and the Weyl algebra example.

pub mod algebra;
pub mod bialgebroid;
pub mod constructions;
pub mod d2;
pub mod error;
pub mod hopf;
pub mod instances;
pub mod linalg;
pub mod report;
pub mod suite;
pub mod tensor;
pub mod weyl;

pub use error::{Error, Result};
pub use report::Report;
