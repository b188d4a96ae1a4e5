//! Separation of manifolds by codimension-one simplicial maps, computed
//! over GF(2) and checked against a combinatorial component count.

pub mod analysis;
pub mod catalog;
pub mod complex;
pub mod diagram;
pub mod duality;
pub mod error;
pub mod gf2;
pub mod homology;
pub mod intmatrix;
pub mod io;
pub mod obstruction;
pub mod selftest;
pub mod separation;
pub mod simmap;

pub use analysis::{analyze, AnalysisReport};
pub use complex::{SimplicialComplex, Subcomplex};
pub use error::{Error, Result};
pub use simmap::SimplicialMap;
