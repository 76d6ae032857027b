//! Vertex-weighted simplicial complexes, their Laplacians, spectra and spectral bounds.
//!
//! Operators are assembled exactly over the rationals; only eigensolving is
//! done in floating point, with a cyclic Jacobi solver.

pub mod bounds;
pub mod complex;
pub mod constructions;
pub mod error;
pub mod homology;
pub mod io;
pub mod matrix;
pub mod operators;
pub mod rational;
pub mod spectra;
pub mod verify;
pub mod weighted;

pub use bounds::BoundReport;
pub use complex::{Complex, Face};
pub use error::{Error, Result};
pub use homology::BettiVector;
pub use matrix::{DMatrix, QMatrix};
pub use operators::OperatorMatrix;
pub use rational::Rational;
pub use spectra::{Spectrum, SumSet};
pub use verify::CheckResult;
pub use weighted::WeightedComplex;
