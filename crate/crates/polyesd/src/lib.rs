//! polyesd: a numerical laboratory for the empirical spectral distribution of
//! random complex matrix polynomials.
//!
//! Random degree-k polynomials with n×n coefficient matrices are linearized
//! through their block companion form; pooled eigenvalue clouds are compared
//! against closed-form limit laws (radial density, radial CDF, logarithmic
//! potential) under several coefficient weight schemes.

pub mod harness;
pub mod linalg;
pub mod matpoly;
pub mod measure;
pub mod randgen;
pub mod theory;
pub mod validate;

pub use linalg::ComplexMatrix;
pub use matpoly::{MatrixPolynomial, WeightScheme};
pub use measure::{EmpiricalMeasure, FitReport};
pub use randgen::{CoefficientDistribution, SeedSpec};
pub use theory::LimitDensity;
