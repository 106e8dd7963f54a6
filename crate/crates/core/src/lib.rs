//! Exact series solutions of A-hypergeometric (GKZ) systems.
//!
//! Given an integer matrix `A` and a parameter `beta`, the crate computes the
//! toric ideal of `A`, regular triangulations and their parameter
//! stratifications, fake exponents, canonical logarithmic series with exact
//! Gaussian-rational coefficients, Horn series, and the homogenization of
//! confluent configurations. Indices are 0-based throughout.
//!
//! ```text
//! lattice, linalg, number   exact integer and rational linear algebra
//! toric, groebner           I_A, weight Gröbner bases, standard pairs
//! triangulation, strata     regular triangulations, resonance arrangement
//! series, solver            mixed series, canonical series, evaluation
//! horn                      Horn recurrences, dehomogenization
//! homogenize                rho(A), lifted parameters, restriction x_0 = 1
//! json, cli                 job documents and the `gkz` command
//! ```

pub mod cli;
pub mod error;
pub mod groebner;
pub mod homogenize;
pub mod horn;
pub mod json;
pub mod lattice;
pub mod linalg;
pub mod number;
pub mod series;
pub mod solver;
pub mod strata;
pub mod toric;
pub mod triangulation;
