//! Exact symbolic verification engine for noncommutative spheres.
//!
//! The crate builds two families of deformed spheres: toric deformations
//! (a 4-sphere and a 7-sphere with phase commutation relations and a full
//! differential calculus) and symplectic quantum spheres derived from the
//! C-series R-matrix. On top of the rewriting layer it verifies instanton
//! projections, twisted Lie-algebra symmetries, Hodge self-duality,
//! quantum-group coactions, cyclic-homology Chern characters and the
//! integer index pairing.

pub mod cyclic;
pub mod hodge;
pub mod ncalg;
pub mod ncmatrix;
pub mod qrep;
pub mod qsympl;
pub mod report;
pub mod scalars;
pub mod theta;
pub mod twisted;
