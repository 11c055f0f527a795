//! Relative cohomology, detecting subalgebras and rank varieties for the
//! classical Lie superalgebras, computed in exact arithmetic.
//!
//! The crate is organised bottom-up:
//!
//! - [`linalg`]: sparse rational matrices, fraction-free and modular elimination
//! - [`algebra`]: structure-constant superalgebras for the matrix families
//! - [`weights`]: ρ, atypicality, defect, superdimension
//! - [`invariants`]: `S(g₁*)^{G₀}` degree by degree, restriction to Cartan subspaces
//! - [`detecting`]: generic points, centralizers, the subalgebras 𝔣 and 𝔢
//! - [`module`]: supermodules, rank-one projectivity, rank varieties
//! - [`cohomology`]: the relative cochain complex and support varieties

pub mod algebra;
pub mod cohomology;
pub mod detecting;
pub mod invariants;
pub mod json;
pub mod linalg;
pub mod module;
pub mod poly;
pub mod rng;
pub mod tables;
pub mod weights;

pub use algebra::{Family, LieSuperalgebra};
pub use linalg::{Rational, SparseMatrix};
