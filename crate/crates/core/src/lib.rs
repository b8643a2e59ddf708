//! Exact computation of commutative post-Lie algebra (CPA) structures on
//! Lie algebras and on degree windows of infinite-dimensional graded Lie
//! algebras, over the rationals.

pub mod bilinear;
pub mod constructions;
pub mod cpa;
pub mod error;
pub mod format;
pub mod grading;
pub mod identities;
pub mod lie;
pub mod linalg;
pub mod poly;
pub mod structure;
pub mod theorems;

pub use bilinear::{BilinearMap, BilinearMapSpace, SpaceKind};
pub use constructions::{AlgebraWindow, CommutativeAlgebra, Extension};
pub use error::*;
pub use grading::{GradedLieAlgebra, Grading, GradingGroup};
pub use lie::{Cocycle2, LieAlgebra, LinearMap};
pub use linalg::{Matrix, Scalar};
pub use poly::{Monomial, PolyIdeal, Polynomial};
pub use structure::PartialAlgebra;
pub use cpa::{cpa_solve, cpa_solve_window, verify_cpa, CpaReport, SolveOptions, Verdict};
