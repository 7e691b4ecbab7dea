//! Finite-dimensional modules over quantum affine algebras of types `A` and
//! `D`, their R-matrices and the fusion construction.

pub mod fusion;
pub mod module;
pub mod reps;
pub mod rmatrix;

pub use module::{ModuleData, Twist, Weight};
pub use reps::{spin_rep, vector_rep, wedge_rep};
pub use fusion::{fusion_report, Fusion, FusionReport};
pub use rmatrix::{check_ybe_vector, extract_denominator, is_intertwiner, rnorm_vector, solve_intertwiner};
