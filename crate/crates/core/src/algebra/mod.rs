//! Exact arithmetic: rationals, polynomials, rational functions in `q` and
//! in the spectral parameter `z`, and sparse linear algebra over them.

pub mod field;
pub mod frac;
pub mod laurent;
pub mod matrix;
pub mod poly;

pub use field::{rat, Field, Q};
pub use frac::{Frac, PolyZ, RatFunc, RatFuncZ};
pub use laurent::LaurentPoly;
pub use matrix::{lcm_denominators, solve_nullspace, Echelon, SparseMatrix};
pub use poly::Poly;
