pub mod algebra;
pub mod denominators;
pub mod dot;
pub mod error;
pub mod modules;
pub mod qpoch;
pub mod quiver;
pub mod repetition;
pub mod roots;
pub mod scan;

pub use error::{AlgebraError, Error, Result};
