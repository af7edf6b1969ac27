//! Exact rational graded linear algebra.

pub mod map;
pub mod scalar;
pub mod space;
pub mod tensor;

pub use map::{Differential, LinMap};
pub use scalar::Scalar;
pub use space::{Element, GradedSpace, Vector};
