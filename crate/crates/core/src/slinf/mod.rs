//! Shifted homotopy Lie (and planar A∞-style) bracket families, their
//! Maurer–Cartan elements, ∞-morphisms and gauge paths.

mod family;
mod jacobi;
mod morphism;
mod path;
mod table;

pub use family::{BracketFamily, MCElement, Mode};
pub use jacobi::{check_generalized_jacobi, unshuffles, JacobiArity, JacobiReport};
pub use morphism::{compose_inf, InfMorphism};
pub use path::{is_gauge_witness, PathElement, Polynomial};
pub use table::Multilinear;

pub(crate) use jacobi::insertion_sum;
