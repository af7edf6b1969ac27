//! Algebras over operads, conilpotent coalgebras over cooperads, and the
//! free, cofree, bar and cobar constructions with weight truncation.

#[allow(clippy::module_inception)]
pub mod algebra;
pub mod bar;
pub mod coalgebra;
pub mod morphism;
pub mod words;

pub use algebra::{Algebra, ProductRule};
pub use bar::{bar, bar_projection, cobar, counit_epsilon};
pub use coalgebra::{CoTerm, Coalgebra, CompositeElement};
pub use morphism::{check_algebra_morphism, check_chain_map, check_coalgebra_morphism, cofree_lift, free_extension};
pub use words::{Word, WordBasis};
