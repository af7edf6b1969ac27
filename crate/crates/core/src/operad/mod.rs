//! Non-symmetric operads and cooperads by structure constants, twisting
//! morphisms and the convolution pre-Lie product.

mod axioms;
pub mod collection;
pub mod cooperad;
#[allow(clippy::module_inception)]
pub mod operad;
pub mod twisting;

pub use collection::{NsCollection, IDENTITY};
pub use cooperad::{co_symbol, Cooperad, DecompTerm, TreeTerm};
pub use operad::{as_symbol, CompositionRule, Operad};
pub use twisting::{convolution_star, hom_differential, is_twisting_morphism, ArityMap, ArityResidual, TwistingMorphism, TwistingReport};
