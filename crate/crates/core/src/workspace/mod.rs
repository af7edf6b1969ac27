//! JSON workspace files: named spaces, operads, cooperads, twisting
//! morphisms, algebras, coalgebras and maps, with scalars written `"p/q"`.

mod build;
mod builtin;
mod document;
mod setup;

pub use build::Workspace;
pub use builtin::{builtin, builtin_names};
pub use document::*;
