//! Convolution algebras `hom^α(C, A)`, the actions of ∞_α-morphisms on
//! them, and the identities relating these actions.

mod action;
mod bijection;
mod compose;
mod hom;
mod decomposition;
mod strictness;

pub use action::{
    hom_l, hom_l_components, hom_r, hom_r_components, postcompose, postcompose_table, precompose,
    precompose_table,
};
pub use bijection::{alg_morphism_to_mc, coalg_morphism_to_mc, mc_to_alg_morphism, mc_to_coalg_morphism};
pub use compose::{equalizer_check, mc_residual_map, rectify, ActionSetup, EqualizerReport, Order};
pub use hom::{build_convolution, hom_space, ConvolutionAlgebra};
pub use decomposition::{check_decomposition_identity, check_decomposition_identity_on_maps, IdentityReport};
pub use strictness::{check_strictness_l, check_strictness_r, StrictnessReport};
