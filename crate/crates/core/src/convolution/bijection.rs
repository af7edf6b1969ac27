use crate::algebra::{
    bar_projection, check_algebra_morphism, check_chain_map, check_coalgebra_morphism, cofree_lift,
    free_extension, Algebra, Coalgebra,
};
use crate::error::{Error, Result};
use crate::linalg::{LinMap, Vector};

use super::hom::ConvolutionAlgebra;

fn require_mc(h: &ConvolutionAlgebra, f: &Vector) -> Result<()> {
    let r = h.family().mc_residual(f)?;
    if !r.is_zero() {
        return Err(Error::NotMaurerCartan(r.render(h.space())));
    }
    Ok(())
}

/// `f ↦ (1_𝒞 ∘ f)Δ_C: C → B_α A`, asserted to be a chain map and a
/// coalgebra morphism.
pub fn mc_to_coalg_morphism(h: &ConvolutionAlgebra, f: &Vector, bar: &Coalgebra) -> Result<LinMap> {
    require_mc(h, f)?;
    let c = h.coalgebra();
    let g = cofree_lift(c, bar, &h.to_map(f, 0)?)?;
    check_chain_map(&g, |x| Ok(c.differential().apply(&Vector::basis(x))), |v| Ok(bar.differential().apply(v)), |_| true)?;
    check_coalgebra_morphism(&g, c, bar)?;
    Ok(g)
}

/// `g ↦ proj ∘ g`.
pub fn coalg_morphism_to_mc(h: &ConvolutionAlgebra, g: &LinMap, bar: &Coalgebra) -> Result<Vector> {
    let proj = bar_projection(bar, h.algebra())?;
    h.from_map(&proj.compose(g)?)
}

/// `f ↦` the algebra map `Ω_α C → A` extending `f` on generators,
/// asserted to be a chain map on the truncation interior and an algebra
/// morphism.
pub fn mc_to_alg_morphism(h: &ConvolutionAlgebra, f: &Vector, cobar: &Algebra) -> Result<LinMap> {
    require_mc(h, f)?;
    let words = cobar.words().ok_or_else(|| Error::Invalid("not a cobar construction".into()))?;
    if **words.generators() != **h.coalgebra().space() {
        return Err(Error::Shape("cobar construction on a different coalgebra".into()));
    }
    let a = h.algebra();
    let g = free_extension(cobar, a, &h.to_map(f, 0)?)?;
    check_chain_map(&g, |x| cobar.differential(x), |v| a.apply_differential(v), |x| cobar.in_interior(x))?;
    check_algebra_morphism(&g, cobar, a)?;
    Ok(g)
}

/// `g ↦ g` restricted to the generators `id ⊗ c`.
pub fn alg_morphism_to_mc(h: &ConvolutionAlgebra, g: &LinMap, cobar: &Algebra) -> Result<Vector> {
    let words = cobar.words().ok_or_else(|| Error::Invalid("not a cobar construction".into()))?;
    let cols = (0..h.coalgebra().dim()).map(|c| g.column(words.generator(c)).clone()).collect();
    let f = LinMap::new(h.coalgebra().space().clone(), h.algebra().space().clone(), 0, cols)?;
    h.from_map(&f)
}
