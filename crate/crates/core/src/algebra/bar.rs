use std::sync::Arc;

use super::algebra::Algebra;
use super::coalgebra::{induced_differential, Coalgebra};
use super::morphism::free_extension;
use super::words::WordBasis;
use crate::error::{Error, Result};
use crate::linalg::scalar::sign;
use crate::linalg::{LinMap, Vector};
use crate::operad::TwistingMorphism;

/// Bar construction `B_α A`: the cofree 𝒞-coalgebra on `A` truncated at
/// weight `weight`, with differential `d₁ + d₂`.
///
/// `d₂(μ ⊗ a_1 ⊗ … ⊗ a_n) = Σ_{Δ_(1)μ = μ₁ ∘_i μ₂} (−1)^{|μ₁| + (|μ₂|−1)(|a_1|+…+|a_{i−1}|)}
///   μ₁ ⊗ a_1 ⊗ … ⊗ γ_A(α(μ₂); a_i, …) ⊗ … ⊗ a_n`.
pub fn bar(alpha: &TwistingMorphism, a: &Algebra, weight: usize) -> Result<Coalgebra> {
    let co = alpha.cooperad();
    if !Arc::ptr_eq(alpha.operad(), a.operad()) && alpha.operad().collection() != a.operad().collection() {
        return Err(Error::Invalid("algebra is over a different operad".into()));
    }
    let words = WordBasis::new(co.collection(), a.space().clone(), weight)?;
    let d1 = induced_differential(co, &words, |v| a.differential(v))?;
    let col = co.collection();
    let mut cols = Vec::with_capacity(words.space().dim());
    for b in 0..words.space().dim() {
        let (n, mu, gens) = words.word(b).clone();
        let mut out = d1.column(b).clone();
        for t in co.infinitesimal(n, mu)? {
            let (n1, m1) = t.left;
            let (n2, m2) = t.right;
            let img = alpha.apply_basis(n2, m2)?;
            if img.is_zero() {
                continue;
            }
            let i = t.position - 1;
            let before = words.gen_degree(&gens[..i]);
            let s = sign(col.degree(n1, m1) + (col.degree(n2, m2) - 1) * before);
            let args: Vec<Vector> = gens[i..i + n2].iter().map(|&g| Vector::basis(g)).collect();
            let refs: Vec<&Vector> = args.iter().collect();
            let value = a.gamma(n2, img, &refs)?;
            for (v, x) in value.iter() {
                let mut g = gens[..i].to_vec();
                g.push(v);
                g.extend_from_slice(&gens[i + n2..]);
                out.add_term(words.find(n1, m1, &g)?, x * &t.coeff * &s);
            }
        }
        cols.push(out);
    }
    let d = LinMap::new(words.space().clone(), words.space().clone(), -1, cols)?;
    let name = format!("B({})", a.name());
    Coalgebra::cofree_with_differential(name, co.clone(), words, d)
}

/// Cobar construction `Ω_α C`: the free 𝒫-algebra on `C` truncated at weight
/// `weight`, with `d(id ⊗ c) = id ⊗ d_C c − Σ_{Δ_C c} α(μ) ⊗ c_1 ⊗ … ⊗ c_k`.
pub fn cobar(alpha: &TwistingMorphism, c: &Coalgebra, weight: usize) -> Result<Algebra> {
    let op = alpha.operad();
    if !Arc::ptr_eq(alpha.cooperad(), c.cooperad()) && alpha.cooperad().collection() != c.cooperad().collection() {
        return Err(Error::Invalid("coalgebra is over a different cooperad".into()));
    }
    let words = WordBasis::new(op.collection(), c.space().clone(), weight)?;
    let mut gen_diff = Vec::with_capacity(c.dim());
    for x in 0..c.dim() {
        let mut out = Vector::zero();
        for (y, k) in c.differential().apply(&Vector::basis(x)).iter() {
            out.add_term(words.generator(y), k.clone());
        }
        for t in c.delta(x) {
            let img = alpha.apply_basis(t.op.0, t.op.1)?;
            for (q, k) in img.iter() {
                out.add_term(words.find(t.op.0, q, &t.inputs)?, -(k * &t.coeff));
            }
        }
        gen_diff.push(out);
    }
    let name = format!("Ω({})", c.name());
    Algebra::free_with_generator_differential(name, op.clone(), words, gen_diff)
}

/// Universal projection `B_α A → A` onto weight-one words.
pub fn bar_projection(b: &Coalgebra, a: &Algebra) -> Result<LinMap> {
    let words = b.words().ok_or_else(|| Error::Invalid("not a bar construction".into()))?;
    let cols = (0..b.dim())
        .map(|w| {
            let (n, _, gens) = words.word(w);
            if *n == 1 {
                Vector::basis(gens[0])
            } else {
                Vector::zero()
            }
        })
        .collect();
    LinMap::new(b.space().clone(), a.space().clone(), 0, cols)
}

/// Counit `ε_A: Ω_α B_α A → A`, the algebra map extending the universal
/// projection on generators.
pub fn counit_epsilon(rectified: &Algebra, b: &Coalgebra, a: &Algebra) -> Result<LinMap> {
    let pi = bar_projection(b, a)?;
    free_extension(rectified, a, &pi)
}
