use std::sync::Arc;

use num_traits::One;

use super::hom::ConvolutionAlgebra;
use crate::algebra::{Algebra, Coalgebra};
use crate::error::{Error, Result};
use crate::linalg::scalar::{sign, Scalar};
use crate::linalg::{GradedSpace, LinMap, Vector};
use crate::slinf::{InfMorphism, Multilinear};

/// Components of `hom_r(1, x)`: the arity-`n` map sends
/// `f_1 ⊗ … ⊗ f_n` to `x ∘ F ∘ proj_n ∘ Δ_C`. The source is `hom(C, A)` with
/// `A` the cogenerators of `bar`, the target `hom(C, A′)` with `A′` the
/// target of `x`.
pub fn hom_r_components(c: &Coalgebra, bar: &Coalgebra, x: &LinMap, bound: usize) -> Result<Vec<Multilinear>> {
    let words = bar.words().ok_or_else(|| Error::Invalid("x must be defined on a bar construction".into()))?;
    if **x.source() != **bar.space() {
        return Err(Error::Shape("x is not defined on this bar construction".into()));
    }
    if c.coradical_length() > words.weight_bound() {
        return Err(Error::TruncationOverflow { weight: c.coradical_length(), bound: words.weight_bound() });
    }
    let a = words.generators();
    let nc = c.dim();
    let col = c.cooperad().collection();
    let mut by_op: std::collections::HashMap<(usize, usize), Vec<usize>> = Default::default();
    for w in 0..bar.dim() {
        if !x.column(w).is_zero() {
            let (n, mu, _) = words.word(w);
            by_op.entry((*n, *mu)).or_default().push(w);
        }
    }
    let mut out: Vec<Multilinear> = (1..=bound).map(|n| Multilinear::new(n, x.degree())).collect();
    for cx in 0..nc {
        for t in c.delta(cx) {
            let (n, mu) = t.op;
            if n > bound {
                continue;
            }
            let Some(list) = by_op.get(&(n, mu)) else { continue };
            for &w in list {
                let gens = &words.word(w).2;
                let mut e = 0i64;
                let mut passed = col.degree(n, mu);
                let mut key = Vec::with_capacity(n);
                for (i, &g) in gens.iter().enumerate() {
                    let ci = t.inputs[i];
                    e += (a.degree(g) - c.space().degree(ci)) * passed;
                    passed += c.space().degree(ci);
                    key.push(g * nc + ci);
                }
                let value: Vector = x.column(w).iter().map(|(b, k)| (b * nc + cx, k.clone())).collect();
                out[n - 1].add_at(key, &value, &(&t.coeff * sign(e)));
            }
        }
    }
    Ok(out)
}

/// Components of `hom_ℓ(y, 1)`: the arity-`n` map sends `f_1 ⊗ … ⊗ f_n` to
/// `γ_A ∘ F ∘ proj_n ∘ y`, from `hom(C, A)` to `hom(C′, A)` where `C` is
/// generated by `cobar` and `C′` is the source of `y`; `F` passing `y`
/// contributes `(−1)^{|F||y|}`.
///
/// For a truncated free `A` some products leave the truncation. They are an
/// error unless `interior_only`, in which case only input tuples of total
/// weight within the truncation are tabulated.
pub fn hom_l_components(
    cobar: &Algebra,
    a: &Algebra,
    y: &LinMap,
    bound: usize,
    interior_only: bool,
) -> Result<Vec<Multilinear>> {
    let words = cobar.words().ok_or_else(|| Error::Invalid("y must take values in a cobar construction".into()))?;
    if **y.target() != **cobar.space() {
        return Err(Error::Shape("y does not take values in this cobar construction".into()));
    }
    let cgen = words.generators();
    let nc = cgen.dim();
    let ncp = y.source().dim();
    let col = cobar.operad().collection();
    let weight_of = |x: usize| a.words().map(|w| w.weight(x)).unwrap_or(1);
    let budget = a.words().map(|w| w.weight_bound()).unwrap_or(usize::MAX);
    let mut out: Vec<Multilinear> = (1..=bound).map(|n| Multilinear::new(n, y.degree())).collect();
    for cp in 0..ncp {
        for (w, k) in y.column(cp).iter() {
            let (n, p, gens) = words.word(w);
            if *n > bound {
                continue;
            }
            if !interior_only && a.words().is_some() && *n > 1 {
                let top = (0..a.dim()).map(weight_of).max().unwrap_or(0);
                if top * n > budget {
                    return Err(Error::TruncationOverflow { weight: top * n, bound: budget });
                }
            }
            let mut tuples = Vec::new();
            budget_tuples(a.dim(), *n, budget, &weight_of, &mut Vec::new(), &mut tuples);
            for tuple in tuples {
                let value = a.gamma_basis(*n, *p, &tuple)?;
                if value.is_zero() {
                    continue;
                }
                let mut e = 0i64;
                let mut passed = col.degree(*n, *p);
                let mut key = Vec::with_capacity(*n);
                for (i, &ai) in tuple.iter().enumerate() {
                    let ci = gens[i];
                    e += (a.space().degree(ai) - cgen.degree(ci)) * (passed + y.degree());
                    passed += cgen.degree(ci);
                    key.push(ai * nc + ci);
                }
                let value: Vector = value.iter().map(|(b, x)| (b * ncp + cp, x.clone())).collect();
                out[n - 1].add_at(key, &value, &(k * sign(e)));
            }
        }
    }
    Ok(out)
}

fn budget_tuples(
    dim: usize,
    k: usize,
    budget: usize,
    weight_of: &impl Fn(usize) -> usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    let rest = k - cur.len() - 1;
    for x in 0..dim {
        let w = weight_of(x);
        if w + rest > budget {
            continue;
        }
        cur.push(x);
        budget_tuples(dim, k, budget - w, weight_of, cur, out);
        cur.pop();
    }
}

/// `hom_r(1, Ψ): hom^α(C, A) ⇝ hom^α(C, A′)`.
pub fn hom_r(source: &ConvolutionAlgebra, target: &ConvolutionAlgebra, bar: &Coalgebra, psi: &LinMap) -> Result<InfMorphism> {
    if psi.degree() != 0 {
        return Err(Error::Degree("∞-morphisms come from degree-0 elements".into()));
    }
    let bound = source.family().bound().min(target.family().bound());
    let comps = hom_r_components(source.coalgebra(), bar, psi, bound)?;
    InfMorphism::new(source.family().clone(), target.family().clone(), comps)
}

/// `hom_ℓ(Φ, 1): hom^α(C, A) ⇝ hom^α(C′, A)`; over a truncated free `A`
/// only input tuples whose products stay inside the truncation are tabulated.
pub fn hom_l(source: &ConvolutionAlgebra, target: &ConvolutionAlgebra, cobar: &Algebra, phi: &LinMap) -> Result<InfMorphism> {
    if phi.degree() != 0 {
        return Err(Error::Degree("∞-morphisms come from degree-0 elements".into()));
    }
    let bound = source.family().bound().min(target.family().bound());
    let comps = hom_l_components(cobar, source.algebra(), phi, bound, true)?;
    InfMorphism::new(source.family().clone(), target.family().clone(), comps)
}

/// `f ↦ g ∘ f` from `hom(C, A)` to `hom(C, A′)` as an arity-1 table.
pub fn postcompose_table(c: &GradedSpace, g: &LinMap) -> Multilinear {
    let nc = c.dim();
    let mut t = Multilinear::new(1, g.degree());
    for a in 0..g.source().dim() {
        for x in 0..nc {
            let v: Vector = g.column(a).iter().map(|(b, k)| (b * nc + x, k.clone())).collect();
            t.add_at(vec![a * nc + x], &v, &Scalar::one());
        }
    }
    t
}

/// `f ↦ f ∘ φ` from `hom(C, A)` to `hom(C′, A)` as an arity-1 table.
pub fn precompose_table(a: &GradedSpace, phi: &LinMap) -> Multilinear {
    let nc = phi.target().dim();
    let ncp = phi.source().dim();
    let mut t = Multilinear::new(1, phi.degree());
    for (x, cp, k) in phi.entries() {
        for ai in 0..a.dim() {
            t.add_at(vec![ai * nc + x], &Vector::term(ai * ncp + cp, k.clone()), &Scalar::one());
        }
    }
    t
}

fn strict_from_table(source: &ConvolutionAlgebra, target: &ConvolutionAlgebra, t: Multilinear) -> Result<InfMorphism> {
    let bound = source.family().bound().min(target.family().bound());
    let mut comps = vec![t];
    comps.extend((2..=bound).map(|n| Multilinear::new(n, 0)));
    InfMorphism::new(Arc::clone(source.family()), Arc::clone(target.family()), comps)
}

/// `hom^α(1, g)` for a strict algebra morphism `g: A → A′`.
pub fn postcompose(source: &ConvolutionAlgebra, target: &ConvolutionAlgebra, g: &LinMap) -> Result<InfMorphism> {
    strict_from_table(source, target, postcompose_table(source.coalgebra().space(), g))
}

/// `hom^α(φ, 1)` for a strict coalgebra morphism `φ: C′ → C`.
pub fn precompose(source: &ConvolutionAlgebra, target: &ConvolutionAlgebra, phi: &LinMap) -> Result<InfMorphism> {
    strict_from_table(source, target, precompose_table(source.algebra().space(), phi))
}
