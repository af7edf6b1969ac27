use super::algebra::Algebra;
use super::coalgebra::{add_to, Coalgebra, CompositeElement};
use crate::error::{Error, Result};
use crate::linalg::scalar::sign;
use crate::linalg::tensor::for_each_product;
use crate::linalg::{LinMap, Vector};

/// The algebra map out of a free algebra determined by `g` on generators:
/// `p ⊗ v_1 ⊗ … ⊗ v_k ↦ γ(p; g(v_1), …, g(v_k))`.
pub fn free_extension(free: &Algebra, target: &Algebra, g: &LinMap) -> Result<LinMap> {
    let words = free.words().ok_or_else(|| Error::Invalid("source is not free".into()))?;
    if g.degree() != 0 {
        return Err(Error::Degree("algebra maps have degree 0".into()));
    }
    let mut cols = Vec::with_capacity(free.dim());
    for w in 0..free.dim() {
        let (n, p, gens) = words.word(w);
        let args: Vec<&Vector> = gens.iter().map(|&v| g.column(v)).collect();
        cols.push(target.gamma(*n, &Vector::basis(*p), &args)?);
    }
    LinMap::new(free.space().clone(), target.space().clone(), 0, cols)
}

/// The map into a cofree coalgebra determined by `g` on cogenerators:
/// `c ↦ Σ_{Δ_C c} μ ⊗ g(c_1) ⊗ … ⊗ g(c_k)`.
pub fn cofree_lift(source: &Coalgebra, cofree: &Coalgebra, g: &LinMap) -> Result<LinMap> {
    let words = cofree.words().ok_or_else(|| Error::Invalid("target is not cofree".into()))?;
    if g.degree() != 0 {
        return Err(Error::Degree("coalgebra maps have degree 0".into()));
    }
    let mut cols = Vec::with_capacity(source.dim());
    for c in 0..source.dim() {
        let mut out = Vector::zero();
        for t in source.delta(c) {
            let s = &t.coeff;
            let images: Vec<&Vector> = t.inputs.iter().map(|&x| g.column(x)).collect();
            let mut err = None;
            for_each_product(&images, |idx, x| {
                if err.is_some() {
                    return;
                }
                match words.find(t.op.0, t.op.1, idx) {
                    Ok(w) => out.add_term(w, x * s),
                    Err(e) => err = Some(e),
                }
            });
            if let Some(e) = err {
                return Err(e);
            }
        }
        cols.push(out);
    }
    LinMap::new(source.space().clone(), cofree.space().clone(), 0, cols)
}

/// `f ∘ d_S = d_T ∘ f` on every basis element where both sides are defined.
pub fn check_chain_map(
    f: &LinMap,
    d_source: impl Fn(usize) -> Result<Vector>,
    d_target: impl Fn(&Vector) -> Result<Vector>,
    in_domain: impl Fn(usize) -> bool,
) -> Result<()> {
    for x in 0..f.source().dim() {
        if !in_domain(x) {
            continue;
        }
        let dx = match d_source(x) {
            Ok(v) => v,
            Err(Error::TruncationOverflow { .. }) => continue,
            Err(e) => return Err(e),
        };
        let lhs = f.apply(&dx);
        let rhs = match d_target(f.column(x)) {
            Ok(v) => v,
            Err(Error::TruncationOverflow { .. }) => continue,
            Err(e) => return Err(e),
        };
        let rhs = rhs.scaled(&sign(f.degree()));
        if lhs != rhs {
            return Err(Error::Axiom(format!("not a chain map at {}", f.source().symbol(x))));
        }
    }
    Ok(())
}

/// `Δ_D f = (1 ∘ f) Δ_C` for a degree-0 map `f: C → D`.
pub fn check_coalgebra_morphism(f: &LinMap, source: &Coalgebra, target: &Coalgebra) -> Result<()> {
    for c in 0..source.dim() {
        let lhs = target.apply_delta(f.column(c));
        let mut rhs = CompositeElement::new();
        for t in source.delta(c) {
            let images: Vec<&Vector> = t.inputs.iter().map(|&x| f.column(x)).collect();
            for_each_product(&images, |idx, x| {
                add_to(&mut rhs, (t.op, idx.to_vec()), x * &t.coeff);
            });
        }
        if lhs != rhs {
            return Err(Error::Axiom(format!(
                "not a coalgebra morphism at {}",
                source.space().symbol(c)
            )));
        }
    }
    Ok(())
}

/// `f γ(p; x_1, …, x_k) = γ(p; f x_1, …, f x_k)` for degree-0 `f`, on all
/// basis tuples; for free sources only tuples of total weight within the
/// truncation are visited.
pub fn check_algebra_morphism(f: &LinMap, source: &Algebra, target: &Algebra) -> Result<()> {
    let op = source.operad();
    let col = op.collection();
    let weight_of = |x: usize| source.words().map(|w| w.weight(x)).unwrap_or(1);
    let budget = source.words().map(|w| w.weight_bound()).unwrap_or(usize::MAX);
    for k in 2..=op.bound() {
        for p in 0..col.space(k)?.dim() {
            let mut tuple = Vec::with_capacity(k);
            visit_tuples(source.dim(), k, budget, &weight_of, &mut tuple, &mut |args| {
                let lhs = f.apply(&source.gamma_basis(k, p, args)?);
                let imgs: Vec<&Vector> = args.iter().map(|&x| f.column(x)).collect();
                let rhs = target.gamma(k, &Vector::basis(p), &imgs)?;
                if lhs != rhs {
                    return Err(Error::Axiom(format!(
                        "not an algebra morphism at {}({})",
                        col.symbol(k, p),
                        args.iter().map(|&x| source.space().symbol(x)).collect::<Vec<_>>().join(", ")
                    )));
                }
                Ok(())
            })?;
        }
    }
    Ok(())
}

fn visit_tuples(
    dim: usize,
    k: usize,
    budget: usize,
    weight_of: &impl Fn(usize) -> usize,
    tuple: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    if tuple.len() == k {
        return f(tuple);
    }
    let remaining = k - tuple.len() - 1;
    for x in 0..dim {
        let w = weight_of(x);
        if w + remaining > budget {
            continue;
        }
        tuple.push(x);
        visit_tuples(dim, k, budget - w, weight_of, tuple, f)?;
        tuple.pop();
    }
    Ok(())
}
