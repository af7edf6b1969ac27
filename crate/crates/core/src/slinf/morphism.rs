use std::collections::BTreeMap;
use std::sync::Arc;

use super::family::{BracketFamily, Mode};
use super::jacobi::insertion_sum;
use super::table::Multilinear;
use crate::error::{Error, Result};
use crate::linalg::scalar::one;
use crate::linalg::tensor::{compositions, set_partitions};
use crate::linalg::{GradedSpace, LinMap, Vector};

/// `Σ_k Σ ± outer_k(inner_{n_1} ⊗ … ⊗ inner_{n_k})` in arity `n`: over
/// consecutive blocks (planar) or set partitions ordered by least element
/// with Koszul signs (symmetric).
pub(crate) fn blockwise_sum(
    mode: Mode,
    outer: &[Multilinear],
    inner: &[Multilinear],
    n: usize,
    src: &GradedSpace,
    degree: i64,
) -> Multilinear {
    let mut total = Multilinear::new(n, degree);
    let one = one();
    for k in 1..=n.min(outer.len()) {
        let o = &outer[k - 1];
        if o.is_zero() {
            continue;
        }
        match mode {
            Mode::Planar => {
                for sizes in compositions(n, k) {
                    let Some(parts) = blocks(inner, &sizes) else { continue };
                    total.add_assign(&Multilinear::compose_blocks(o, &parts, src), &one);
                }
            }
            Mode::Symmetric => {
                let mut by_sizes: BTreeMap<Vec<usize>, Vec<Vec<usize>>> = BTreeMap::new();
                for partition in set_partitions(n, k) {
                    let sizes = partition.iter().map(|b| b.len()).collect();
                    by_sizes.entry(sizes).or_default().push(partition.concat());
                }
                for (sizes, perms) in by_sizes {
                    let Some(parts) = blocks(inner, &sizes) else { continue };
                    let composed = Multilinear::compose_blocks(o, &parts, src);
                    total.add_assign(&Multilinear::scatter(&composed, &perms, src), &one);
                }
            }
        }
    }
    total
}

fn blocks<'a>(inner: &'a [Multilinear], sizes: &[usize]) -> Option<Vec<&'a Multilinear>> {
    sizes.iter().map(|&s| inner.get(s - 1).filter(|m| !m.is_zero())).collect()
}

/// A family `θ_n: g^{⊗n} → h` of degree-0 maps.
#[derive(Clone, Debug)]
pub struct InfMorphism {
    source: Arc<BracketFamily>,
    target: Arc<BracketFamily>,
    components: Vec<Multilinear>,
}

impl InfMorphism {
    /// `components[n-1]` is `θ_n`; the ∞-morphism equations are not checked.
    pub fn new(source: Arc<BracketFamily>, target: Arc<BracketFamily>, components: Vec<Multilinear>) -> Result<Self> {
        if source.mode() != target.mode() {
            return Err(Error::Invalid("source and target use different modes".into()));
        }
        for (i, t) in components.iter().enumerate() {
            if t.arity() != i + 1 || t.degree() != 0 {
                return Err(Error::Shape(format!("θ_{} must have arity {} and degree 0", i + 1, i + 1)));
            }
            for (key, v) in t.entries() {
                if key.iter().any(|&x| x >= source.space().dim()) || v.support().any(|b| b >= target.space().dim()) {
                    return Err(Error::Shape(format!("θ_{} entry out of range", i + 1)));
                }
                let d: i64 = key.iter().map(|&x| source.space().degree(x)).sum();
                if v.support().any(|b| target.space().degree(b) != d) {
                    return Err(Error::Degree(format!("θ_{} entry of wrong degree", i + 1)));
                }
            }
        }
        Ok(InfMorphism { source, target, components })
    }

    /// `θ_1 = f`, higher components zero.
    pub fn strict(source: Arc<BracketFamily>, target: Arc<BracketFamily>, f: &LinMap, bound: usize) -> Result<Self> {
        if f.degree() != 0 || **f.source() != **source.space() || **f.target() != **target.space() {
            return Err(Error::Shape("a strict morphism is a degree-0 map between the carriers".into()));
        }
        let mut t1 = Multilinear::new(1, 0);
        for x in 0..f.source().dim() {
            t1.add_at(vec![x], f.column(x), &one());
        }
        let mut components = vec![t1];
        components.extend((2..=bound).map(|n| Multilinear::new(n, 0)));
        InfMorphism::new(source, target, components)
    }

    pub fn identity(g: Arc<BracketFamily>) -> Result<Self> {
        let id = LinMap::identity(g.space().clone());
        let bound = g.bound();
        InfMorphism::strict(g.clone(), g, &id, bound)
    }

    pub fn source(&self) -> &Arc<BracketFamily> {
        &self.source
    }

    pub fn target(&self) -> &Arc<BracketFamily> {
        &self.target
    }

    pub fn bound(&self) -> usize {
        self.components.len()
    }

    pub fn component(&self, n: usize) -> Result<&Multilinear> {
        if n == 0 || n > self.bound() {
            return Err(Error::ArityBound { arity: n, bound: self.bound() });
        }
        Ok(&self.components[n - 1])
    }

    pub fn components(&self) -> &[Multilinear] {
        &self.components
    }

    fn arity_limit(&self) -> usize {
        self.bound().min(self.source.bound()).min(self.target.bound())
    }

    /// `Σ ± θ_p(…, ℓ_q(…), …) − Σ ± ℓ^h_k(θ_{n_1}(…), …, θ_{n_k}(…))` in
    /// arity `n`: the arity-`n` part of the chain-map condition on the
    /// truncated bar coalgebras.
    pub fn defect(&self, n: usize) -> Multilinear {
        let mode = self.source.mode();
        let src = self.source.space();
        let lhs = insertion_sum(mode, &self.components, self.source.brackets(), n, src, -1);
        let rhs = blockwise_sum(mode, self.target.brackets(), &self.components, n, src, -1);
        lhs.sub(&rhs)
    }

    /// First arity with a nonzero defect, with the offending tuple.
    pub fn first_violation(&self) -> Option<(usize, Vec<usize>, Vector)> {
        (1..=self.arity_limit()).find_map(|n| {
            let d = self.defect(n);
            d.entries().first().map(|(k, v)| (n, (*k).clone(), (*v).clone()))
        })
    }

    pub fn is_valid(&self) -> bool {
        self.first_violation().is_none()
    }

    /// `Σ_n c_n θ_n(x, …, x)`, asserted to be Maurer–Cartan in the target.
    pub fn mc_push(&self, x: &Vector) -> Result<Vector> {
        let src_mc = self.source.mc_residual(x)?;
        if !src_mc.is_zero() {
            return Err(Error::NotMaurerCartan(src_mc.render(self.source.space())));
        }
        let out = self.push_candidate(x)?;
        let r = self.target.mc_residual(&out)?;
        if !r.is_zero() {
            return Err(Error::NotMaurerCartan(format!("pushed element has residual {}", r.render(self.target.space()))));
        }
        Ok(out)
    }

    /// `Σ_n c_n θ_n(x, …, x)` without any Maurer–Cartan check.
    pub fn push_candidate(&self, x: &Vector) -> Result<Vector> {
        let length = self.source.filtration_length().max(self.target.filtration_length());
        let mut out = Vector::zero();
        for n in 1..=self.bound() {
            let term = self.components[n - 1].eval(&vec![x; n]);
            if term.is_zero() {
                continue;
            }
            if n > length {
                return Err(Error::Divergence(format!("θ_{n}(x, …, x) ≠ 0 beyond the filtration length")));
            }
            out.add_scaled(&term, &self.source.mc_coefficient(n));
        }
        Ok(out)
    }

    /// Entry-wise equality of the components up to the common bound.
    pub fn same_family(&self, other: &InfMorphism) -> bool {
        let n = self.bound().max(other.bound());
        (1..=n).all(|k| {
            let empty = Multilinear::new(k, 0);
            let a = self.components.get(k - 1).unwrap_or(&empty);
            let b = other.components.get(k - 1).unwrap_or(&empty);
            a == b
        })
    }
}

/// `Θ′ ∘ Θ`: `(Θ′∘Θ)_n = Σ ± θ′_k(θ_{n_1} ⊗ … ⊗ θ_{n_k})`.
pub fn compose_inf(outer: &InfMorphism, inner: &InfMorphism) -> Result<InfMorphism> {
    if **outer.source.space() != **inner.target.space() {
        return Err(Error::Shape("target of the first morphism is not the source of the second".into()));
    }
    let bound = outer.bound().min(inner.bound());
    let src = inner.source.space();
    let components = (1..=bound)
        .map(|n| blockwise_sum(inner.source.mode(), &outer.components, &inner.components, n, src, 0))
        .collect();
    InfMorphism::new(inner.source.clone(), outer.target.clone(), components)
}
