use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::{Algebra, Coalgebra};
use crate::error::{Error, Result};
use crate::linalg::scalar::{sign, Scalar};
use crate::linalg::tensor::MultiIndex;
use crate::linalg::{GradedSpace, LinMap, Vector};
use crate::operad::TwistingMorphism;
use crate::slinf::{BracketFamily, Mode, Multilinear};

/// `hom^α(C, A)` with its planar bracket family. The carrier has basis
/// `a←c`, the map sending `c` to `a` and every other basis element to 0.
#[derive(Clone, Debug)]
pub struct ConvolutionAlgebra {
    alpha: Arc<TwistingMorphism>,
    coalgebra: Arc<Coalgebra>,
    algebra: Arc<Algebra>,
    family: Arc<BracketFamily>,
}

/// Basis of `hom(C, A)`: index `a · dim C + c`.
pub fn hom_space(c: &GradedSpace, a: &GradedSpace) -> GradedSpace {
    let mut basis = Vec::with_capacity(c.dim() * a.dim());
    for (_, sa, da) in a.basis() {
        for (_, sc, dc) in c.basis() {
            basis.push((format!("{sa}←{sc}"), da - dc));
        }
    }
    GradedSpace::new(basis).expect("distinct symbols")
}

/// `ℓ_n(f_1, …, f_n) = γ_A(α ⊗ F) Δ_C^n` tabulated on basis maps, with
/// `ℓ_1 = ∂ + γ_A(α ⊗ f) Δ_C^1`.
pub fn build_convolution(
    alpha: Arc<TwistingMorphism>,
    c: Arc<Coalgebra>,
    a: Arc<Algebra>,
) -> Result<ConvolutionAlgebra> {
    if alpha.cooperad().collection() != c.cooperad().collection() {
        return Err(Error::Invalid("coalgebra is not over the cooperad of α".into()));
    }
    if alpha.operad().collection() != a.operad().collection() {
        return Err(Error::Invalid("algebra is not over the operad of α".into()));
    }
    let space = Arc::new(hom_space(c.space(), a.space()));
    let nc = c.dim();
    let idx = |a: usize, c: usize| a * nc + c;
    let bound = alpha.bound();
    let mut brackets: Vec<Multilinear> = (1..=bound).map(|n| Multilinear::new(n, -1)).collect();
    let one = Scalar::one();

    for x in 0..nc {
        for ai in 0..a.dim() {
            let f = idx(ai, x);
            let fdeg = space.degree(f);
            let mut v = Vector::zero();
            for (b, k) in a.differential(ai)?.iter() {
                v.add_term(idx(b, x), k.clone());
            }
            // −(−1)^{|f|} f ∘ d_C
            for y in 0..nc {
                let k = c.differential().map().entry(x, y);
                if !k.is_zero() {
                    v.add_term(idx(ai, y), -(k * sign(fdeg)));
                }
            }
            brackets[0].add_at(vec![f], &v, &one);
        }
    }

    let cdeg = |x: usize| c.space().degree(x);
    let col = c.cooperad().collection().clone();
    for x in 0..nc {
        for t in c.delta(x) {
            let (n, mu) = t.op;
            if n > bound {
                continue;
            }
            let img = alpha.apply_basis(n, mu)?;
            if img.is_zero() {
                continue;
            }
            for tuple in MultiIndex::new(vec![a.dim(); n]) {
                let args: Vec<Vector> = tuple.iter().map(|&b| Vector::basis(b)).collect();
                let refs: Vec<&Vector> = args.iter().collect();
                let value = a.gamma(n, img, &refs)?;
                if value.is_zero() {
                    continue;
                }
                let mut e = 0i64;
                let mut passed = col.degree(n, mu);
                let mut key = Vec::with_capacity(n);
                for (i, &ai) in tuple.iter().enumerate() {
                    let ci = t.inputs[i];
                    let fdeg = a.space().degree(ai) - cdeg(ci);
                    e += fdeg * passed;
                    passed += cdeg(ci);
                    key.push(idx(ai, ci));
                }
                let mut out = Vector::zero();
                for (b, k) in value.iter() {
                    out.add_term(idx(b, x), k.clone());
                }
                brackets[n - 1].add_at(key, &out, &(&t.coeff * sign(e)));
            }
        }
    }

    let weights = (0..a.dim()).flat_map(|_| (0..nc).map(|x| c.level(x))).collect();
    let family = BracketFamily::new(space, Mode::Planar, brackets, weights, c.coradical_length())?;
    Ok(ConvolutionAlgebra { alpha, coalgebra: c, algebra: a, family: Arc::new(family) })
}

impl ConvolutionAlgebra {
    pub fn alpha(&self) -> &Arc<TwistingMorphism> {
        &self.alpha
    }

    pub fn coalgebra(&self) -> &Arc<Coalgebra> {
        &self.coalgebra
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn family(&self) -> &Arc<BracketFamily> {
        &self.family
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        self.family.space()
    }

    pub fn index(&self, a: usize, c: usize) -> usize {
        a * self.coalgebra.dim() + c
    }

    /// `(a, c)` for the basis map `a←c`.
    pub fn pair(&self, f: usize) -> (usize, usize) {
        (f / self.coalgebra.dim(), f % self.coalgebra.dim())
    }

    /// Coordinates of a linear map `C → A`.
    pub fn from_map(&self, f: &LinMap) -> Result<Vector> {
        if **f.source() != **self.coalgebra.space() || **f.target() != **self.algebra.space() {
            return Err(Error::Shape("map is not in hom(C, A)".into()));
        }
        let mut v = Vector::zero();
        for (i, j, k) in f.entries() {
            v.add_term(self.index(i, j), k.clone());
        }
        Ok(v)
    }

    /// The homogeneous map of degree `degree` with the given coordinates.
    pub fn to_map(&self, v: &Vector, degree: i64) -> Result<LinMap> {
        let mut cols = vec![Vector::zero(); self.coalgebra.dim()];
        for (f, k) in v.iter() {
            let (a, c) = self.pair(f);
            cols[c].add_term(a, k.clone());
        }
        LinMap::new(self.coalgebra.space().clone(), self.algebra.space().clone(), degree, cols)
    }

    pub fn symmetric_family(&self) -> Result<BracketFamily> {
        self.family.symmetrize_family()
    }
}

/// `ℓ_k(a_1←c_1, …, a_k←c_k)` evaluated straight from the formula, for a
/// tuple of basis maps given as `(a, c)` pairs; `ℓ_1` includes `∂`.
pub fn bracket_on_basis(alpha: &TwistingMorphism, c: &Coalgebra, a: &Algebra, maps: &[(usize, usize)]) -> Result<Vector> {
    let k = maps.len();
    let nc = c.dim();
    let col = c.cooperad().collection();
    let mut out = Vector::zero();
    if k == 1 {
        let (ai, ci) = maps[0];
        let fdeg = a.space().degree(ai) - c.space().degree(ci);
        for (b, x) in a.differential(ai)?.iter() {
            out.add_term(b * nc + ci, x.clone());
        }
        for y in 0..nc {
            let x = c.differential().map().entry(ci, y);
            if !x.is_zero() {
                out.add_term(ai * nc + y, -(x * sign(fdeg)));
            }
        }
    }
    let inputs: Vec<usize> = maps.iter().map(|m| m.1).collect();
    let args: Vec<Vector> = maps.iter().map(|m| Vector::basis(m.0)).collect();
    let refs: Vec<&Vector> = args.iter().collect();
    for x in 0..nc {
        for t in c.delta(x) {
            if t.op.0 != k || t.inputs != inputs {
                continue;
            }
            let img = alpha.apply_basis(k, t.op.1)?;
            if img.is_zero() {
                continue;
            }
            let mut e = 0i64;
            let mut passed = col.degree(k, t.op.1);
            for &(ai, ci) in maps {
                e += (a.space().degree(ai) - c.space().degree(ci)) * passed;
                passed += c.space().degree(ci);
            }
            let s = &t.coeff * sign(e);
            for (b, y) in a.gamma(k, img, &refs)?.iter() {
                out.add_term(b * nc + x, y * &s);
            }
        }
    }
    Ok(out)
}
