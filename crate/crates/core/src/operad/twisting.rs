use std::collections::BTreeMap;
use std::sync::Arc;

use super::cooperad::Cooperad;
use super::operad::Operad;
use crate::error::{Error, Result};
use crate::linalg::scalar::{int, sign};
use crate::linalg::{LinMap, Vector};

/// Arity-wise linear map `𝒞(n) → 𝒫(n)` of a single degree, for every arity
/// up to the common bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArityMap {
    degree: i64,
    maps: BTreeMap<usize, LinMap>,
}

fn common_bound(co: &Cooperad, op: &Operad) -> usize {
    co.bound().min(op.bound())
}

impl ArityMap {
    /// Missing arities are zero.
    pub fn new(co: &Cooperad, op: &Operad, degree: i64, mut maps: BTreeMap<usize, LinMap>) -> Result<Self> {
        let bound = common_bound(co, op);
        let mut out = BTreeMap::new();
        for n in 1..=bound {
            let s = co.collection().space(n)?.clone();
            let t = op.collection().space(n)?.clone();
            let m = match maps.remove(&n) {
                Some(m) => {
                    if **m.source() != *s || **m.target() != *t {
                        return Err(Error::Shape(format!("arity-{n} component between the wrong spaces")));
                    }
                    if m.degree() != degree && !m.is_zero() {
                        return Err(Error::Degree(format!("arity-{n} component has degree {}", m.degree())));
                    }
                    LinMap::new(s, t, degree, m.columns().to_vec())?
                }
                None => LinMap::zero(s, t, degree),
            };
            out.insert(n, m);
        }
        Ok(ArityMap { degree, maps: out })
    }

    pub fn zero(co: &Cooperad, op: &Operad, degree: i64) -> Self {
        ArityMap::new(co, op, degree, BTreeMap::new()).expect("zero map is well formed")
    }

    /// Builds from `(cooperad symbol, operad symbol, coefficient)` triples,
    /// reading the degree off the entries. With no entries the degree is −1.
    pub fn from_symbols<'a>(
        co: &Cooperad,
        op: &Operad,
        entries: impl IntoIterator<Item = (&'a str, &'a str, crate::linalg::Scalar)>,
    ) -> Result<Self> {
        let mut degree = None;
        let mut cols: BTreeMap<usize, Vec<Vector>> = BTreeMap::new();
        for (c, p, x) in entries {
            let (n, i) = co.collection().locate(c)?;
            let (m, j) = op.collection().locate(p)?;
            if n != m {
                return Err(Error::Shape(format!("{c} and {p} have different arities")));
            }
            let d = op.collection().degree(m, j) - co.collection().degree(n, i);
            match degree {
                None => degree = Some(d),
                Some(e) if e != d => {
                    return Err(Error::Degree(format!("{c} ↦ {p} has degree {d}, expected {e}")))
                }
                _ => {}
            }
            let dim = co.collection().space(n)?.dim();
            cols.entry(n).or_insert_with(|| vec![Vector::zero(); dim])[i].add_term(j, x);
        }
        let degree = degree.unwrap_or(-1);
        let maps = cols
            .into_iter()
            .map(|(n, c)| {
                let s = co.collection().space(n)?.clone();
                let t = op.collection().space(n)?.clone();
                Ok((n, LinMap::new(s, t, degree, c)?))
            })
            .collect::<Result<_>>()?;
        ArityMap::new(co, op, degree, maps)
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn component(&self, n: usize) -> Option<&LinMap> {
        self.maps.get(&n)
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &LinMap)> + '_ {
        self.maps.iter().map(|(&n, m)| (n, m))
    }

    pub fn bound(&self) -> usize {
        self.maps.len()
    }

    /// Image of a basis element `(arity, index)`.
    pub fn apply_basis(&self, n: usize, c: usize) -> Result<&Vector> {
        self.maps
            .get(&n)
            .map(|m| m.column(c))
            .ok_or(Error::ArityBound { arity: n, bound: self.bound() })
    }

    pub fn is_zero(&self) -> bool {
        self.maps.values().all(LinMap::is_zero)
    }

    pub fn add(&self, other: &ArityMap) -> Result<ArityMap> {
        let maps = self
            .maps
            .iter()
            .map(|(n, m)| Ok((*n, m.add(&other.maps[n])?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let degree = if self.is_zero() { other.degree } else { self.degree };
        Ok(ArityMap { degree, maps })
    }

    pub fn scale(&self, c: &crate::linalg::Scalar) -> ArityMap {
        ArityMap {
            degree: self.degree,
            maps: self.maps.iter().map(|(n, m)| (*n, m.scale(c))).collect(),
        }
    }
}

/// `(α⋆β)(c) = Σ_{Δ_(1)c} coeff · (−1)^{|β||c₁|} α(c₁) ∘_i β(c₂)`.
pub fn convolution_star(co: &Cooperad, op: &Operad, alpha: &ArityMap, beta: &ArityMap) -> Result<ArityMap> {
    let bound = common_bound(co, op);
    let degree = alpha.degree + beta.degree;
    let mut maps = BTreeMap::new();
    for n in 1..=bound {
        let s = co.collection().space(n)?.clone();
        let t = op.collection().space(n)?.clone();
        let mut cols = Vec::with_capacity(s.dim());
        for c in 0..s.dim() {
            let mut col = Vector::zero();
            for term in co.infinitesimal(n, c)? {
                let (n1, c1) = term.left;
                let (n2, c2) = term.right;
                let a = alpha.apply_basis(n1, c1)?;
                let b = beta.apply_basis(n2, c2)?;
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                let s = sign(beta.degree * co.collection().degree(n1, c1));
                let v = op.partial_compose(n1, a, term.position, n2, b)?;
                col.add_scaled(&v, &(&term.coeff * s));
            }
            cols.push(col);
        }
        maps.insert(n, LinMap::homogeneous_part(s, t, degree, cols));
    }
    Ok(ArityMap { degree, maps })
}

/// Hom-differential `∂f = d_𝒫 f − (−1)^{|f|} f d_𝒞`, arity-wise.
pub fn hom_differential(co: &Cooperad, op: &Operad, f: &ArityMap) -> Result<ArityMap> {
    let maps = f
        .maps
        .iter()
        .map(|(&n, m)| {
            let d = m.commutator_with_differential(co.differential(n)?, op.differential(n)?)?;
            Ok((n, LinMap::homogeneous_part(d.source().clone(), d.target().clone(), f.degree - 1, d.columns().to_vec())))
        })
        .collect::<Result<_>>()?;
    Ok(ArityMap { degree: f.degree - 1, maps })
}

/// Outcome of the twisting-morphism check in one arity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArityResidual {
    pub arity: usize,
    pub degree_ok: bool,
    /// First basis element with nonzero `∂α + α⋆α`, with that value.
    pub residual: Option<(usize, Vector)>,
}

impl ArityResidual {
    pub fn holds(&self) -> bool {
        self.degree_ok && self.residual.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistingReport {
    pub arities: Vec<ArityResidual>,
}

impl TwistingReport {
    pub fn holds(&self) -> bool {
        self.arities.iter().all(ArityResidual::holds)
    }

    pub fn first_failure(&self) -> Option<&ArityResidual> {
        self.arities.iter().find(|a| !a.holds())
    }
}

/// Checks `∂α + α⋆α = 0` arity by arity. A nonzero component of degree other
/// than −1 fails in its arity.
pub fn is_twisting_morphism(co: &Cooperad, op: &Operad, alpha: &ArityMap) -> Result<TwistingReport> {
    let star = convolution_star(co, op, alpha, alpha)?;
    let d = hom_differential(co, op, alpha)?;
    let mut arities = Vec::new();
    for (n, m) in alpha.components() {
        let degree_ok = alpha.degree == -1 || m.is_zero();
        let mut residual = None;
        let (sm, dm) = (&star.maps[&n], &d.maps[&n]);
        for c in 0..m.source().dim() {
            let mut r = sm.column(c).clone();
            r.add_assign(dm.column(c));
            if !r.is_zero() {
                residual = Some((c, r));
                break;
            }
        }
        if !degree_ok && residual.is_none() {
            if let Some(c) = (0..m.source().dim()).find(|&c| !m.column(c).is_zero()) {
                residual = Some((c, m.column(c).clone()));
            }
        }
        arities.push(ArityResidual { arity: n, degree_ok, residual });
    }
    Ok(TwistingReport { arities })
}

/// A verified operadic twisting morphism `α: 𝒞 → 𝒫`.
#[derive(Clone, Debug)]
pub struct TwistingMorphism {
    cooperad: Arc<Cooperad>,
    operad: Arc<Operad>,
    map: ArityMap,
    koszul: bool,
}

impl TwistingMorphism {
    pub fn new(cooperad: Arc<Cooperad>, operad: Arc<Operad>, map: ArityMap) -> Result<Self> {
        let report = is_twisting_morphism(&cooperad, &operad, &map)?;
        if let Some(f) = report.first_failure() {
            return Err(Error::Axiom(format!(
                "not a twisting morphism: fails in arity {}{}",
                f.arity,
                if f.degree_ok { "" } else { " (wrong degree)" }
            )));
        }
        Ok(TwistingMorphism { cooperad, operad, map, koszul: false })
    }

    pub fn zero(cooperad: Arc<Cooperad>, operad: Arc<Operad>) -> Self {
        let map = ArityMap::zero(&cooperad, &operad, -1);
        TwistingMorphism { cooperad, operad, map, koszul: false }
    }

    /// `κ: As^∨ → As`, `μ₂^∨ ↦ μ₂` and zero elsewhere, on the graded As^∨.
    pub fn kappa(bound: usize) -> Result<Self> {
        let co = Arc::new(Cooperad::coassociative(bound, true)?);
        let op = Arc::new(Operad::associative(bound)?);
        let entries = if bound >= 2 { vec![("μ2^∨", "μ2", int(1))] } else { vec![] };
        let map = ArityMap::from_symbols(&co, &op, entries)?;
        Ok(TwistingMorphism::new(co, op, map)?.flag_koszul(true))
    }

    /// Records whether `α` is to be trusted as Koszul; not verified.
    pub fn flag_koszul(mut self, koszul: bool) -> Self {
        self.koszul = koszul;
        self
    }

    pub fn is_koszul(&self) -> bool {
        self.koszul
    }

    pub fn cooperad(&self) -> &Arc<Cooperad> {
        &self.cooperad
    }

    pub fn operad(&self) -> &Arc<Operad> {
        &self.operad
    }

    pub fn map(&self) -> &ArityMap {
        &self.map
    }

    pub fn bound(&self) -> usize {
        common_bound(&self.cooperad, &self.operad)
    }

    /// `α(c)` for a basis element `(arity, index)` of the cooperad.
    pub fn apply_basis(&self, n: usize, c: usize) -> Result<&Vector> {
        self.map.apply_basis(n, c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Scalar;
    use proptest::prelude::*;

    #[test]
    fn zero_and_kappa_are_twisting() {
        for bound in 2..=6 {
            let k = TwistingMorphism::kappa(bound).unwrap();
            assert!(is_twisting_morphism(k.cooperad(), k.operad(), k.map()).unwrap().holds());
            let z = TwistingMorphism::zero(k.cooperad().clone(), k.operad().clone());
            assert!(is_twisting_morphism(z.cooperad(), z.operad(), z.map()).unwrap().holds());
        }
    }

    #[test]
    fn kappa_square_on_mu3() {
        let k = TwistingMorphism::kappa(4).unwrap();
        let (co, op) = (k.cooperad(), k.operad());
        let sq = convolution_star(co, op, k.map(), k.map()).unwrap();
        // expand by hand: the two μ₂^∨ ∘_i μ₂^∨ terms carry opposite signs
        let mut oracle = Vector::zero();
        for t in co.infinitesimal(3, 0).unwrap() {
            if t.left.0 == 2 && t.right.0 == 2 {
                let v = op.partial_compose(2, &Vector::basis(0), t.position, 2, &Vector::basis(0)).unwrap();
                oracle.add_scaled(&v, &(-t.coeff.clone()));
            }
        }
        assert_eq!(sq.apply_basis(3, 0).unwrap(), &oracle);
        assert!(oracle.is_zero());
        assert!(sq.apply_basis(1, 0).unwrap().is_zero());
    }

    #[test]
    fn wrong_degree_fails_in_arity_three() {
        let co = Cooperad::coassociative(4, true).unwrap();
        let op = Operad::associative(4).unwrap();
        let a = ArityMap::from_symbols(&co, &op, [("μ3^∨", "μ3", int(1))]).unwrap();
        let report = is_twisting_morphism(&co, &op, &a).unwrap();
        assert!(!report.holds());
        assert_eq!(report.first_failure().unwrap().arity, 3);
    }

    #[test]
    fn zero_star_is_zero() {
        let k = TwistingMorphism::kappa(5).unwrap();
        let z = ArityMap::zero(k.cooperad(), k.operad(), -1);
        assert!(convolution_star(k.cooperad(), k.operad(), &z, k.map()).unwrap().is_zero());
        assert!(convolution_star(k.cooperad(), k.operad(), k.map(), &z).unwrap().is_zero());
    }

    fn flat_map(co: &Cooperad, op: &Operad, coeffs: &[i64]) -> ArityMap {
        let syms: Vec<(String, String, Scalar)> = coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| (super::super::co_symbol(k + 1), super::super::as_symbol(k + 1), int(c)))
            .collect();
        ArityMap::from_symbols(co, op, syms.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.clone()))).unwrap()
    }

    proptest! {
        #[test]
        fn associator_symmetric(a in prop::collection::vec(-3i64..4, 5),
                                b in prop::collection::vec(-3i64..4, 5),
                                c in prop::collection::vec(-3i64..4, 5)) {
            let co = Cooperad::coassociative(5, false).unwrap();
            let op = Operad::associative(5).unwrap();
            let (fa, fb, fc) = (flat_map(&co, &op, &a), flat_map(&co, &op, &b), flat_map(&co, &op, &c));
            let star = |x: &ArityMap, y: &ArityMap| convolution_star(&co, &op, x, y).unwrap();
            let assoc = |x: &ArityMap, y: &ArityMap, z: &ArityMap| {
                star(&star(x, y), z).add(&star(x, &star(y, z)).scale(&int(-1))).unwrap()
            };
            prop_assert_eq!(assoc(&fa, &fb, &fc), assoc(&fa, &fc, &fb));
        }
    }
}
