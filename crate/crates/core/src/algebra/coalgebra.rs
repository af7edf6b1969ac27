use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use super::words::WordBasis;
use crate::error::{Error, Result};
use crate::linalg::scalar::{one, sign, Scalar};
use crate::linalg::{Differential, GradedSpace, LinMap, Vector};
use crate::operad::Cooperad;

/// One term `coeff · op ⊗ c_{inputs_1} ⊗ … ⊗ c_{inputs_k}` of `Δ_C(c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoTerm {
    pub op: (usize, usize),
    pub inputs: Vec<usize>,
    pub coeff: Scalar,
}

/// Element of `𝒞 ∘ C`, keyed by `(operation, inputs)`.
pub type CompositeElement = BTreeMap<((usize, usize), Vec<usize>), Scalar>;

pub(crate) fn add_to(target: &mut CompositeElement, key: ((usize, usize), Vec<usize>), c: Scalar) {
    if c.is_zero() {
        return;
    }
    let e = target.entry(key.clone()).or_insert_with(Scalar::zero);
    *e += c;
    if e.is_zero() {
        target.remove(&key);
    }
}

/// Conilpotent coalgebra over a non-symmetric cooperad, with the full
/// decomposition `Δ_C` listed per basis element.
#[derive(Clone, Debug)]
pub struct Coalgebra {
    name: String,
    cooperad: Arc<Cooperad>,
    space: Arc<GradedSpace>,
    differential: Differential,
    delta: Vec<Vec<CoTerm>>,
    words: Option<WordBasis>,
    level: Vec<usize>,
}

impl Coalgebra {
    /// `terms` lists decomposition terms of arity ≥ 2; the `id ⊗ c` term is
    /// added to every element.
    pub fn from_terms(
        name: impl Into<String>,
        cooperad: Arc<Cooperad>,
        space: Arc<GradedSpace>,
        differential: Option<LinMap>,
        terms: impl IntoIterator<Item = (usize, CoTerm)>,
    ) -> Result<Self> {
        let differential = match differential {
            Some(d) => {
                if **d.source() != *space {
                    return Err(Error::Shape("differential on a different space".into()));
                }
                Differential::new(d)?
            }
            None => Differential::zero(space.clone()),
        };
        let mut delta: Vec<Vec<CoTerm>> = (0..space.dim())
            .map(|c| vec![CoTerm { op: (1, 0), inputs: vec![c], coeff: one() }])
            .collect();
        let col = cooperad.collection();
        for (c, t) in terms {
            let k = t.op.0;
            if k < 2 {
                return Err(Error::Invalid("the arity-1 part of Δ_C is id ⊗ c".into()));
            }
            if k > cooperad.bound() {
                return Err(Error::ArityBound { arity: k, bound: cooperad.bound() });
            }
            if t.inputs.len() != k || c >= space.dim() || t.inputs.iter().any(|&x| x >= space.dim()) {
                return Err(Error::Shape("malformed decomposition term".into()));
            }
            if t.op.1 >= col.space(k)?.dim() {
                return Err(Error::Shape("operation index out of range".into()));
            }
            let deg = col.degree(k, t.op.1) + t.inputs.iter().map(|&x| space.degree(x)).sum::<i64>();
            if deg != space.degree(c) {
                return Err(Error::Degree(format!("Δ_C({}) term of degree {deg}", space.symbol(c))));
            }
            delta[c].push(t);
        }
        Coalgebra::assemble(name.into(), cooperad, space, differential, delta, None)
    }

    fn assemble(
        name: String,
        cooperad: Arc<Cooperad>,
        space: Arc<GradedSpace>,
        differential: Differential,
        delta: Vec<Vec<CoTerm>>,
        words: Option<WordBasis>,
    ) -> Result<Self> {
        let delta = delta
            .into_iter()
            .map(|terms| {
                let mut merged = CompositeElement::new();
                for t in terms {
                    add_to(&mut merged, (t.op, t.inputs), t.coeff);
                }
                merged
                    .into_iter()
                    .map(|((op, inputs), coeff)| CoTerm { op, inputs, coeff })
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>();
        let level = delta
            .iter()
            .map(|ts| ts.iter().map(|t| t.op.0).max().unwrap_or(1))
            .collect();
        let co = Coalgebra {
            name,
            cooperad,
            space,
            differential,
            delta,
            words,
            level,
        };
        co.check_axioms()?;
        Ok(co)
    }

    /// Cofree coalgebra on `generators` truncated at weight `weight`, with
    /// the coderivation induced by `d_V` and `d_𝒞`.
    pub fn cofree(
        name: impl Into<String>,
        cooperad: Arc<Cooperad>,
        generators: Arc<GradedSpace>,
        d_v: Option<&LinMap>,
        weight: usize,
    ) -> Result<Self> {
        let words = WordBasis::new(cooperad.collection(), generators, weight)?;
        let diff = induced_differential(&cooperad, &words, |v| {
            Ok(d_v.map(|d| d.column(v).clone()).unwrap_or_default())
        })?;
        Coalgebra::cofree_with_differential(name, cooperad, words, diff)
    }

    /// Cofree coalgebra structure on a word basis with a prescribed
    /// differential; coderivation and `d² = 0` are checked.
    pub fn cofree_with_differential(
        name: impl Into<String>,
        cooperad: Arc<Cooperad>,
        words: WordBasis,
        differential: LinMap,
    ) -> Result<Self> {
        let space = words.space().clone();
        let col = cooperad.collection();
        let mut delta = Vec::with_capacity(space.dim());
        for b in 0..space.dim() {
            let (n, mu, gens) = words.word(b).clone();
            let mut terms = Vec::new();
            for tree in cooperad.decompose(n, mu)? {
                let mut inputs = Vec::with_capacity(tree.inputs.len());
                let mut pos = 0;
                let mut e = 0;
                let mut seen = 0;
                for &(k, q) in &tree.inputs {
                    let block = &gens[pos..pos + k];
                    e += col.degree(k, q) * seen;
                    seen += words.gen_degree(block);
                    inputs.push(words.find(k, q, block)?);
                    pos += k;
                }
                terms.push(CoTerm {
                    op: tree.root,
                    inputs,
                    coeff: &tree.coeff * sign(e),
                });
            }
            delta.push(terms);
        }
        let differential = Differential::new(differential)?;
        Coalgebra::assemble(name.into(), cooperad, space, differential, delta, Some(words))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn cooperad(&self) -> &Arc<Cooperad> {
        &self.cooperad
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn differential(&self) -> &Differential {
        &self.differential
    }

    pub fn words(&self) -> Option<&WordBasis> {
        self.words.as_ref()
    }

    /// Full `Δ_C(c)`.
    pub fn delta(&self, c: usize) -> &[CoTerm] {
        &self.delta[c]
    }

    /// Arity-`n` part `Δ_C^n(c)`.
    pub fn delta_n(&self, n: usize, c: usize) -> Result<impl Iterator<Item = &CoTerm> + '_> {
        if n > self.cooperad.bound() {
            return Err(Error::ArityBound { arity: n, bound: self.cooperad.bound() });
        }
        Ok(self.delta[c].iter().filter(move |t| t.op.0 == n))
    }

    pub fn apply_delta(&self, v: &Vector) -> CompositeElement {
        let mut out = CompositeElement::new();
        for (c, x) in v.iter() {
            for t in &self.delta[c] {
                add_to(&mut out, (t.op, t.inputs.clone()), &t.coeff * x);
            }
        }
        out
    }

    /// Largest `n` with `Δ_C^n(c) ≠ 0`.
    pub fn level(&self, c: usize) -> usize {
        self.level[c]
    }

    /// Length of the coradical filtration: every element is killed by
    /// `Δ_C^n` for `n` above it.
    pub fn coradical_length(&self) -> usize {
        self.level.iter().copied().max().unwrap_or(1)
    }

    /// Certificate that the filtration is exhausted by stage `bound`.
    pub fn check_conilpotent(&self, bound: usize) -> Result<()> {
        let n = self.coradical_length();
        if n > bound {
            return Err(Error::Axiom(format!(
                "{}: coradical filtration needs {n} stages, more than {bound}",
                self.name
            )));
        }
        Ok(())
    }

    /// `d_{𝒞∘C}` on one term of `𝒞 ∘ C`.
    pub fn composite_differential(&self, op: (usize, usize), inputs: &[usize], coeff: &Scalar) -> Result<CompositeElement> {
        let col = self.cooperad.collection();
        let mut out = CompositeElement::new();
        for (q, x) in self.cooperad.differential(op.0)?.apply(&Vector::basis(op.1)).iter() {
            add_to(&mut out, ((op.0, q), inputs.to_vec()), x * coeff);
        }
        let mut passed = col.degree(op.0, op.1);
        for i in 0..inputs.len() {
            let s = sign(passed) * coeff;
            for (b, x) in self.differential.apply(&Vector::basis(inputs[i])).iter() {
                let mut inp = inputs.to_vec();
                inp[i] = b;
                add_to(&mut out, (op, inp), x * &s);
            }
            passed += self.space.degree(inputs[i]);
        }
        Ok(out)
    }

    /// Coassociativity `(Δ_𝒞 ∘ 1)Δ_C = (1 ∘ Δ_C)Δ_C` and the coderivation
    /// property of `d_C`.
    pub fn check_axioms(&self) -> Result<()> {
        let col = self.cooperad.collection();
        for c in 0..self.dim() {
            let mut lhs: BTreeMap<((usize, usize), Vec<(usize, usize)>, Vec<usize>), Scalar> = BTreeMap::new();
            let mut rhs = lhs.clone();
            let push = |m: &mut BTreeMap<_, Scalar>, key, x: Scalar| {
                let e = m.entry(key).or_insert_with(Scalar::zero);
                *e += x;
            };
            for t in &self.delta[c] {
                for tree in self.cooperad.decompose(t.op.0, t.op.1)? {
                    push(&mut lhs, (tree.root, tree.inputs.clone(), t.inputs.clone()), &t.coeff * &tree.coeff);
                }
                let parts: Vec<&[CoTerm]> = t.inputs.iter().map(|&x| self.delta[x].as_slice()).collect();
                let mut choice = vec![0usize; parts.len()];
                'outer: loop {
                    let mut coeff = t.coeff.clone();
                    let mut ops = Vec::new();
                    let mut flat = Vec::new();
                    let mut e = 0;
                    let mut seen = 0;
                    for (j, part) in parts.iter().enumerate() {
                        let s = &part[choice[j]];
                        coeff *= &s.coeff;
                        e += col.degree(s.op.0, s.op.1) * seen;
                        seen += s.inputs.iter().map(|&x| self.space.degree(x)).sum::<i64>();
                        ops.push(s.op);
                        flat.extend_from_slice(&s.inputs);
                    }
                    push(&mut rhs, (t.op, ops, flat), coeff * sign(e));
                    for j in (0..parts.len()).rev() {
                        choice[j] += 1;
                        if choice[j] < parts[j].len() {
                            continue 'outer;
                        }
                        choice[j] = 0;
                    }
                    break;
                }
            }
            lhs.retain(|_, x| !x.is_zero());
            rhs.retain(|_, x| !x.is_zero());
            if lhs != rhs {
                return Err(Error::Axiom(format!(
                    "{}: Δ_C is not coassociative at {}",
                    self.name,
                    self.space.symbol(c)
                )));
            }
            let dc = self.differential.apply(&Vector::basis(c));
            let lhs = self.apply_delta(&dc);
            let mut rhs = CompositeElement::new();
            for t in &self.delta[c] {
                for (k, x) in self.composite_differential(t.op, &t.inputs, &t.coeff)? {
                    add_to(&mut rhs, k, x);
                }
            }
            if lhs != rhs {
                return Err(Error::Axiom(format!(
                    "{}: d_C is not a coderivation at {}",
                    self.name,
                    self.space.symbol(c)
                )));
            }
        }
        Ok(())
    }
}

/// Coderivation of a cofree coalgebra induced by `d_𝒞` and a degree −1 map
/// on cogenerators (given as a vector in the cogenerator space).
pub(crate) fn induced_differential(
    cooperad: &Cooperad,
    words: &WordBasis,
    d_gen: impl Fn(usize) -> Result<Vector>,
) -> Result<LinMap> {
    let space = words.space().clone();
    let col = cooperad.collection();
    let mut cols = Vec::with_capacity(space.dim());
    for b in 0..space.dim() {
        let (n, mu, gens) = words.word(b).clone();
        let mut out = Vector::zero();
        for (q, x) in cooperad.differential(n)?.apply(&Vector::basis(mu)).iter() {
            out.add_term(words.find(n, q, &gens)?, x.clone());
        }
        let mut passed = col.degree(n, mu);
        for i in 0..n {
            for (u, x) in d_gen(gens[i])?.iter() {
                let mut g = gens.clone();
                g[i] = u;
                out.add_term(words.find(n, mu, &g)?, x * sign(passed));
            }
            passed += words.generators().degree(gens[i]);
        }
        cols.push(out);
    }
    LinMap::new(space.clone(), space, -1, cols)
}
