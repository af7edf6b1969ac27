use std::collections::{BTreeMap, HashMap};

use super::axioms::{check_associativity, PartialTable};
use super::collection::NsCollection;
use crate::error::{Error, Result};
use crate::linalg::scalar::sign;
use crate::linalg::tensor::for_each_product;
use crate::linalg::{Differential, LinMap, Vector};

/// Non-symmetric operad given by partial-composition structure constants.
///
/// `compose[(m, i, n)][a][b]` is `a ∘_i b` for basis elements `a ∈ 𝒫(m)`,
/// `b ∈ 𝒫(n)`. Only compositions landing in arity ≤ bound are stored; unit
/// compositions are filled in automatically.
#[derive(Clone, Debug)]
pub struct Operad {
    name: String,
    collection: NsCollection,
    compose: HashMap<(usize, usize, usize), Vec<Vec<Vector>>>,
    differential: BTreeMap<usize, Differential>,
}

/// One supplied structure constant: `left ∘_position right = Σ coeff · output`.
#[derive(Clone, Debug)]
pub struct CompositionRule {
    pub left: (usize, usize),
    pub position: usize,
    pub right: (usize, usize),
    pub output: Vector,
}

impl Operad {
    pub fn new(
        name: impl Into<String>,
        collection: NsCollection,
        rules: impl IntoIterator<Item = CompositionRule>,
        differential: BTreeMap<usize, LinMap>,
    ) -> Result<Self> {
        let bound = collection.bound();
        let mut compose = HashMap::new();
        for m in 1..=bound {
            for n in 1..=bound + 1 - m {
                let dm = collection.space(m)?.dim();
                let dn = collection.space(n)?.dim();
                for i in 1..=m {
                    let mut table = vec![vec![Vector::zero(); dn]; dm];
                    if n == 1 {
                        for (a, row) in table.iter_mut().enumerate() {
                            row[0] = Vector::basis(a);
                        }
                    } else if m == 1 {
                        table[0] = (0..dn).map(Vector::basis).collect();
                    }
                    compose.insert((m, i, n), table);
                }
            }
        }
        for rule in rules {
            let (m, a) = rule.left;
            let (n, b) = rule.right;
            if rule.position == 0 || rule.position > m {
                return Err(Error::Position { position: rule.position, arity: m });
            }
            if m + n - 1 > bound {
                continue;
            }
            if m == 1 || n == 1 {
                return Err(Error::Invalid("unit compositions are implicit".into()));
            }
            let out_dim = collection.space(m + n - 1)?.dim();
            if let Some(k) = rule.output.support().find(|&k| k >= out_dim) {
                return Err(Error::Shape(format!("output index {k} outside arity {}", m + n - 1)));
            }
            let deg_in = collection.degree(m, a) + collection.degree(n, b);
            for k in rule.output.support() {
                if collection.degree(m + n - 1, k) != deg_in {
                    return Err(Error::Degree(format!(
                        "{} ∘_{} {} has degree {deg_in}",
                        collection.symbol(m, a),
                        rule.position,
                        collection.symbol(n, b)
                    )));
                }
            }
            compose.get_mut(&(m, rule.position, n)).expect("table allocated")[a][b] = rule.output;
        }
        let mut diffs = BTreeMap::new();
        for (n, space) in collection.iter() {
            let d = match differential.get(&n) {
                Some(map) => {
                    if **map.source() != **space {
                        return Err(Error::Shape(format!("differential in arity {n}")));
                    }
                    Differential::new(map.clone())?
                }
                None => Differential::zero(space.clone()),
            };
            diffs.insert(n, d);
        }
        let op = Operad {
            name: name.into(),
            collection,
            compose,
            differential: diffs,
        };
        op.check_axioms()?;
        Ok(op)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn collection(&self) -> &NsCollection {
        &self.collection
    }

    pub fn bound(&self) -> usize {
        self.collection.bound()
    }

    pub fn differential(&self, n: usize) -> Result<&Differential> {
        self.differential
            .get(&n)
            .ok_or(Error::ArityBound { arity: n, bound: self.bound() })
    }

    /// `a ∘_i b` on basis elements.
    pub fn compose_basis(&self, m: usize, a: usize, i: usize, n: usize, b: usize) -> Result<&Vector> {
        if i == 0 || i > m {
            return Err(Error::Position { position: i, arity: m });
        }
        if m + n - 1 > self.bound() {
            return Err(Error::ArityBound { arity: m + n - 1, bound: self.bound() });
        }
        Ok(&self.compose[&(m, i, n)][a][b])
    }

    /// Bilinear `p ∘_i q`.
    pub fn partial_compose(&self, m: usize, p: &Vector, i: usize, n: usize, q: &Vector) -> Result<Vector> {
        if i == 0 || i > m {
            return Err(Error::Position { position: i, arity: m });
        }
        let mut out = Vector::zero();
        for (a, x) in p.iter() {
            for (b, y) in q.iter() {
                out.add_scaled(self.compose_basis(m, a, i, n, b)?, &(x * y));
            }
        }
        Ok(out)
    }

    /// Full composition `γ(p; q_1, …, q_k)` on basis elements, via
    /// `(−1)^{Σ_{a<b}|q_a||q_b|} ((p ∘_k q_k) ∘_{k−1} q_{k−1}) … ∘_1 q_1`.
    pub fn compose_full(&self, k: usize, p: usize, qs: &[(usize, usize)]) -> Result<Vector> {
        if qs.len() != k {
            return Err(Error::Shape(format!("{} inputs for arity {k}", qs.len())));
        }
        let mut cur = Vector::basis(p);
        let mut arity = k;
        for j in (1..=k).rev() {
            let (n, q) = qs[j - 1];
            cur = self.partial_compose(arity, &cur, j, n, &Vector::basis(q))?;
            arity += n - 1;
        }
        let mut e = 0;
        for a in 0..k {
            for b in a + 1..k {
                e += self.collection.degree(qs[a].0, qs[a].1) * self.collection.degree(qs[b].0, qs[b].1);
            }
        }
        Ok(cur.scaled(&sign(e)))
    }

    /// Multilinear full composition on vectors.
    pub fn compose_full_vec(&self, k: usize, p: &Vector, qs: &[(usize, Vector)]) -> Result<Vector> {
        let mut out = Vector::zero();
        let vecs: Vec<&Vector> = qs.iter().map(|(_, v)| v).collect();
        let mut err = None;
        for (a, x) in p.iter() {
            for_each_product(&vecs, |idx, c| {
                if err.is_some() {
                    return;
                }
                let basis: Vec<(usize, usize)> = qs.iter().zip(idx).map(|((n, _), &b)| (*n, b)).collect();
                match self.compose_full(k, a, &basis) {
                    Ok(v) => out.add_scaled(&v, &(x * &c)),
                    Err(e) => err = Some(e),
                }
            });
        }
        match err {
            Some(e) => Err(e),
            None => Ok(out),
        }
    }

    /// Sequential and parallel associativity and the derivation property of
    /// the differential, on all basis elements up to the bound. Unit laws hold
    /// by construction.
    pub fn check_axioms(&self) -> Result<()> {
        check_associativity(&self.name, &self.collection, self)?;
        let c = &self.collection;
        let bound = self.bound();
        for m in 1..=bound {
            for n in 1..=bound + 1 - m {
                for i in 1..=m {
                    for a in 0..c.space(m)?.dim() {
                        for b in 0..c.space(n)?.dim() {
                            let lhs = self.differential[&(m + n - 1)].apply(self.compose_basis(m, a, i, n, b)?);
                            let da = self.differential[&m].apply(&Vector::basis(a));
                            let db = self.differential[&n].apply(&Vector::basis(b));
                            let mut rhs = self.partial_compose(m, &da, i, n, &Vector::basis(b))?;
                            let t = self.partial_compose(m, &Vector::basis(a), i, n, &db)?;
                            rhs.add_scaled(&t, &sign(c.degree(m, a)));
                            if lhs != rhs {
                                return Err(Error::Axiom(format!(
                                    "{}: differential is not a derivation at {} ∘_{i} {}",
                                    self.name,
                                    c.symbol(m, a),
                                    c.symbol(n, b)
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

impl PartialTable for Operad {
    fn basis_compose(&self, m: usize, a: usize, i: usize, n: usize, b: usize) -> Result<Vector> {
        self.compose_basis(m, a, i, n, b).cloned()
    }
}

/// Symbol of the arity-`n` generator of As; arity 1 is the identity.
pub fn as_symbol(n: usize) -> String {
    if n == 1 {
        super::collection::IDENTITY.to_string()
    } else {
        format!("μ{n}")
    }
}

impl Operad {
    /// The associative operad As: one operation `μ_n` of degree 0 in each
    /// arity, with `μ_m ∘_i μ_n = μ_{m+n−1}`.
    pub fn associative(bound: usize) -> Result<Self> {
        let components = (2..=bound)
            .map(|n| Ok((n, crate::linalg::GradedSpace::new([(as_symbol(n), 0)])?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let collection = NsCollection::new(bound, components)?;
        let mut rules = Vec::new();
        for m in 2..=bound {
            for n in 2..=bound + 1 - m {
                for i in 1..=m {
                    rules.push(CompositionRule {
                        left: (m, 0),
                        position: i,
                        right: (n, 0),
                        output: Vector::basis(0),
                    });
                }
            }
        }
        Operad::new("As", collection, rules, BTreeMap::new())
    }
}
