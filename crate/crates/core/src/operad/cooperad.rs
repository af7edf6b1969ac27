use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use super::axioms::{check_associativity, PartialTable};
use super::collection::{NsCollection, IDENTITY};
use crate::error::{Error, Result};
use crate::linalg::scalar::{one, sign, Scalar};
use crate::linalg::{Differential, GradedSpace, LinMap, Vector};

/// One term `coeff · left ∘_position right` of an infinitesimal decomposition.
/// Basis elements are `(arity, index)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompTerm {
    pub left: (usize, usize),
    pub position: usize,
    pub right: (usize, usize),
    pub coeff: Scalar,
}

/// One term `coeff · root ⊗ (inputs_1, …, inputs_k)` of the full decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeTerm {
    pub root: (usize, usize),
    pub inputs: Vec<(usize, usize)>,
    pub coeff: Scalar,
}

/// Non-symmetric cooperad given by its infinitesimal decomposition.
#[derive(Clone, Debug)]
pub struct Cooperad {
    name: String,
    collection: NsCollection,
    delta: BTreeMap<(usize, usize), Vec<DecompTerm>>,
    full: BTreeMap<(usize, usize), Vec<TreeTerm>>,
    differential: BTreeMap<usize, Differential>,
}

impl Cooperad {
    /// `terms` lists `(element, term)` pairs with both sides of arity ≥ 2;
    /// counital terms are added automatically.
    pub fn new(
        name: impl Into<String>,
        collection: NsCollection,
        terms: impl IntoIterator<Item = ((usize, usize), DecompTerm)>,
        differential: BTreeMap<usize, LinMap>,
    ) -> Result<Self> {
        let name = name.into();
        let mut delta: BTreeMap<(usize, usize), Vec<DecompTerm>> = BTreeMap::new();
        for (n, space) in collection.iter() {
            for c in 0..space.dim() {
                let mut counital = vec![DecompTerm {
                    left: (1, 0),
                    position: 1,
                    right: (n, c),
                    coeff: one(),
                }];
                if n > 1 {
                    counital.extend((1..=n).map(|i| DecompTerm {
                        left: (n, c),
                        position: i,
                        right: (1, 0),
                        coeff: one(),
                    }));
                }
                delta.insert((n, c), counital);
            }
        }
        for ((n, c), t) in terms {
            let (n1, a) = t.left;
            let (n2, b) = t.right;
            if n1 < 2 || n2 < 2 {
                return Err(Error::Invalid("counital terms are implicit".into()));
            }
            if n > collection.bound() {
                continue;
            }
            if n1 + n2 - 1 != n {
                return Err(Error::Shape(format!("arities {n1} and {n2} do not compose to {n}")));
            }
            if t.position == 0 || t.position > n1 {
                return Err(Error::Position { position: t.position, arity: n1 });
            }
            let dims = (collection.space(n)?.dim(), collection.space(n1)?.dim(), collection.space(n2)?.dim());
            if c >= dims.0 || a >= dims.1 || b >= dims.2 {
                return Err(Error::Shape("decomposition index outside its arity".into()));
            }
            if collection.degree(n1, a) + collection.degree(n2, b) != collection.degree(n, c) {
                return Err(Error::Degree(format!(
                    "{} ↦ {} ∘_{} {}",
                    collection.symbol(n, c),
                    collection.symbol(n1, a),
                    t.position,
                    collection.symbol(n2, b)
                )));
            }
            let list = delta.get_mut(&(n, c)).expect("all elements listed");
            match list
                .iter_mut()
                .find(|s| s.left == t.left && s.right == t.right && s.position == t.position)
            {
                Some(s) => s.coeff += t.coeff,
                None => list.push(t),
            }
        }
        for list in delta.values_mut() {
            list.retain(|t| !t.coeff.is_zero());
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
        let mut co = Cooperad {
            name,
            collection,
            delta,
            full: BTreeMap::new(),
            differential: diffs,
        };
        co.check_axioms()?;
        co.full = co
            .delta
            .keys()
            .map(|&key| (key, co.compute_full(key)))
            .collect();
        Ok(co)
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

    /// `Δ_(1)` of a basis element, counital terms included.
    pub fn infinitesimal(&self, n: usize, c: usize) -> Result<&[DecompTerm]> {
        self.delta
            .get(&(n, c))
            .map(Vec::as_slice)
            .ok_or(Error::ArityBound { arity: n, bound: self.bound() })
    }

    /// `Δ_(1)` of a vector in arity `n`, collected by `(left, position, right)`.
    pub fn infinitesimal_decompose(
        &self,
        n: usize,
        v: &Vector,
    ) -> Result<BTreeMap<((usize, usize), usize, (usize, usize)), Scalar>> {
        let mut out = BTreeMap::new();
        for (c, x) in v.iter() {
            for t in self.infinitesimal(n, c)? {
                let e = out
                    .entry((t.left, t.position, t.right))
                    .or_insert_with(Scalar::zero);
                *e += &t.coeff * x;
            }
        }
        out.retain(|_, c: &mut Scalar| !c.is_zero());
        Ok(out)
    }

    /// Full decomposition `Δ_𝒞` of a basis element into two-level trees.
    pub fn decompose(&self, n: usize, c: usize) -> Result<&[TreeTerm]> {
        self.full
            .get(&(n, c))
            .map(Vec::as_slice)
            .ok_or(Error::ArityBound { arity: n, bound: self.bound() })
    }

    /// Peels off the inputs one position at a time; the Koszul sign reorders
    /// `root ⊗ q_k ⊗ … ⊗ q_1` into `root ⊗ q_1 ⊗ … ⊗ q_k`.
    fn compute_full(&self, key: (usize, usize)) -> Vec<TreeTerm> {
        fn go(
            co: &Cooperad,
            rem: (usize, usize),
            j: usize,
            coeff: Scalar,
            inputs: &mut Vec<(usize, usize)>,
            out: &mut BTreeMap<((usize, usize), Vec<(usize, usize)>), Scalar>,
        ) {
            if rem.0 == j - 1 {
                let mut e = 0;
                for a in 0..inputs.len() {
                    for b in a + 1..inputs.len() {
                        e += co.collection.degree(inputs[a].0, inputs[a].1)
                            * co.collection.degree(inputs[b].0, inputs[b].1);
                    }
                }
                *out.entry((rem, inputs.clone()))
                    .or_insert_with(Scalar::zero) += coeff * sign(e);
                return;
            }
            for t in &co.delta[&rem] {
                if t.position == j {
                    inputs.push(t.right);
                    go(co, t.left, j + 1, &coeff * &t.coeff, inputs, out);
                    inputs.pop();
                }
            }
        }
        let mut out = BTreeMap::new();
        go(self, key, 1, one(), &mut Vec::new(), &mut out);
        out.into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((root, inputs), coeff)| TreeTerm { root, inputs, coeff })
            .collect()
    }

    /// Dual associativity of `Δ_(1)` and the coderivation property of the
    /// differential, up to the bound.
    pub fn check_axioms(&self) -> Result<()> {
        check_associativity(&self.name, &self.collection, &self.transpose_table())?;
        let col = &self.collection;
        for &(n, c) in self.delta.keys() {
            let dc = self.differential[&n].apply(&Vector::basis(c));
            let lhs = self.infinitesimal_decompose(n, &dc)?;
            let mut rhs: BTreeMap<_, Scalar> = BTreeMap::new();
            for t in &self.delta[&(n, c)] {
                let da = self.differential[&t.left.0].apply(&Vector::basis(t.left.1));
                for (a, x) in da.iter() {
                    *rhs.entry(((t.left.0, a), t.position, t.right))
                        .or_insert_with(Scalar::zero) += x * &t.coeff;
                }
                let db = self.differential[&t.right.0].apply(&Vector::basis(t.right.1));
                let s = sign(col.degree(t.left.0, t.left.1));
                for (b, x) in db.iter() {
                    *rhs.entry((t.left, t.position, (t.right.0, b)))
                        .or_insert_with(Scalar::zero) += x * &t.coeff * &s;
                }
            }
            rhs.retain(|_, x| !x.is_zero());
            if lhs != rhs {
                return Err(Error::Axiom(format!(
                    "{}: differential is not a coderivation at {}",
                    self.name,
                    col.symbol(n, c)
                )));
            }
        }
        Ok(())
    }

    /// Structure constants of `Δ_(1)` read as partial compositions.
    pub(crate) fn transpose_table(&self) -> TransposeTable {
        let mut table: HashMap<(usize, usize, usize, usize, usize), Vector> = HashMap::new();
        for (&(n, c), terms) in &self.delta {
            for t in terms {
                table
                    .entry((t.left.0, t.left.1, t.position, t.right.0, t.right.1))
                    .or_default()
                    .add_term(c, t.coeff.clone());
                debug_assert_eq!(t.left.0 + t.right.0 - 1, n);
            }
        }
        TransposeTable { table }
    }

    /// The cooperad As^∨ with one cogenerator `μ_n^∨` per arity. When
    /// `graded`, `|μ_n^∨| = n − 1` and `Δ_(1)(μ_n^∨)` carries the sign
    /// `(−1)^{(i−1)(n₂−1)}` on the term `μ_{n₁}^∨ ∘_i μ_{n₂}^∨`; otherwise
    /// everything sits in degree 0 with all signs positive.
    pub fn coassociative(bound: usize, graded: bool) -> Result<Self> {
        let deg = |n: usize| if graded { n as i64 - 1 } else { 0 };
        let components = (2..=bound)
            .map(|n| Ok((n, GradedSpace::new([(co_symbol(n), deg(n))])?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let collection = NsCollection::new(bound, components)?;
        let mut terms = Vec::new();
        for n in 3..=bound {
            for n1 in 2..n {
                let n2 = n + 1 - n1;
                for i in 1..=n1 {
                    let e = if graded { ((i - 1) * (n2 - 1)) as i64 } else { 0 };
                    terms.push((
                        (n, 0),
                        DecompTerm {
                            left: (n1, 0),
                            position: i,
                            right: (n2, 0),
                            coeff: sign(e),
                        },
                    ));
                }
            }
        }
        let name = if graded { "As^∨" } else { "As^∨(ungraded)" };
        Cooperad::new(name, collection, terms, BTreeMap::new())
    }
}

/// Symbol of the arity-`n` cogenerator of As^∨.
pub fn co_symbol(n: usize) -> String {
    if n == 1 {
        IDENTITY.to_string()
    } else {
        format!("μ{n}^∨")
    }
}

pub(crate) struct TransposeTable {
    table: HashMap<(usize, usize, usize, usize, usize), Vector>,
}

impl PartialTable for TransposeTable {
    fn basis_compose(&self, m: usize, a: usize, i: usize, n: usize, b: usize) -> Result<Vector> {
        Ok(self.table.get(&(m, a, i, n, b)).cloned().unwrap_or_default())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::int;
    use crate::operad::Operad;

    fn has(co: &Cooperad, n: usize, t: (usize, usize, usize), coeff: i64) -> bool {
        co.infinitesimal(n, 0)
            .unwrap()
            .iter()
            .any(|d| d.left == (t.0, 0) && d.position == t.1 && d.right == (t.2, 0) && d.coeff == int(coeff))
    }

    #[test]
    fn counital_terms() {
        let co = Cooperad::coassociative(4, true).unwrap();
        assert_eq!(co.infinitesimal(1, 0).unwrap().len(), 1);
        assert!(has(&co, 1, (1, 1, 1), 1));
        assert_eq!(co.infinitesimal(2, 0).unwrap().len(), 3);
        assert!(has(&co, 2, (2, 1, 1), 1));
        assert!(has(&co, 2, (2, 2, 1), 1));
        assert!(has(&co, 2, (1, 1, 2), 1));
    }

    #[test]
    fn mu3_signs_frozen() {
        let co = Cooperad::coassociative(4, true).unwrap();
        assert!(has(&co, 3, (2, 1, 2), 1));
        assert!(has(&co, 3, (2, 2, 2), -1));
        let flat = Cooperad::coassociative(4, false).unwrap();
        assert!(has(&flat, 3, (2, 2, 2), 1));
    }

    #[test]
    fn ungraded_dual_is_transpose_of_as() {
        let op = Operad::associative(5).unwrap();
        let co = Cooperad::coassociative(5, false).unwrap();
        for (&(n, c), terms) in &co.delta {
            for t in terms {
                let v = op.compose_basis(t.left.0, t.left.1, t.position, t.right.0, t.right.1).unwrap();
                assert_eq!(v.coeff(c), t.coeff, "arity {n}");
            }
        }
    }

    #[test]
    fn full_decomposition_counts() {
        let co = Cooperad::coassociative(6, true).unwrap();
        for n in 1..=6 {
            assert_eq!(co.decompose(n, 0).unwrap().len(), 1 << (n - 1), "arity {n}");
        }
        let d = co.decompose(2, 0).unwrap();
        assert!(d.iter().any(|t| t.root == (1, 0) && t.inputs == vec![(2, 0)]));
        assert!(d.iter().any(|t| t.root == (2, 0) && t.inputs == vec![(1, 0), (1, 0)]));
    }

    #[test]
    fn bad_signs_rejected() {
        let bound = 4;
        let components = (2..=bound)
            .map(|n| (n, GradedSpace::new([(co_symbol(n), n as i64 - 1)]).unwrap()))
            .collect();
        let collection = NsCollection::new(bound, components).unwrap();
        let mut terms = Vec::new();
        for n in 3..=bound {
            for n1 in 2..n {
                for i in 1..=n1 {
                    let right = (n + 1 - n1, 0);
                    terms.push(((n, 0), DecompTerm { left: (n1, 0), position: i, right, coeff: one() }));
                }
            }
        }
        assert!(matches!(
            Cooperad::new("wrong", collection, terms, BTreeMap::new()),
            Err(Error::Axiom(_))
        ));
    }
}
