use std::collections::HashMap;
use std::sync::Arc;

use super::words::WordBasis;
use crate::error::{Error, Result};
use crate::linalg::scalar::sign;
use crate::linalg::tensor::{for_each_product, MultiIndex};
use crate::linalg::{Differential, GradedSpace, LinMap, Vector};
use crate::operad::Operad;

/// Algebra over a non-symmetric operad: a complex `A` with structure maps
/// `γ_A(n): 𝒫(n) ⊗ A^{⊗n} → A`.
#[derive(Clone, Debug)]
pub struct Algebra {
    name: String,
    operad: Arc<Operad>,
    space: Arc<GradedSpace>,
    kind: Kind,
}

#[derive(Clone, Debug)]
enum Kind {
    /// Every `γ_A(p; a_1, …, a_n)` on basis tuples; missing entries are zero.
    Table {
        products: HashMap<(usize, usize, Vec<usize>), Vector>,
        differential: Differential,
    },
    /// Free algebra `⊕_{n≤W} 𝒫(n) ⊗ V^{⊗n}`, with the differential fixed by
    /// its values on generators. `diff[b]` is `None` when `d(b)` would leave
    /// the truncation.
    Free {
        words: WordBasis,
        diff: Vec<Option<Vector>>,
        raise: usize,
    },
}

/// One table entry: `γ_A(operation; inputs) = output`.
#[derive(Clone, Debug)]
pub struct ProductRule {
    pub operation: (usize, usize),
    pub inputs: Vec<usize>,
    pub output: Vector,
}

impl Algebra {
    /// Algebra from explicit structure maps in arities ≥ 2. The identity acts
    /// trivially; all axioms are checked up to the operad's bound.
    pub fn from_table(
        name: impl Into<String>,
        operad: Arc<Operad>,
        space: Arc<GradedSpace>,
        differential: Option<LinMap>,
        rules: impl IntoIterator<Item = ProductRule>,
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
        let bound = operad.bound();
        let mut products = HashMap::new();
        for a in 0..space.dim() {
            products.insert((1, 0, vec![a]), Vector::basis(a));
        }
        for rule in rules {
            let (n, p) = rule.operation;
            if n != rule.inputs.len() {
                return Err(Error::Shape(format!("{} inputs for arity {n}", rule.inputs.len())));
            }
            if n < 2 {
                return Err(Error::Invalid("the identity acts trivially".into()));
            }
            if n > bound {
                continue;
            }
            if p >= operad.collection().space(n)?.dim() || rule.inputs.iter().any(|&a| a >= space.dim()) {
                return Err(Error::Shape("product rule index out of range".into()));
            }
            let deg = operad.collection().degree(n, p) + rule.inputs.iter().map(|&a| space.degree(a)).sum::<i64>();
            if rule.output.support().any(|k| k >= space.dim() || space.degree(k) != deg) {
                return Err(Error::Degree(format!(
                    "γ({}; …) must land in degree {deg}",
                    operad.collection().symbol(n, p)
                )));
            }
            if !rule.output.is_zero() {
                products.insert((n, p, rule.inputs), rule.output);
            }
        }
        let alg = Algebra {
            name: name.into(),
            operad,
            space,
            kind: Kind::Table { products, differential },
        };
        alg.check_axioms()?;
        Ok(alg)
    }

    /// As-algebra from a binary product table; higher `μ_n` are iterated
    /// products `μ_n(a_1, …, a_n) = μ_2(μ_{n−1}(a_1, …, a_{n−1}), a_n)`.
    pub fn associative(
        name: impl Into<String>,
        operad: Arc<Operad>,
        space: Arc<GradedSpace>,
        differential: Option<LinMap>,
        product: impl IntoIterator<Item = ((usize, usize), Vector)>,
    ) -> Result<Self> {
        let bound = operad.bound();
        for n in 2..=bound {
            if operad.collection().space(n)?.dim() != 1 {
                return Err(Error::Invalid("iterated products need one operation per arity".into()));
            }
        }
        let mut table: HashMap<Vec<usize>, Vector> = HashMap::new();
        for ((a, b), v) in product {
            table.insert(vec![a, b], v);
        }
        let mu2 = |x: &Vector, b: usize| {
            let mut out = Vector::zero();
            for (a, c) in x.iter() {
                if let Some(v) = table.get(&vec![a, b]) {
                    out.add_scaled(v, c);
                }
            }
            out
        };
        let mut rules = Vec::new();
        let mut prev: HashMap<Vec<usize>, Vector> =
            (0..space.dim()).map(|a| (vec![a], Vector::basis(a))).collect();
        for n in 2..=bound {
            let mut next = HashMap::new();
            for word in MultiIndex::new(vec![space.dim(); n]) {
                let v = mu2(&prev[&word[..n - 1].to_vec()], word[n - 1]);
                rules.push(ProductRule {
                    operation: (n, 0),
                    inputs: word.clone(),
                    output: v.clone(),
                });
                next.insert(word, v);
            }
            prev = next;
        }
        Algebra::from_table(name, operad, space, differential, rules)
    }

    /// Free algebra on `generators`, truncated at weight `weight`, with the
    /// differential induced by `d_V` and `d_𝒫`.
    pub fn free(
        name: impl Into<String>,
        operad: Arc<Operad>,
        generators: Arc<GradedSpace>,
        d_v: Option<&LinMap>,
        weight: usize,
    ) -> Result<Self> {
        let words = WordBasis::new(operad.collection(), generators.clone(), weight)?;
        let gen_diff = (0..generators.dim())
            .map(|v| {
                let mut out = Vector::zero();
                if let Some(d) = d_v {
                    for (u, c) in d.column(v).iter() {
                        out.add_term(words.generator(u), c.clone());
                    }
                }
                out
            })
            .collect();
        Algebra::free_with_generator_differential(name, operad, words, gen_diff)
    }

    /// Free algebra whose differential sends `id ⊗ v` to `gen_diff[v]`,
    /// extended as a derivation.
    pub fn free_with_generator_differential(
        name: impl Into<String>,
        operad: Arc<Operad>,
        words: WordBasis,
        gen_diff: Vec<Vector>,
    ) -> Result<Self> {
        let space = words.space().clone();
        let raise = gen_diff
            .iter()
            .flat_map(|v| v.support())
            .map(|b| words.weight(b) - 1)
            .max()
            .unwrap_or(0);
        for (v, dv) in gen_diff.iter().enumerate() {
            let want = words.generators().degree(v) - 1;
            if dv.support().any(|b| space.degree(b) != want) {
                return Err(Error::Degree("generator differential must have degree -1".into()));
            }
        }
        let mut alg = Algebra {
            name: name.into(),
            operad,
            space,
            kind: Kind::Free { words, diff: Vec::new(), raise },
        };
        let diff = (0..alg.space.dim())
            .map(|b| match alg.free_differential(b, &gen_diff) {
                Ok(v) => Ok(Some(v)),
                Err(Error::TruncationOverflow { .. }) | Err(Error::ArityBound { .. }) => Ok(None),
                Err(e) => Err(e),
            })
            .collect::<Result<Vec<_>>>()?;
        if let Kind::Free { diff: d, .. } = &mut alg.kind {
            *d = diff;
        }
        Ok(alg)
    }

    fn free_differential(&self, b: usize, gen_diff: &[Vector]) -> Result<Vector> {
        let words = self.words().expect("free algebra");
        let (n, p, gens) = words.word(b).clone();
        let col = self.operad.collection();
        let mut out = Vector::zero();
        for (q, c) in self.operad.differential(n)?.apply(&Vector::basis(p)).iter() {
            out.add_term(words.find(n, q, &gens)?, c.clone());
        }
        let mut passed = col.degree(n, p);
        for i in 0..n {
            let args: Vec<Vector> = gens
                .iter()
                .enumerate()
                .map(|(j, &g)| if j == i { gen_diff[g].clone() } else { Vector::basis(words.generator(g)) })
                .collect();
            let refs: Vec<&Vector> = args.iter().collect();
            let t = self.gamma(n, &Vector::basis(p), &refs)?;
            out.add_scaled(&t, &sign(passed));
            passed += words.generators().degree(gens[i]);
        }
        Ok(out)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn operad(&self) -> &Arc<Operad> {
        &self.operad
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Word basis for free algebras.
    pub fn words(&self) -> Option<&WordBasis> {
        match &self.kind {
            Kind::Free { words, .. } => Some(words),
            Kind::Table { .. } => None,
        }
    }

    /// `γ_A(p; a_1, …, a_n)` on basis elements.
    pub fn gamma_basis(&self, n: usize, p: usize, args: &[usize]) -> Result<Vector> {
        if args.len() != n {
            return Err(Error::Shape(format!("{} inputs for arity {n}", args.len())));
        }
        if n > self.operad.bound() {
            return Err(Error::ArityBound { arity: n, bound: self.operad.bound() });
        }
        match &self.kind {
            Kind::Table { products, .. } => Ok(products
                .get(&(n, p, args.to_vec()))
                .cloned()
                .unwrap_or_default()),
            Kind::Free { words, .. } => {
                let parts: Vec<_> = args.iter().map(|&a| words.word(a)).collect();
                let weight: usize = parts.iter().map(|w| w.0).sum();
                if weight > words.weight_bound() {
                    return Err(Error::TruncationOverflow { weight, bound: words.weight_bound() });
                }
                let col = self.operad.collection();
                let mut e = 0;
                let mut seen = 0;
                let mut gens = Vec::with_capacity(weight);
                for w in &parts {
                    e += col.degree(w.0, w.1) * seen;
                    seen += words.gen_degree(&w.2);
                    gens.extend_from_slice(&w.2);
                }
                let inner: Vec<(usize, usize)> = parts.iter().map(|w| (w.0, w.1)).collect();
                let composed = self.operad.compose_full(n, p, &inner)?;
                let s = sign(e);
                let mut out = Vector::zero();
                for (q, c) in composed.iter() {
                    out.add_term(words.find(weight, q, &gens)?, c * &s);
                }
                Ok(out)
            }
        }
    }

    /// Multilinear `γ_A(p; a_1, …, a_n)`.
    pub fn gamma(&self, n: usize, p: &Vector, args: &[&Vector]) -> Result<Vector> {
        let mut out = Vector::zero();
        let mut err = None;
        for (q, x) in p.iter() {
            for_each_product(args, |idx, c| {
                if err.is_some() {
                    return;
                }
                match self.gamma_basis(n, q, idx) {
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

    /// `d_A` of a basis element; errors when it would leave the truncation.
    pub fn differential(&self, a: usize) -> Result<Vector> {
        match &self.kind {
            Kind::Table { differential, .. } => Ok(differential.map().column(a).clone()),
            Kind::Free { words, diff, .. } => diff[a].clone().ok_or(Error::TruncationOverflow {
                weight: words.weight(a) + 1,
                bound: words.weight_bound(),
            }),
        }
    }

    pub fn apply_differential(&self, v: &Vector) -> Result<Vector> {
        let mut out = Vector::zero();
        for (a, c) in v.iter() {
            out.add_scaled(&self.differential(a)?, c);
        }
        Ok(out)
    }

    /// Largest weight on which the differential is defined; `None` for
    /// algebras without a weight grading.
    pub fn interior_weight(&self) -> Option<usize> {
        match &self.kind {
            Kind::Table { .. } => None,
            Kind::Free { words, raise, .. } => Some(words.weight_bound().saturating_sub(*raise)),
        }
    }

    /// Whether `d(a)` is computable.
    pub fn in_interior(&self, a: usize) -> bool {
        match &self.kind {
            Kind::Table { .. } => true,
            Kind::Free { diff, .. } => diff[a].is_some(),
        }
    }

    /// Checks `d² = 0` wherever both applications stay in the truncation.
    pub fn check_square_zero(&self) -> Result<()> {
        for a in 0..self.dim() {
            let Ok(da) = self.differential(a) else { continue };
            if da.support().any(|b| !self.in_interior(b)) {
                continue;
            }
            if !self.apply_differential(&da)?.is_zero() {
                return Err(Error::Axiom(format!("{}: d² ≠ 0 on {}", self.name, self.space.symbol(a))));
            }
        }
        Ok(())
    }

    /// Compatibility of `γ_A` with partial compositions, and `d_A` being a
    /// derivation, on all basis tuples up to the operad's bound.
    pub fn check_axioms(&self) -> Result<()> {
        let op = &self.operad;
        let col = op.collection();
        let bound = op.bound();
        let dim = self.dim();
        for m in 2..=bound {
            for n in 2..=bound + 1 - m {
                for i in 1..=m {
                    for p in 0..col.space(m)?.dim() {
                        for q in 0..col.space(n)?.dim() {
                            let pq = op.compose_basis(m, p, i, n, q)?.clone();
                            for a in MultiIndex::new(vec![dim; m + n - 1]) {
                                let args: Vec<Vector> = a.iter().map(|&x| Vector::basis(x)).collect();
                                let refs: Vec<&Vector> = args.iter().collect();
                                let lhs = self.gamma(m + n - 1, &pq, &refs)?;
                                let inner = self.gamma_basis(n, q, &a[i - 1..i - 1 + n])?;
                                let mut outer: Vec<&Vector> = refs[..i - 1].to_vec();
                                outer.push(&inner);
                                outer.extend_from_slice(&refs[i - 1 + n..]);
                                let e = col.degree(n, q) * a[..i - 1].iter().map(|&x| self.space.degree(x)).sum::<i64>();
                                let rhs = self.gamma(m, &Vector::basis(p), &outer)?.scaled(&sign(e));
                                if lhs != rhs {
                                    return Err(Error::Axiom(format!(
                                        "{}: γ is not compatible with {} ∘_{i} {}",
                                        self.name,
                                        col.symbol(m, p),
                                        col.symbol(n, q)
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
        for n in 2..=bound {
            for p in 0..col.space(n)?.dim() {
                for a in MultiIndex::new(vec![dim; n]) {
                    self.check_derivation_at(n, p, &a)?;
                }
            }
        }
        Ok(())
    }

    fn check_derivation_at(&self, n: usize, p: usize, a: &[usize]) -> Result<()> {
        let col = self.operad.collection();
        let lhs = self.apply_differential(&self.gamma_basis(n, p, a)?)?;
        let args: Vec<Vector> = a.iter().map(|&x| Vector::basis(x)).collect();
        let refs: Vec<&Vector> = args.iter().collect();
        let dp = self.operad.differential(n)?.apply(&Vector::basis(p));
        let mut rhs = self.gamma(n, &dp, &refs)?;
        let mut passed = col.degree(n, p);
        for i in 0..n {
            let da = self.differential(a[i])?;
            let mut r = refs.clone();
            r[i] = &da;
            rhs.add_scaled(&self.gamma(n, &Vector::basis(p), &r)?, &sign(passed));
            passed += self.space.degree(a[i]);
        }
        if lhs != rhs {
            return Err(Error::Axiom(format!(
                "{}: d is not a derivation for {}",
                self.name,
                col.symbol(n, p)
            )));
        }
        Ok(())
    }
}
