use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::linalg::scalar::{sign, Scalar};
use crate::linalg::tensor::{for_each_product, koszul_sign};
use crate::linalg::{GradedSpace, Vector};

/// Sparse multilinear map `V^{⊗n} → W`: only basis tuples with a nonzero
/// value are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Multilinear {
    arity: usize,
    degree: i64,
    entries: HashMap<Vec<usize>, Vector>,
}

impl Multilinear {
    pub fn new(arity: usize, degree: i64) -> Self {
        Multilinear { arity, degree, entries: HashMap::new() }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, key: &[usize]) -> Option<&Vector> {
        self.entries.get(key)
    }

    /// Entries sorted by key.
    pub fn entries(&self) -> Vec<(&Vec<usize>, &Vector)> {
        let mut out: Vec<_> = self.entries.iter().collect();
        out.sort_by(|a, b| a.0.cmp(b.0));
        out
    }

    pub fn add_at(&mut self, key: Vec<usize>, v: &Vector, c: &Scalar) {
        debug_assert_eq!(key.len(), self.arity);
        if v.is_zero() || c.is_zero() {
            return;
        }
        let slot = self.entries.entry(key.clone()).or_default();
        slot.add_scaled(v, c);
        if slot.is_zero() {
            self.entries.remove(&key);
        }
    }

    pub fn add_assign(&mut self, other: &Multilinear, c: &Scalar) {
        for (k, v) in &other.entries {
            self.add_at(k.clone(), v, c);
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Multilinear {
        let mut out = Multilinear::new(self.arity, self.degree);
        out.add_assign(self, c);
        out
    }

    pub fn sub(&self, other: &Multilinear) -> Multilinear {
        let mut out = self.clone();
        out.add_assign(other, &sign(1));
        out
    }

    /// `f(v_1, …, v_n)` on arbitrary vectors.
    pub fn eval(&self, args: &[&Vector]) -> Vector {
        let mut out = Vector::zero();
        if self.entries.is_empty() {
            return out;
        }
        for_each_product(args, |idx, c| {
            if let Some(v) = self.entries.get(idx) {
                out.add_scaled(v, &c);
            }
        });
        out
    }

    /// Index of entries by the basis elements occurring in their values.
    pub(crate) fn by_output(&self) -> HashMap<usize, Vec<(&Vec<usize>, &Scalar)>> {
        let mut out: HashMap<usize, Vec<_>> = HashMap::new();
        for (k, v) in &self.entries {
            for (b, c) in v.iter() {
                out.entry(b).or_default().push((k, c));
            }
        }
        out
    }

    /// `outer ∘_i inner` with sign `(−1)^{|inner|(|x_1|+…+|x_{i−1}|)}`;
    /// `i` is 1-based and `src` grades the inputs of `inner`.
    pub fn nest(outer: &Multilinear, i: usize, inner: &Multilinear, src: &GradedSpace) -> Multilinear {
        let mut out = Multilinear::new(outer.arity + inner.arity - 1, outer.degree + inner.degree);
        let index = inner.by_output();
        for (okey, oval) in &outer.entries {
            let Some(list) = index.get(&okey[i - 1]) else { continue };
            let before: i64 = okey[..i - 1].iter().map(|&x| src.degree(x)).sum();
            let s = sign(inner.degree * before);
            for (ikey, c) in list {
                let mut key = okey[..i - 1].to_vec();
                key.extend_from_slice(ikey);
                key.extend_from_slice(&okey[i..]);
                out.add_at(key, oval, &(*c * &s));
            }
        }
        out
    }

    /// `outer(inner_1 ⊗ … ⊗ inner_k)` with the Koszul sign
    /// `(−1)^{Σ_j |inner_j|(|x̄_1|+…+|x̄_{j−1}|)}`.
    pub fn compose_blocks(outer: &Multilinear, inners: &[&Multilinear], src: &GradedSpace) -> Multilinear {
        assert_eq!(outer.arity, inners.len());
        let arity = inners.iter().map(|m| m.arity).sum();
        let degree = outer.degree + inners.iter().map(|m| m.degree).sum::<i64>();
        let mut out = Multilinear::new(arity, degree);
        let indices: Vec<_> = inners.iter().map(|m| m.by_output()).collect();
        for (okey, oval) in &outer.entries {
            let lists: Option<Vec<_>> = okey.iter().zip(&indices).map(|(b, ix)| ix.get(b)).collect();
            let Some(lists) = lists else { continue };
            let mut pos = vec![0usize; lists.len()];
            'outer: loop {
                let mut key = Vec::with_capacity(arity);
                let mut c = Scalar::one();
                let mut e = 0i64;
                let mut seen = 0i64;
                for (j, list) in lists.iter().enumerate() {
                    let (ikey, ic) = list[pos[j]];
                    e += inners[j].degree * seen;
                    seen += ikey.iter().map(|&x| src.degree(x)).sum::<i64>();
                    key.extend_from_slice(ikey);
                    c *= ic;
                }
                out.add_at(key, oval, &(c * sign(e)));
                for j in (0..lists.len()).rev() {
                    pos[j] += 1;
                    if pos[j] < lists[j].len() {
                        continue 'outer;
                    }
                    pos[j] = 0;
                }
                break;
            }
        }
        out
    }

    /// `Σ_σ ε(σ; x) T(x_{σ(1)}, …, x_{σ(n)})` over the given permutations,
    /// with Koszul signs read from `src`.
    pub fn scatter(table: &Multilinear, perms: &[Vec<usize>], src: &GradedSpace) -> Multilinear {
        let mut out = Multilinear::new(table.arity, table.degree);
        for (key, v) in &table.entries {
            for sigma in perms {
                let mut x = vec![0usize; key.len()];
                for (j, &s) in sigma.iter().enumerate() {
                    x[s] = key[j];
                }
                let degrees: Vec<i64> = x.iter().map(|&b| src.degree(b)).collect();
                out.add_at(x, v, &sign(if koszul_sign(sigma, &degrees) < 0 { 1 } else { 0 }));
            }
        }
        out
    }

    /// Applies a linear map to every value.
    pub fn map_values(&self, degree_shift: i64, f: impl Fn(&Vector) -> Vector) -> Multilinear {
        let mut out = Multilinear::new(self.arity, self.degree + degree_shift);
        for (k, v) in &self.entries {
            out.add_at(k.clone(), &f(v), &sign(0));
        }
        out
    }
}
