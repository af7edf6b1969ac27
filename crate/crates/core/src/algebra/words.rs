use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::tensor::MultiIndex;
use crate::linalg::GradedSpace;
use crate::operad::NsCollection;

/// Basis `op ⊗ v_1 ⊗ … ⊗ v_n` of `⊕_{n≤W} 𝒬(n) ⊗ V^{⊗n}`, shared by free
/// algebras and cofree coalgebras.
#[derive(Clone, Debug)]
pub struct WordBasis {
    generators: Arc<GradedSpace>,
    weight: usize,
    words: Vec<Word>,
    index: HashMap<Word, usize>,
    space: Arc<GradedSpace>,
}

/// `(arity, operation index, generator indices)`.
pub type Word = (usize, usize, Vec<usize>);

fn wrap(symbol: &str) -> String {
    if symbol.contains('⊗') {
        format!("({symbol})")
    } else {
        symbol.to_string()
    }
}

impl WordBasis {
    pub fn new(ops: &NsCollection, generators: Arc<GradedSpace>, weight: usize) -> Result<Self> {
        if weight == 0 {
            return Err(Error::Invalid("weight truncation must be at least 1".into()));
        }
        let mut words = Vec::new();
        let mut basis = Vec::new();
        for n in 1..=weight.min(ops.bound()) {
            let space = ops.space(n)?;
            for op in 0..space.dim() {
                for w in MultiIndex::new(vec![generators.dim(); n]) {
                    let mut sym = space.symbol(op).to_string();
                    let mut deg = space.degree(op);
                    for &g in &w {
                        sym.push('⊗');
                        sym.push_str(&wrap(generators.symbol(g)));
                        deg += generators.degree(g);
                    }
                    basis.push((sym, deg));
                    words.push((n, op, w));
                }
            }
        }
        let index = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        Ok(WordBasis {
            generators,
            weight,
            words,
            index,
            space: GradedSpace::new(basis)?.shared(),
        })
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    pub fn generators(&self) -> &Arc<GradedSpace> {
        &self.generators
    }

    pub fn weight_bound(&self) -> usize {
        self.weight
    }

    pub fn word(&self, i: usize) -> &Word {
        &self.words[i]
    }

    pub fn weight(&self, i: usize) -> usize {
        self.words[i].0
    }

    pub fn find(&self, n: usize, op: usize, gens: &[usize]) -> Result<usize> {
        if gens.len() > self.weight {
            return Err(Error::TruncationOverflow { weight: gens.len(), bound: self.weight });
        }
        self.index
            .get(&(n, op, gens.to_vec()))
            .copied()
            .ok_or_else(|| Error::Shape(format!("no word of arity {n} with operation {op}")))
    }

    /// Index of `id ⊗ v`.
    pub fn generator(&self, v: usize) -> usize {
        self.index[&(1, 0, vec![v])]
    }

    pub fn words_of_weight(&self, n: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.words.len()).filter(move |&i| self.words[i].0 == n)
    }

    /// Sum of generator degrees of a sub-word.
    pub fn gen_degree(&self, gens: &[usize]) -> i64 {
        gens.iter().map(|&g| self.generators.degree(g)).sum()
    }
}
