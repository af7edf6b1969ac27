use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::GradedSpace;

pub const IDENTITY: &str = "id";

/// Arity-graded collection, reduced: nothing in arity 0 and arity 1 spanned
/// by the identity in degree 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NsCollection {
    arities: BTreeMap<usize, Arc<GradedSpace>>,
    bound: usize,
}

impl NsCollection {
    /// `components` lists arities ≥ 2; arity 1 is added automatically. Missing
    /// arities up to `bound` are zero.
    pub fn new(bound: usize, components: BTreeMap<usize, GradedSpace>) -> Result<Self> {
        if bound == 0 {
            return Err(Error::Invalid("arity bound must be at least 1".into()));
        }
        let mut arities = BTreeMap::new();
        arities.insert(1, GradedSpace::new([(IDENTITY, 0)])?.shared());
        for (n, space) in components {
            if n == 0 {
                return Err(Error::Invalid("reduced collections vanish in arity 0".into()));
            }
            if n == 1 {
                if space != *arities[&1] {
                    return Err(Error::Invalid("arity 1 must be spanned by `id` in degree 0".into()));
                }
                continue;
            }
            if n > bound {
                continue;
            }
            arities.insert(n, space.shared());
        }
        for n in 2..=bound {
            arities
                .entry(n)
                .or_insert_with(|| GradedSpace::zero().shared());
        }
        Ok(NsCollection { arities, bound })
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn space(&self, n: usize) -> Result<&Arc<GradedSpace>> {
        self.arities
            .get(&n)
            .ok_or(Error::ArityBound { arity: n, bound: self.bound })
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Arc<GradedSpace>)> + '_ {
        self.arities.iter().map(|(&n, s)| (n, s))
    }

    pub fn degree(&self, n: usize, i: usize) -> i64 {
        self.arities[&n].degree(i)
    }

    pub fn symbol(&self, n: usize, i: usize) -> &str {
        self.arities[&n].symbol(i)
    }

    /// Finds `(arity, index)` of a symbol.
    pub fn locate(&self, symbol: &str) -> Result<(usize, usize)> {
        self.arities
            .iter()
            .find_map(|(&n, s)| s.position(symbol).map(|i| (n, i)))
            .ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))
    }
}
