use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use super::scalar::{format_scalar, Scalar};
use crate::error::{Error, Result};

/// Finite-dimensional graded vector space over the rationals with a named
/// basis. Degrees are homological.
#[derive(Clone)]
pub struct GradedSpace {
    symbols: Vec<String>,
    degrees: Vec<i64>,
    index: HashMap<String, usize>,
}

impl GradedSpace {
    pub fn new<S: Into<String>>(basis: impl IntoIterator<Item = (S, i64)>) -> Result<Self> {
        let mut symbols = Vec::new();
        let mut degrees = Vec::new();
        let mut index = HashMap::new();
        for (s, d) in basis {
            let s = s.into();
            if index.insert(s.clone(), symbols.len()).is_some() {
                return Err(Error::DuplicateSymbol(s));
            }
            symbols.push(s);
            degrees.push(d);
        }
        Ok(GradedSpace {
            symbols,
            degrees,
            index,
        })
    }

    pub fn zero() -> Self {
        GradedSpace::new(Vec::<(String, i64)>::new()).unwrap()
    }

    pub fn shared(self) -> Arc<Self> {
        Arc::new(self)
    }

    pub fn dim(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbol(&self, i: usize) -> &str {
        &self.symbols[i]
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    pub fn position(&self, symbol: &str) -> Option<usize> {
        self.index.get(symbol).copied()
    }

    pub fn require(&self, symbol: &str) -> Result<usize> {
        self.position(symbol)
            .ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))
    }

    pub fn basis(&self) -> impl Iterator<Item = (usize, &str, i64)> + '_ {
        self.symbols
            .iter()
            .zip(&self.degrees)
            .enumerate()
            .map(|(i, (s, &d))| (i, s.as_str(), d))
    }

    /// Indices of basis vectors of the given degree.
    pub fn of_degree(&self, d: i64) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == d).collect()
    }

    /// Tensor product with the canonical product basis. Symbols are joined by
    /// `⊗` and flattened, so regrouping a product does not change the names.
    /// Basis order is lexicographic in the factor indices (last factor fastest).
    pub fn tensor(factors: &[&GradedSpace]) -> GradedSpace {
        let mut basis: Vec<(String, i64)> = vec![(String::new(), 0)];
        for (k, f) in factors.iter().enumerate() {
            let mut next = Vec::with_capacity(basis.len() * f.dim());
            for (s, d) in &basis {
                for (_, fs, fd) in f.basis() {
                    let name = if k == 0 {
                        fs.to_string()
                    } else {
                        format!("{s}⊗{fs}")
                    };
                    next.push((name, d + fd));
                }
            }
            basis = next;
        }
        if factors.is_empty() {
            basis.clear();
        }
        GradedSpace::new(basis).expect("product symbols of distinct bases are distinct")
    }

    /// Flat index of a product basis element in [`GradedSpace::tensor`].
    pub fn tensor_index(factors: &[&GradedSpace], idx: &[usize]) -> usize {
        idx.iter()
            .zip(factors)
            .fold(0, |acc, (&i, f)| acc * f.dim() + i)
    }
}

impl PartialEq for GradedSpace {
    fn eq(&self, other: &Self) -> bool {
        self.symbols == other.symbols && self.degrees == other.degrees
    }
}

impl Eq for GradedSpace {}

impl fmt::Debug for GradedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.symbols.iter().zip(&self.degrees))
            .finish()
    }
}

/// Sparse coordinate vector; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Vector(BTreeMap<usize, Scalar>);

impl Vector {
    pub fn zero() -> Self {
        Vector(BTreeMap::new())
    }

    pub fn basis(i: usize) -> Self {
        let mut v = Vector::zero();
        v.add_term(i, Scalar::from_integer(1.into()));
        v
    }

    pub fn term(i: usize, c: Scalar) -> Self {
        let mut v = Vector::zero();
        v.add_term(i, c);
        v
    }

    pub fn add_term(&mut self, i: usize, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(i) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Vector, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (&i, x) in &other.0 {
            self.add_term(i, x * c);
        }
    }

    pub fn add_assign(&mut self, other: &Vector) {
        for (&i, x) in &other.0 {
            self.add_term(i, x.clone());
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Vector {
        if c.is_zero() {
            return Vector::zero();
        }
        Vector(self.0.iter().map(|(&i, x)| (i, x * c)).collect())
    }

    pub fn neg(&self) -> Vector {
        Vector(self.0.iter().map(|(&i, x)| (i, -x)).collect())
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        let mut v = self.clone();
        v.add_scaled(other, &-Scalar::from_integer(1.into()));
        v
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.0.get(&i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> + '_ {
        self.0.iter().map(|(&i, c)| (i, c))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.keys().copied()
    }

    /// Keeps only the coordinates selected by `keep`.
    pub fn filtered(&self, keep: impl Fn(usize) -> bool) -> Vector {
        Vector(
            self.0
                .iter()
                .filter(|(&i, _)| keep(i))
                .map(|(&i, c)| (i, c.clone()))
                .collect(),
        )
    }

    /// Renders against a basis, e.g. `2*a + -1/2*b`.
    pub fn render(&self, space: &GradedSpace) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.iter()
            .map(|(i, c)| {
                if *c == Scalar::from_integer(1.into()) {
                    space.symbol(i).to_string()
                } else {
                    format!("{}*{}", format_scalar(c), space.symbol(i))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl FromIterator<(usize, Scalar)> for Vector {
    fn from_iter<T: IntoIterator<Item = (usize, Scalar)>>(iter: T) -> Self {
        let mut v = Vector::zero();
        for (i, c) in iter {
            v.add_term(i, c);
        }
        v
    }
}

/// A vector tied to its carrier space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub space: Arc<GradedSpace>,
    pub coords: Vector,
}

impl Element {
    pub fn new(space: Arc<GradedSpace>, coords: Vector) -> Result<Self> {
        if let Some(i) = coords.support().find(|&i| i >= space.dim()) {
            return Err(Error::Shape(format!(
                "coordinate {i} outside a space of dimension {}",
                space.dim()
            )));
        }
        Ok(Element { space, coords })
    }

    pub fn from_symbols<'a>(
        space: Arc<GradedSpace>,
        terms: impl IntoIterator<Item = (&'a str, Scalar)>,
    ) -> Result<Self> {
        let mut coords = Vector::zero();
        for (s, c) in terms {
            coords.add_term(space.require(s)?, c);
        }
        Ok(Element { space, coords })
    }

    /// Degree of a homogeneous element; `None` for zero or inhomogeneous.
    pub fn degree(&self) -> Option<i64> {
        let mut degs = self.coords.support().map(|i| self.space.degree(i));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn render(&self) -> String {
        self.coords.render(&self.space)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::int;

    #[test]
    fn duplicate_symbols_rejected() {
        assert!(matches!(
            GradedSpace::new([("a", 0), ("a", 1)]),
            Err(Error::DuplicateSymbol(_))
        ));
    }

    #[test]
    fn tensor_names_flatten() {
        let v = GradedSpace::new([("a", 1), ("b", 0)]).unwrap();
        let w = GradedSpace::new([("x", -1)]).unwrap();
        let vw = GradedSpace::tensor(&[&v, &w]);
        let vw_v = GradedSpace::tensor(&[&vw, &v]);
        let flat = GradedSpace::tensor(&[&v, &w, &v]);
        assert_eq!(vw_v, flat);
        assert_eq!(vw.symbol(0), "a⊗x");
        assert_eq!(vw.degree(0), 0);
        assert_eq!(GradedSpace::tensor_index(&[&v, &w, &v], &[1, 0, 1]), 3);
    }

    #[test]
    fn vectors_prune_zeros() {
        let mut v = Vector::basis(3);
        v.add_term(3, int(-1));
        assert!(v.is_zero());
        v.add_term(1, int(0));
        assert!(v.is_empty());
    }

    #[test]
    fn element_degree() {
        let s = GradedSpace::new([("a", 1), ("b", 0)]).unwrap().shared();
        let e = Element::from_symbols(s.clone(), [("a", int(2))]).unwrap();
        assert_eq!(e.degree(), Some(1));
        let e = Element::from_symbols(s, [("a", int(2)), ("b", int(1))]).unwrap();
        assert_eq!(e.degree(), None);
    }
}
