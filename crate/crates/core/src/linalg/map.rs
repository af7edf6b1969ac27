use std::sync::Arc;

use super::scalar::{sign, Scalar};
use super::space::{GradedSpace, Vector};
use crate::error::{Error, Result};

/// Homogeneous linear map of a fixed degree, stored column-wise: column `j` is
/// the image of source basis vector `j`.
#[derive(Clone, Debug)]
pub struct LinMap {
    source: Arc<GradedSpace>,
    target: Arc<GradedSpace>,
    degree: i64,
    cols: Vec<Vector>,
}

impl PartialEq for LinMap {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.source == other.source
            && self.target == other.target
            && self.cols == other.cols
    }
}

impl Eq for LinMap {}

impl LinMap {
    /// Checks that every nonzero entry shifts degree by exactly `degree`.
    pub fn new(
        source: Arc<GradedSpace>,
        target: Arc<GradedSpace>,
        degree: i64,
        cols: Vec<Vector>,
    ) -> Result<Self> {
        if cols.len() != source.dim() {
            return Err(Error::Shape(format!(
                "{} columns for a source of dimension {}",
                cols.len(),
                source.dim()
            )));
        }
        for (j, col) in cols.iter().enumerate() {
            for i in col.support() {
                if i >= target.dim() {
                    return Err(Error::Shape(format!("row {i} outside the target")));
                }
                if target.degree(i) != source.degree(j) + degree {
                    return Err(Error::Degree(format!(
                        "entry {} <- {} does not have degree {degree}",
                        target.symbol(i),
                        source.symbol(j)
                    )));
                }
            }
        }
        Ok(LinMap {
            source,
            target,
            degree,
            cols,
        })
    }

    /// Like [`LinMap::new`] but drops entries of the wrong degree instead of
    /// failing. Used to take homogeneous components.
    pub fn homogeneous_part(
        source: Arc<GradedSpace>,
        target: Arc<GradedSpace>,
        degree: i64,
        cols: Vec<Vector>,
    ) -> Self {
        let cols = cols
            .into_iter()
            .enumerate()
            .map(|(j, c)| c.filtered(|i| target.degree(i) == source.degree(j) + degree))
            .collect();
        LinMap {
            source,
            target,
            degree,
            cols,
        }
    }

    pub fn zero(source: Arc<GradedSpace>, target: Arc<GradedSpace>, degree: i64) -> Self {
        let cols = vec![Vector::zero(); source.dim()];
        LinMap {
            source,
            target,
            degree,
            cols,
        }
    }

    pub fn identity(space: Arc<GradedSpace>) -> Self {
        let cols = (0..space.dim()).map(Vector::basis).collect();
        LinMap {
            source: space.clone(),
            target: space,
            degree: 0,
            cols,
        }
    }

    /// Builds from `(target symbol, source symbol, coefficient)` triples.
    pub fn from_entries<'a>(
        source: Arc<GradedSpace>,
        target: Arc<GradedSpace>,
        degree: i64,
        entries: impl IntoIterator<Item = (&'a str, &'a str, Scalar)>,
    ) -> Result<Self> {
        let mut cols = vec![Vector::zero(); source.dim()];
        for (t, s, c) in entries {
            cols[source.require(s)?].add_term(target.require(t)?, c);
        }
        LinMap::new(source, target, degree, cols)
    }

    pub fn source(&self) -> &Arc<GradedSpace> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedSpace> {
        &self.target
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn column(&self, j: usize) -> &Vector {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[Vector] {
        &self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> Scalar {
        self.cols[j].coeff(i)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vector::is_zero)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vector::len).sum()
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (j, c) in v.iter() {
            out.add_scaled(&self.cols[j], c);
        }
        out
    }

    /// `g ∘ f` with `self = g`.
    pub fn compose(&self, f: &LinMap) -> Result<LinMap> {
        if f.target != self.source && *f.target != *self.source {
            return Err(Error::Shape("compose: target(f) != source(g)".into()));
        }
        let cols = f.cols.iter().map(|c| self.apply(c)).collect();
        Ok(LinMap {
            source: f.source.clone(),
            target: self.target.clone(),
            degree: self.degree + f.degree,
            cols,
        })
    }

    fn check_same_shape(&self, other: &LinMap) -> Result<()> {
        if *self.source != *other.source || *self.target != *other.target {
            return Err(Error::Shape("maps between different spaces".into()));
        }
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::Degree(format!(
                "adding maps of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &LinMap) -> Result<LinMap> {
        self.check_same_shape(other)?;
        let degree = if self.is_zero() { other.degree } else { self.degree };
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| {
                let mut a = a.clone();
                a.add_assign(b);
                a
            })
            .collect();
        Ok(LinMap {
            source: self.source.clone(),
            target: self.target.clone(),
            degree,
            cols,
        })
    }

    pub fn sub(&self, other: &LinMap) -> Result<LinMap> {
        self.add(&other.scale(&-Scalar::from_integer(1.into())))
    }

    pub fn scale(&self, c: &Scalar) -> LinMap {
        LinMap {
            source: self.source.clone(),
            target: self.target.clone(),
            degree: self.degree,
            cols: self.cols.iter().map(|v| v.scaled(c)).collect(),
        }
    }

    /// The hom-differential `∂f = d_T ∘ f − (−1)^{|f|} f ∘ d_S`.
    pub fn commutator_with_differential(
        &self,
        d_source: &Differential,
        d_target: &Differential,
    ) -> Result<LinMap> {
        let left = d_target.map().compose(self)?;
        let right = self.compose(d_source.map())?;
        left.sub(&right.scale(&sign(self.degree)))
    }

    /// Entries as `(row, column, coefficient)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> + '_ {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.iter().map(move |(i, x)| (i, j, x)))
    }
}

/// Degree −1 endomorphism squaring to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Differential(LinMap);

impl Differential {
    pub fn new(map: LinMap) -> Result<Self> {
        if *map.source() != *map.target() {
            return Err(Error::Shape("a differential is an endomorphism".into()));
        }
        if map.degree() != -1 && !map.is_zero() {
            return Err(Error::Degree("a differential has degree -1".into()));
        }
        let sq = map.compose(&map)?;
        if !sq.is_zero() {
            return Err(Error::Axiom("d ∘ d != 0".into()));
        }
        Ok(Differential(LinMap {
            degree: -1,
            ..map
        }))
    }

    pub fn zero(space: Arc<GradedSpace>) -> Self {
        Differential(LinMap::zero(space.clone(), space, -1))
    }

    pub fn map(&self) -> &LinMap {
        &self.0
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        self.0.source()
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        self.0.apply(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::int;

    fn space(b: &[(&str, i64)]) -> Arc<GradedSpace> {
        GradedSpace::new(b.iter().map(|&(s, d)| (s, d))).unwrap().shared()
    }

    #[test]
    fn wrong_degree_entry_rejected() {
        let s = space(&[("a", 0)]);
        let t = space(&[("b", 0)]);
        assert!(matches!(
            LinMap::from_entries(s, t, -1, [("b", "a", int(1))]),
            Err(Error::Degree(_))
        ));
    }

    #[test]
    fn compose_with_identity() {
        let s = space(&[("a", 0), ("b", 1)]);
        let t = space(&[("x", 0), ("y", 1)]);
        let f = LinMap::from_entries(s.clone(), t.clone(), 0, [("x", "a", int(3)), ("y", "b", int(-2))]).unwrap();
        assert_eq!(LinMap::identity(t).compose(&f).unwrap(), f);
        assert_eq!(f.compose(&LinMap::identity(s)).unwrap(), f);
    }

    #[test]
    fn compose_shape_mismatch() {
        let s = space(&[("a", 0)]);
        let t = space(&[("x", 0)]);
        let f = LinMap::identity(s);
        let g = LinMap::identity(t);
        assert!(g.compose(&f).is_err());
    }

    #[test]
    fn chain_map_has_zero_commutator() {
        let s = space(&[("a1", 1), ("a0", 0)]);
        let d = Differential::new(LinMap::from_entries(s.clone(), s.clone(), -1, [("a0", "a1", int(1))]).unwrap()).unwrap();
        let id = LinMap::identity(s);
        assert!(id.commutator_with_differential(&d, &d).unwrap().is_zero());
    }

    #[test]
    fn nonzero_square_rejected() {
        let s = space(&[("a", 1), ("b", 0), ("c", -1)]);
        let m = LinMap::from_entries(s.clone(), s, -1, [("b", "a", int(1)), ("c", "b", int(1))]).unwrap();
        assert!(matches!(Differential::new(m), Err(Error::Axiom(_))));
    }
}
