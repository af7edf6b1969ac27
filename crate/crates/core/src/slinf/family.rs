use std::sync::Arc;

use num_traits::One;

use super::table::Multilinear;
use crate::error::{Error, Result};
use crate::linalg::scalar::{factorial, Scalar};
use crate::linalg::tensor::permutations;
use crate::linalg::{GradedSpace, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Planar,
    Symmetric,
}

/// Brackets `ℓ_1, …, ℓ_N` of degree −1 on a graded carrier, with a weight
/// per basis element bounding how many bracket terms can be nonzero.
#[derive(Clone, Debug)]
pub struct BracketFamily {
    space: Arc<GradedSpace>,
    mode: Mode,
    brackets: Vec<Multilinear>,
    weights: Vec<usize>,
    length: usize,
}

impl BracketFamily {
    /// `brackets[n-1]` is `ℓ_n`. `length` is the largest `n` for which
    /// `ℓ_n(x, …, x)` may be nonzero.
    pub fn new(
        space: Arc<GradedSpace>,
        mode: Mode,
        brackets: Vec<Multilinear>,
        weights: Vec<usize>,
        length: usize,
    ) -> Result<Self> {
        if brackets.is_empty() {
            return Err(Error::Invalid("a bracket family needs at least ℓ_1".into()));
        }
        if weights.len() != space.dim() {
            return Err(Error::Shape("one filtration weight per basis element".into()));
        }
        for (i, l) in brackets.iter().enumerate() {
            let n = i + 1;
            if l.arity() != n {
                return Err(Error::Shape(format!("ℓ_{n} has arity {}", l.arity())));
            }
            if l.degree() != -1 {
                return Err(Error::Degree(format!("ℓ_{n} has degree {}", l.degree())));
            }
            for (key, v) in l.entries() {
                if key.iter().any(|&x| x >= space.dim()) || v.support().any(|b| b >= space.dim()) {
                    return Err(Error::Shape(format!("ℓ_{n} entry out of range")));
                }
                let d: i64 = key.iter().map(|&x| space.degree(x)).sum::<i64>() - 1;
                if v.support().any(|b| space.degree(b) != d) {
                    return Err(Error::Degree(format!("ℓ_{n} entry of wrong degree")));
                }
            }
        }
        Ok(BracketFamily { space, mode, brackets, weights, length })
    }

    /// `ℓ_1 = d`, all higher brackets zero.
    pub fn abelian(space: Arc<GradedSpace>, d: &crate::linalg::LinMap, bound: usize) -> Result<Self> {
        let mut l1 = Multilinear::new(1, -1);
        for x in 0..space.dim() {
            l1.add_at(vec![x], d.column(x), &Scalar::one());
        }
        let mut brackets = vec![l1];
        brackets.extend((2..=bound).map(|n| Multilinear::new(n, -1)));
        let weights = vec![1; space.dim()];
        BracketFamily::new(space, Mode::Symmetric, brackets, weights, 1)
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn bound(&self) -> usize {
        self.brackets.len()
    }

    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    pub fn filtration_length(&self) -> usize {
        self.length
    }

    pub fn bracket(&self, n: usize) -> Result<&Multilinear> {
        if n == 0 || n > self.bound() {
            return Err(Error::ArityBound { arity: n, bound: self.bound() });
        }
        Ok(&self.brackets[n - 1])
    }

    pub fn brackets(&self) -> &[Multilinear] {
        &self.brackets
    }

    pub fn eval_bracket(&self, n: usize, args: &[&Vector]) -> Result<Vector> {
        let l = self.bracket(n)?;
        if args.len() != n {
            return Err(Error::Shape(format!("ℓ_{n} takes {n} arguments, got {}", args.len())));
        }
        Ok(l.eval(args))
    }

    pub fn differential(&self, x: &Vector) -> Vector {
        self.brackets[0].eval(&[x])
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets[1..].iter().all(|l| l.is_zero())
    }

    /// Coefficient of `ℓ_n(x, …, x)` in the MC equation.
    pub(crate) fn mc_coefficient(&self, n: usize) -> Scalar {
        match self.mode {
            Mode::Planar => Scalar::one(),
            Mode::Symmetric => Scalar::one() / factorial(n),
        }
    }

    /// Symmetric family `ℓ^S_n(x) = Σ_σ ε(σ; x) ℓ_n(x_σ)`.
    pub fn symmetrize_family(&self) -> Result<BracketFamily> {
        if self.mode == Mode::Symmetric {
            return Err(Error::Invalid("family is already symmetric".into()));
        }
        let brackets = self
            .brackets
            .iter()
            .map(|l| Multilinear::scatter(l, &permutations(l.arity()), &self.space))
            .collect();
        BracketFamily::new(self.space.clone(), Mode::Symmetric, brackets, self.weights.clone(), self.length)
    }

    /// First input tuple at which ℓ_n fails graded symmetry, if any.
    pub fn symmetry_violation(&self) -> Option<(usize, Vec<usize>)> {
        for l in &self.brackets[1..] {
            for sigma in permutations(l.arity()) {
                let moved = Multilinear::scatter(l, &[sigma], &self.space);
                if moved != *l {
                    let diff = moved.sub(l);
                    let key = diff.entries()[0].0.clone();
                    return Some((l.arity(), key));
                }
            }
        }
        None
    }

    /// `ℓ_n` never lowers the summed weight of its inputs.
    pub fn check_filtration(&self) -> Result<()> {
        for l in &self.brackets[1..] {
            for (key, v) in l.entries() {
                let w: usize = key.iter().map(|&x| self.weights[x]).sum();
                if let Some(b) = v.support().find(|&b| self.weights[b] < w) {
                    return Err(Error::Invalid(format!(
                        "ℓ_{} lowers filtration weight into {}",
                        l.arity(),
                        self.space.symbol(b)
                    )));
                }
            }
        }
        Ok(())
    }

    /// `d x + Σ_{n≥2} c_n ℓ_n(x, …, x)` with `c_n = 1` (planar) or `1/n!`.
    pub fn mc_residual(&self, x: &Vector) -> Result<Vector> {
        if x.support().any(|b| self.space.degree(b) != 0) {
            return Err(Error::Degree("Maurer–Cartan elements live in degree 0".into()));
        }
        if self.length > self.bound() {
            return Err(Error::Divergence(format!(
                "filtration length {} exceeds arity bound {}",
                self.length,
                self.bound()
            )));
        }
        let mut out = Vector::zero();
        for n in 1..=self.bound() {
            let term = self.eval_bracket(n, &vec![x; n])?;
            if term.is_zero() {
                continue;
            }
            if n > self.length {
                return Err(Error::Divergence(format!("ℓ_{n}(x, …, x) ≠ 0 beyond the filtration length")));
            }
            out.add_scaled(&term, &self.mc_coefficient(n));
        }
        Ok(out)
    }

    pub fn is_mc(&self, x: &Vector) -> Result<bool> {
        Ok(self.mc_residual(x)?.is_zero())
    }
}

/// A Maurer–Cartan element of a bracket family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MCElement {
    value: Vector,
}

impl MCElement {
    pub fn new(g: &BracketFamily, value: Vector) -> Result<Self> {
        let r = g.mc_residual(&value)?;
        if !r.is_zero() {
            return Err(Error::NotMaurerCartan(r.render(g.space())));
        }
        Ok(MCElement { value })
    }

    /// Unchecked element, for residual computations.
    pub fn candidate(value: Vector) -> Self {
        MCElement { value }
    }

    pub fn value(&self) -> &Vector {
        &self.value
    }

    pub fn into_value(self) -> Vector {
        self.value
    }
}
