use num_traits::One;

use super::family::BracketFamily;
use crate::error::{Error, Result};
use crate::linalg::scalar::{int, Scalar};
use crate::linalg::Vector;

/// Polynomial in `t` with vector coefficients; `coeffs[k]` multiplies `t^k`.
pub type Polynomial = Vec<Vector>;

/// Element `p(t) + q(t) dt` of `g ⊗ Ω_1`, with `|t| = 0` and `|dt| = −1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathElement {
    pub p: Polynomial,
    pub q: Polynomial,
}

fn trim(mut v: Polynomial) -> Polynomial {
    while v.last().is_some_and(|x| x.is_zero()) {
        v.pop();
    }
    v
}

fn poly_add(acc: &mut Polynomial, k: usize, v: &Vector, c: &Scalar) {
    if acc.len() <= k {
        acc.resize(k + 1, Vector::zero());
    }
    acc[k].add_scaled(v, c);
}

/// `ℓ_n(P_1, …, P_n)` expanded over the powers of `t`.
fn poly_bracket(g: &BracketFamily, args: &[&Polynomial]) -> Result<Polynomial> {
    let n = args.len();
    let mut out = Polynomial::new();
    let mut pos = vec![0usize; n];
    if args.iter().any(|a| a.is_empty()) {
        return Ok(out);
    }
    loop {
        let vs: Vec<&Vector> = (0..n).map(|i| &args[i][pos[i]]).collect();
        let v = g.eval_bracket(n, &vs)?;
        if !v.is_zero() {
            poly_add(&mut out, pos.iter().sum(), &v, &Scalar::one());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(trim(out));
            }
            i -= 1;
            pos[i] += 1;
            if pos[i] < args[i].len() {
                break;
            }
            pos[i] = 0;
        }
    }
}

impl PathElement {
    pub fn new(p: Polynomial, q: Polynomial) -> Self {
        PathElement { p: trim(p), q: trim(q) }
    }

    pub fn constant(x: &Vector) -> Self {
        PathElement::new(vec![x.clone()], vec![])
    }

    /// `p(0)`.
    pub fn start(&self) -> Vector {
        self.p.first().cloned().unwrap_or_default()
    }

    /// `p(1)`.
    pub fn end(&self) -> Vector {
        let mut out = Vector::zero();
        for v in &self.p {
            out.add_assign(v);
        }
        out
    }

    /// Image under `t ↦ 1 − t`, which sends `dt` to `−dt`.
    pub fn reversed(&self) -> PathElement {
        let flip = |poly: &Polynomial, c: Scalar| {
            let mut out = Polynomial::new();
            for (k, v) in poly.iter().enumerate() {
                // (1 − t)^k = Σ_j C(k, j) (−t)^j
                let mut binom = Scalar::one();
                for j in 0..=k {
                    let s = if j % 2 == 0 { binom.clone() } else { -binom.clone() };
                    poly_add(&mut out, j, v, &(s * &c));
                    binom = binom * int((k - j) as i64) / int(j as i64 + 1);
                }
            }
            out
        };
        PathElement::new(flip(&self.p, Scalar::one()), flip(&self.q, -Scalar::one()))
    }

    /// Maurer–Cartan residual in `g ⊗ Ω_1` as `(R_0(t), R_1(t))`, the
    /// coefficients of `1` and `dt`:
    /// `R_0 = d p + Σ c_n ℓ_n(p, …, p)`,
    /// `R_1 = p′ + d q + Σ c_n Σ_i ℓ_n(p, …, q, …, p)`.
    pub fn residual(&self, g: &BracketFamily) -> Result<(Polynomial, Polynomial)> {
        let degree_ok = |poly: &Polynomial, d: i64| poly.iter().all(|v| v.support().all(|b| g.space().degree(b) == d));
        if !degree_ok(&self.p, 0) || !degree_ok(&self.q, 1) {
            return Err(Error::Degree("a path has p in degree 0 and q in degree 1".into()));
        }
        let mut r0 = Polynomial::new();
        let mut r1 = Polynomial::new();
        for (k, v) in self.p.iter().enumerate() {
            if k > 0 {
                poly_add(&mut r1, k - 1, v, &int(k as i64));
            }
        }
        for n in 1..=g.bound() {
            let c = g.mc_coefficient(n);
            let all_p = vec![&self.p; n];
            for (k, v) in poly_bracket(g, &all_p)?.iter().enumerate() {
                poly_add(&mut r0, k, v, &c);
            }
            for i in 0..n {
                let mut args = all_p.clone();
                args[i] = &self.q;
                for (k, v) in poly_bracket(g, &args)?.iter().enumerate() {
                    poly_add(&mut r1, k, v, &c);
                }
            }
        }
        Ok((trim(r0), trim(r1)))
    }

    /// The path `x₀ + t·d(y)`, `q = −y`, joining `x₀` to `x₀ + d(y)` in an
    /// abelian family.
    pub fn exact_difference(g: &BracketFamily, x0: &Vector, y: &Vector) -> Result<PathElement> {
        if !g.is_abelian() {
            return Err(Error::Invalid("exact-difference paths need an abelian family".into()));
        }
        Ok(PathElement::new(vec![x0.clone(), g.differential(y)], vec![y.neg()]))
    }
}

/// The path is Maurer–Cartan in `g ⊗ Ω_1` and runs from `x0` to `x1`.
pub fn is_gauge_witness(g: &BracketFamily, path: &PathElement, x0: &Vector, x1: &Vector) -> Result<bool> {
    if path.start() != *x0 || path.end() != *x1 {
        return Ok(false);
    }
    let (r0, r1) = path.residual(g)?;
    Ok(r0.is_empty() && r1.is_empty())
}
