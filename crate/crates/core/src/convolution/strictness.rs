use std::collections::{BTreeSet, HashMap};

use num_traits::One;

use super::action::{hom_l_components, hom_r_components};
use super::hom::{bracket_on_basis, ConvolutionAlgebra};
use crate::algebra::{Algebra, Coalgebra};
use crate::error::{Error, Result};
use crate::linalg::scalar::{sign, Scalar};
use crate::linalg::tensor::{compositions, MultiIndex};
use crate::linalg::{GradedSpace, LinMap, Vector};
use crate::operad::TwistingMorphism;
use crate::slinf::{insertion_sum, BracketFamily, Multilinear};

/// Outcome of comparing `θ^{ℓ_k(X_1, …, X_k)}` with `L_k(θ^{X_1}, …, θ^{X_k})`
/// and `θ^{∂X}` with `∂θ^X`.
#[derive(Clone, Debug, Default)]
pub struct StrictnessReport {
    /// Basis tuples compared, per `k` (index 0 is the differential).
    pub checked: Vec<usize>,
    /// Tuples whose bracket leaves a truncation and so were not compared.
    pub skipped: usize,
    pub violations: Vec<String>,
}

impl StrictnessReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `L_k(Θ_1, …, Θ_k)` on `hom(B g, h)` in arity `n`: `ℓ^h_k` applied to
/// consecutive blocks with the Koszul sign of the `Θ_j` passing earlier
/// inputs.
fn bracket_of_families(h: &BracketFamily, thetas: &[&[Multilinear]], n: usize, src: &GradedSpace) -> Result<Multilinear> {
    let k = thetas.len();
    let lk = h.bracket(k)?;
    let degree = -1 + thetas.iter().map(|t| t[0].degree()).sum::<i64>();
    let mut out = Multilinear::new(n, degree);
    for sizes in compositions(n, k) {
        let parts: Option<Vec<&Multilinear>> = sizes.iter().zip(thetas).map(|(&s, t)| t.get(s - 1)).collect();
        let Some(parts) = parts else { continue };
        out.add_assign(&Multilinear::compose_blocks(lk, &parts, src), &Scalar::one());
    }
    Ok(out)
}

/// `∂Θ = ℓ^h_1 Θ − (−1)^{|Θ|} Θ d_{B g}` in arity `n`.
fn differential_of_family(g: &BracketFamily, h: &BracketFamily, theta: &[Multilinear], n: usize) -> Multilinear {
    let d = theta[0].degree();
    let mut out = Multilinear::compose_blocks(h.bracket(1).expect("ℓ_1"), &[&theta[n - 1]], g.space());
    let ins = insertion_sum(g.mode(), theta, g.brackets(), n, g.space(), d - 1);
    out.add_assign(&ins, &sign(d + 1));
    out
}

fn linear_combination(families: &[Vec<Multilinear>], v: &Vector, degree: i64, bound: usize) -> Vec<Multilinear> {
    let mut out: Vec<Multilinear> = (1..=bound).map(|n| Multilinear::new(n, degree)).collect();
    for (x, c) in v.iter() {
        for (n, t) in families[x].iter().enumerate() {
            out[n].add_assign(t, c);
        }
    }
    out
}

fn compare(
    report: &mut StrictnessReport,
    label: &str,
    lhs: &[Multilinear],
    rhs: &[Multilinear],
) {
    for (n, (l, r)) in lhs.iter().zip(rhs).enumerate() {
        if l != r && report.violations.len() < 8 {
            report.violations.push(format!("{label}: arity {} differs", n + 1));
        }
    }
}

/// Tuples `(x_1, …, x_k)` of basis maps `a←c` of `hom(C, A)` on which
/// `ℓ_k` can be nonzero: `(c_1, …, c_k)` is the input list of a term of
/// `Δ_C^k`.
/// Over a truncated free `A` only tuples whose product stays inside the
/// truncation are listed.
fn bracket_candidates(c: &Coalgebra, a: &Algebra, k: usize) -> BTreeSet<Vec<(usize, usize)>> {
    let fits: Vec<usize> = match a.words() {
        Some(w) => (0..a.dim()).filter(|&x| w.weight(x) + k - 1 <= w.weight_bound()).collect(),
        None => (0..a.dim()).collect(),
    };
    let total = |tuple: &[usize]| match a.words() {
        Some(w) => tuple.iter().map(|&i| w.weight(fits[i])).sum::<usize>() <= w.weight_bound(),
        None => true,
    };
    let mut out = BTreeSet::new();
    for x in 0..c.dim() {
        for t in c.delta(x) {
            if t.op.0 != k {
                continue;
            }
            for tuple in MultiIndex::new(vec![fits.len(); k]) {
                if total(&tuple) {
                    out.insert(tuple.iter().zip(&t.inputs).map(|(&i, &ci)| (fits[i], ci)).collect());
                }
            }
        }
    }
    out
}

/// Tuples of basis elements on which `L_k(θ^{X_1}, …)` can be nonzero:
/// each `X_j` must reach the `j`-th input of some entry of `ℓ^h_k`.
/// Elements rejected by `fits` are left out.
fn family_candidates(
    h: &BracketFamily,
    families: &[Vec<Multilinear>],
    k: usize,
    fits: impl Fn(usize) -> bool,
) -> BTreeSet<Vec<usize>> {
    let mut reach: HashMap<usize, BTreeSet<usize>> = HashMap::new();
    for (x, fam) in families.iter().enumerate().filter(|(x, _)| fits(*x)) {
        for t in fam {
            for (_, v) in t.entries() {
                for b in v.support() {
                    reach.entry(b).or_default().insert(x);
                }
            }
        }
    }
    let mut out = BTreeSet::new();
    let Ok(lk) = h.bracket(k) else { return out };
    for (key, _) in lk.entries() {
        let lists: Option<Vec<Vec<usize>>> = key.iter().map(|b| reach.get(b).map(|s| s.iter().copied().collect())).collect();
        let Some(lists) = lists else { continue };
        for pick in MultiIndex::new(lists.iter().map(|l| l.len()).collect()) {
            out.insert(pick.iter().enumerate().map(|(j, &i)| lists[j][i]).collect());
        }
    }
    out
}

struct Side<'a> {
    alpha: &'a TwistingMorphism,
    /// Coalgebra and algebra of the space the `X` live in.
    c: &'a Coalgebra,
    a: &'a Algebra,
    families: Vec<Vec<Multilinear>>,
    g: &'a BracketFamily,
    h: &'a BracketFamily,
    bound: usize,
}

fn run(side: Side<'_>, k_max: usize) -> Result<StrictnessReport> {
    let nc = side.c.dim();
    let xdeg = |x: usize| side.a.space().degree(x / nc) - side.c.space().degree(x % nc);
    let mut report = StrictnessReport::default();
    let src = side.g.space();
    let theta_of = |v: &Vector, d: i64| linear_combination(&side.families, v, d, side.bound);

    let mut checked = 0;
    for x in 0..side.families.len() {
        let dx = match bracket_on_basis(side.alpha, side.c, side.a, &[(x / nc, x % nc)]) {
            Ok(v) => v,
            Err(Error::TruncationOverflow { .. }) => {
                report.skipped += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        let lhs = theta_of(&dx, xdeg(x) - 1);
        let rhs: Vec<Multilinear> = (1..=side.bound)
            .map(|n| differential_of_family(side.g, side.h, &side.families[x], n))
            .collect();
        compare(&mut report, &format!("differential at {}", x), &lhs, &rhs);
        checked += 1;
    }
    report.checked.push(checked);

    for k in 2..=k_max {
        let mut tuples: BTreeSet<Vec<usize>> = bracket_candidates(side.c, side.a, k)
            .into_iter()
            .map(|t| t.iter().map(|&(a, c)| a * nc + c).collect())
            .collect();
        let fits = |x: usize| match side.a.words() {
            Some(w) => w.weight(x / nc) + k - 1 <= w.weight_bound(),
            None => true,
        };
        tuples.extend(family_candidates(side.h, &side.families, k, fits));
        let mut checked = 0;
        for tuple in tuples {
            let maps: Vec<(usize, usize)> = tuple.iter().map(|&x| (x / nc, x % nc)).collect();
            if let Some(w) = side.a.words() {
                if maps.iter().map(|m| w.weight(m.0)).sum::<usize>() > w.weight_bound() {
                    report.skipped += 1;
                    continue;
                }
            }
            let v = match bracket_on_basis(side.alpha, side.c, side.a, &maps) {
                Ok(v) => v,
                Err(Error::TruncationOverflow { .. }) => {
                    report.skipped += 1;
                    continue;
                }
                Err(e) => return Err(e),
            };
            let degree = -1 + tuple.iter().map(|&x| xdeg(x)).sum::<i64>();
            let lhs = theta_of(&v, degree);
            let thetas: Vec<&[Multilinear]> = tuple.iter().map(|&x| side.families[x].as_slice()).collect();
            let rhs: Result<Vec<Multilinear>> =
                (1..=side.bound).map(|n| bracket_of_families(side.h, &thetas, n, src)).collect();
            compare(&mut report, &format!("ℓ_{k} at {:?}", tuple), &lhs, &rhs?);
            checked += 1;
        }
        report.checked.push(checked);
    }
    Ok(report)
}

/// `hom_r(1, −): hom^α(B_α A, A′) → hom(B hom^α(C, A), hom^α(C, A′))`
/// commutes with `ℓ_k` for `k ≤ k_max` and with differentials.
pub fn check_strictness_r(
    source: &ConvolutionAlgebra,
    target: &ConvolutionAlgebra,
    bar: &Coalgebra,
    k_max: usize,
) -> Result<StrictnessReport> {
    let a_prime = target.algebra();
    let bound = source.family().bound().min(target.family().bound());
    let nb = bar.dim();
    let mut families = Vec::with_capacity(nb * a_prime.dim());
    for ap in 0..a_prime.dim() {
        for b in 0..nb {
            let mut cols = vec![Vector::zero(); nb];
            cols[b] = Vector::basis(ap);
            let deg = a_prime.space().degree(ap) - bar.space().degree(b);
            let x = LinMap::new(bar.space().clone(), a_prime.space().clone(), deg, cols)?;
            families.push(hom_r_components(source.coalgebra(), bar, &x, bound)?);
        }
    }
    run(
        Side {
            alpha: source.alpha(),
            c: bar,
            a: a_prime,
            families,
            g: source.family(),
            h: target.family(),
            bound,
        },
        k_max,
    )
}

/// `hom_ℓ(−, 1): hom^α(C′, Ω_α C) → hom(B hom^α(C, A), hom^α(C′, A))`
/// commutes with `ℓ_k` for `k ≤ k_max` and with differentials, on the
/// tuples whose brackets stay inside the truncation of `Ω_α C`.
pub fn check_strictness_l(
    source: &ConvolutionAlgebra,
    target: &ConvolutionAlgebra,
    cobar: &Algebra,
    k_max: usize,
) -> Result<StrictnessReport> {
    let c_prime = target.coalgebra();
    let bound = source.family().bound().min(target.family().bound());
    let ncp = c_prime.dim();
    let mut families = Vec::with_capacity(ncp * cobar.dim());
    for w in 0..cobar.dim() {
        for cp in 0..ncp {
            let mut cols = vec![Vector::zero(); ncp];
            cols[cp] = Vector::basis(w);
            let deg = cobar.space().degree(w) - c_prime.space().degree(cp);
            let y = LinMap::new(c_prime.space().clone(), cobar.space().clone(), deg, cols)?;
            families.push(hom_l_components(cobar, source.algebra(), &y, bound, true)?);
        }
    }
    run(
        Side {
            alpha: source.alpha(),
            c: c_prime,
            a: cobar,
            families,
            g: source.family(),
            h: target.family(),
            bound,
        },
        k_max,
    )
}
