use super::family::{BracketFamily, Mode};
use super::table::Multilinear;
use crate::linalg::{GradedSpace, Vector};

/// Unshuffles of type `(q, m−q)`: `perm[j]` is the input placed in slot `j`,
/// increasing within each of the two blocks.
pub fn unshuffles(q: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for first in subsets(m, q) {
        let mut perm = first.clone();
        perm.extend((0..m).filter(|i| !first.contains(i)));
        out.push(perm);
    }
    out
}

fn subsets(m: usize, q: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, q: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == q {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            go(i + 1, m, q, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, q, &mut Vec::new(), &mut out);
    out
}

/// `Σ ± outer_p ∘ inner_q` over `p + q = m + 1`: planar insertions at every
/// slot, or first-slot insertions scattered over unshuffles.
pub(crate) fn insertion_sum(
    mode: Mode,
    outer: &[Multilinear],
    inner: &[Multilinear],
    m: usize,
    src: &GradedSpace,
    degree: i64,
) -> Multilinear {
    let mut total = Multilinear::new(m, degree);
    let one = crate::linalg::scalar::one();
    for q in 1..=m {
        let p = m + 1 - q;
        let (Some(o), Some(i)) = (outer.get(p - 1), inner.get(q - 1)) else { continue };
        if o.is_zero() || i.is_zero() {
            continue;
        }
        match mode {
            Mode::Planar => {
                for slot in 1..=p {
                    total.add_assign(&Multilinear::nest(o, slot, i, src), &one);
                }
            }
            Mode::Symmetric => {
                let nested = Multilinear::nest(o, 1, i, src);
                total.add_assign(&Multilinear::scatter(&nested, &unshuffles(q, m), src), &one);
            }
        }
    }
    total
}

/// Outcome of the arity-`m` relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiArity {
    pub arity: usize,
    /// First basis tuple with a nonzero value, and that value.
    pub violation: Option<(Vec<usize>, Vector)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiReport {
    pub arities: Vec<JacobiArity>,
}

impl JacobiReport {
    pub fn holds(&self) -> bool {
        self.arities.iter().all(|a| a.violation.is_none())
    }

    pub fn first_failure(&self) -> Option<&JacobiArity> {
        self.arities.iter().find(|a| a.violation.is_some())
    }
}

/// Evaluates `Σ_{p+q=m+1} ± ℓ_p(ℓ_q(…), …)` as a sparse table for each
/// `m ≤ up_to`; tuples absent from the table are zero by construction.
pub fn check_generalized_jacobi(g: &BracketFamily, up_to: usize) -> JacobiReport {
    let ls = g.brackets();
    let arities = (1..=up_to.min(g.bound()))
        .map(|m| {
            let rel = insertion_sum(g.mode(), ls, ls, m, g.space(), -2);
            let violation = rel.entries().first().map(|(k, v)| ((*k).clone(), (*v).clone()));
            JacobiArity { arity: m, violation }
        })
        .collect();
    JacobiReport { arities }
}
