use super::collection::NsCollection;
use crate::error::{Error, Result};
use crate::linalg::scalar::sign;
use crate::linalg::Vector;

/// Partial-composition table on basis elements: `(m, a, i, n, b) ↦ a ∘_i b`.
pub(crate) trait PartialTable {
    fn basis_compose(&self, m: usize, a: usize, i: usize, n: usize, b: usize) -> Result<Vector>;

    fn linear_compose(&self, m: usize, p: &Vector, i: usize, n: usize, q: &Vector) -> Result<Vector> {
        let mut out = Vector::zero();
        for (a, x) in p.iter() {
            for (b, y) in q.iter() {
                out.add_scaled(&self.basis_compose(m, a, i, n, b)?, &(x * y));
            }
        }
        Ok(out)
    }
}

/// Sequential and parallel associativity on all basis triples whose
/// composite stays within the bound.
pub(crate) fn check_associativity(name: &str, c: &NsCollection, table: &impl PartialTable) -> Result<()> {
    let bound = c.bound();
    for na in 1..=bound {
        for nb in 1..=bound {
            for nc in 1..=bound {
                if na + nb + nc - 2 > bound {
                    continue;
                }
                let (da, db, dc) = (c.space(na)?.dim(), c.space(nb)?.dim(), c.space(nc)?.dim());
                for a in 0..da {
                    for b in 0..db {
                        for x in 0..dc {
                            check_triple(name, c, table, (na, a), (nb, b), (nc, x))?;
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn check_triple(
    name: &str,
    c: &NsCollection,
    table: &impl PartialTable,
    (na, a): (usize, usize),
    (nb, b): (usize, usize),
    (nc, x): (usize, usize),
) -> Result<()> {
    let ea = Vector::basis(a);
    let eb = Vector::basis(b);
    let ex = Vector::basis(x);
    for i in 1..=na {
        let ab = table.basis_compose(na, a, i, nb, b)?;
        for j in 1..=nb {
            let lhs = table.linear_compose(na + nb - 1, &ab, i + j - 1, nc, &ex)?;
            let bx = table.basis_compose(nb, b, j, nc, x)?;
            let rhs = table.linear_compose(na, &ea, i, nb + nc - 1, &bx)?;
            if lhs != rhs {
                return Err(Error::Axiom(format!(
                    "{name}: sequential associativity fails for ({} ∘_{i} {}) ∘_{} {}",
                    c.symbol(na, a),
                    c.symbol(nb, b),
                    i + j - 1,
                    c.symbol(nc, x)
                )));
            }
        }
        for j in i + 1..=na {
            let lhs = table.linear_compose(na + nb - 1, &ab, j + nb - 1, nc, &ex)?;
            let ax = table.basis_compose(na, a, j, nc, x)?;
            let rhs = table
                .linear_compose(na + nc - 1, &ax, i, nb, &eb)?
                .scaled(&sign(c.degree(nb, b) * c.degree(nc, x)));
            if lhs != rhs {
                return Err(Error::Axiom(format!(
                    "{name}: parallel associativity fails for {} with {} at {i} and {} at {j}",
                    c.symbol(na, a),
                    c.symbol(nb, b),
                    c.symbol(nc, x)
                )));
            }
        }
    }
    Ok(())
}
