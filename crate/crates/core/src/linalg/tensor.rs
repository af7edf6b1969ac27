//! Koszul-signed tensor calculus and the small amount of combinatorics the
//! rest of the crate needs (permutations, compositions, set partitions).

use std::sync::Arc;

use super::map::LinMap;
use super::scalar::Scalar;
use super::space::{GradedSpace, Vector};
use crate::error::{Error, Result};

/// Sign of reordering graded items: position `k` of the result holds item
/// `perm[k]`. Each transposition of two items of odd degree contributes −1.
pub fn koszul_sign(perm: &[usize], degrees: &[i64]) -> i64 {
    let mut e = 0i64;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] {
                e += degrees[perm[a]] * degrees[perm[b]];
            }
        }
    }
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Sign `(−1)^{Σ_i |f_i| · Σ_{j<i} |v_j|}` picked up by `(f_1⊗…⊗f_n)(v_1⊗…⊗v_n)`.
pub fn passing_sign(map_degrees: &[i64], elem_degrees: &[i64]) -> i64 {
    let mut e = 0i64;
    let mut seen = 0i64;
    for (fd, vd) in map_degrees.iter().zip(elem_degrees) {
        e += fd * seen;
        seen += vd;
    }
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Tensor product of maps on the canonical product bases, with Koszul signs.
pub fn tensor_map(maps: &[&LinMap]) -> Result<LinMap> {
    if maps.is_empty() {
        return Err(Error::Shape("tensor_map needs at least one map".into()));
    }
    if maps.len() == 1 {
        return Ok(maps[0].clone());
    }
    let sources: Vec<&GradedSpace> = maps.iter().map(|m| m.source().as_ref()).collect();
    let targets: Vec<&GradedSpace> = maps.iter().map(|m| m.target().as_ref()).collect();
    let source = Arc::new(GradedSpace::tensor(&sources));
    let target = Arc::new(GradedSpace::tensor(&targets));
    let degree = maps.iter().map(|m| m.degree()).sum();
    let map_degrees: Vec<i64> = maps.iter().map(|m| m.degree()).collect();
    let mut cols = Vec::with_capacity(source.dim());
    for idx in MultiIndex::new(sources.iter().map(|s| s.dim()).collect()) {
        let elem_degrees: Vec<i64> = idx
            .iter()
            .zip(&sources)
            .map(|(&i, s)| s.degree(i))
            .collect();
        let s = passing_sign(&map_degrees, &elem_degrees);
        let images: Vec<&Vector> = idx.iter().zip(maps).map(|(&i, m)| m.column(i)).collect();
        let mut col = Vector::zero();
        for_each_product(&images, |t, c| {
            col.add_term(GradedSpace::tensor_index(&targets, t), c * Scalar::from_integer(s.into()));
        });
        cols.push(col);
    }
    LinMap::new(source, target, degree, cols)
}

/// Calls `f(indices, coefficient)` for every term of `v_1 ⊗ … ⊗ v_n`.
pub fn for_each_product(vectors: &[&Vector], mut f: impl FnMut(&[usize], Scalar)) {
    let terms: Vec<Vec<(usize, &Scalar)>> = vectors.iter().map(|v| v.iter().collect()).collect();
    if terms.iter().any(|t| t.is_empty()) {
        return;
    }
    let mut pos = vec![0usize; terms.len()];
    let mut idx = vec![0usize; terms.len()];
    loop {
        let mut c = Scalar::from_integer(1.into());
        for (k, p) in pos.iter().enumerate() {
            let (i, x) = terms[k][*p];
            idx[k] = i;
            c *= x;
        }
        f(&idx, c);
        let mut k = terms.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            pos[k] += 1;
            if pos[k] < terms[k].len() {
                break;
            }
            pos[k] = 0;
        }
    }
}

/// Signed permutation expansion `Σ_σ (−1)^{σ(F)} f_{σ(1)} ⊗ … ⊗ f_{σ(n)}`,
/// returned as `(sign, permuted list)`.
pub fn koszul_symmetrize<T: Clone>(items: &[T], degree: impl Fn(&T) -> i64) -> Vec<(i64, Vec<T>)> {
    let degrees: Vec<i64> = items.iter().map(&degree).collect();
    permutations(items.len())
        .into_iter()
        .map(|p| {
            let s = koszul_sign(&p, &degrees);
            (s, p.iter().map(|&i| items[i].clone()).collect())
        })
        .collect()
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Ordered compositions of `n` into `k` positive parts.
pub fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            if n == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for first in 1..=n.saturating_sub(k - 1) {
            cur.push(first);
            go(n - first, k - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Set partitions of `0..n` into `k` nonempty blocks. Blocks are sorted and
/// listed in order of their smallest element.
pub fn set_partitions(n: usize, k: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(i: usize, n: usize, k: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            if blocks.len() == k {
                out.push(blocks.clone());
            }
            return;
        }
        if blocks.len() + (n - i) < k {
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(i);
            go(i + 1, n, k, blocks, out);
            blocks[b].pop();
        }
        if blocks.len() < k {
            blocks.push(vec![i]);
            go(i + 1, n, k, blocks, out);
            blocks.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Row-major iteration over `0..d_1 × … × 0..d_n`.
pub struct MultiIndex {
    dims: Vec<usize>,
    cur: Option<Vec<usize>>,
}

impl MultiIndex {
    pub fn new(dims: Vec<usize>) -> Self {
        let cur = if dims.contains(&0) {
            None
        } else {
            Some(vec![0; dims.len()])
        };
        MultiIndex { dims, cur }
    }
}

impl Iterator for MultiIndex {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.cur.clone()?;
        let cur = self.cur.as_mut().unwrap();
        let mut k = cur.len();
        loop {
            if k == 0 {
                self.cur = None;
                break;
            }
            k -= 1;
            cur[k] += 1;
            if cur[k] < self.dims[k] {
                break;
            }
            cur[k] = 0;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::int;

    fn sp(b: &[(&str, i64)]) -> Arc<GradedSpace> {
        GradedSpace::new(b.iter().map(|&(s, d)| (s, d))).unwrap().shared()
    }

    #[test]
    fn tensor_of_single_map_is_itself() {
        let v = sp(&[("v", 0), ("u", 1)]);
        let id = LinMap::identity(v);
        assert_eq!(tensor_map(&[&id]).unwrap(), id);
    }

    #[test]
    fn even_map_tensor_has_no_sign() {
        let v = sp(&[("v", 1)]);
        let w = sp(&[("w", 1)]);
        let t = sp(&[("t", 1)]);
        let f = LinMap::from_entries(v.clone(), t, 0, [("t", "v", int(1))]).unwrap();
        let id = LinMap::identity(w);
        let fw = tensor_map(&[&f, &id]).unwrap();
        assert_eq!(fw.entry(0, 0), int(1));
    }

    #[test]
    fn odd_maps_pick_up_koszul_sign() {
        let v = sp(&[("v", 1)]);
        let w = sp(&[("w", 0)]);
        let v2 = sp(&[("fv", 0)]);
        let w2 = sp(&[("gw", -1)]);
        let f = LinMap::from_entries(v, v2, -1, [("fv", "v", int(1))]).unwrap();
        let g = LinMap::from_entries(w, w2, -1, [("gw", "w", int(1))]).unwrap();
        let fg = tensor_map(&[&f, &g]).unwrap();
        assert_eq!(fg.entry(0, 0), int(-1));
    }

    #[test]
    fn symmetrize_signs() {
        let even = koszul_symmetrize(&[0i64, 0], |d| *d);
        assert!(even.iter().all(|(s, _)| *s == 1));
        let odd = koszul_symmetrize(&[1i64, 1], |d| *d);
        assert_eq!(odd[0].0, 1);
        assert_eq!(odd[1].0, -1);
        assert_eq!(koszul_symmetrize(&[5i64], |d| *d), vec![(1, vec![5])]);
    }

    #[test]
    fn combinatorics_counts() {
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(compositions(4, 2), vec![vec![1, 3], vec![2, 2], vec![3, 1]]);
        assert_eq!(set_partitions(4, 2).len(), 7);
        assert_eq!(set_partitions(3, 3), vec![vec![vec![0], vec![1], vec![2]]]);
        assert_eq!(MultiIndex::new(vec![2, 3]).count(), 6);
        assert_eq!(MultiIndex::new(vec![2, 0]).count(), 0);
    }
}
