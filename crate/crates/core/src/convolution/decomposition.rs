use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::Coalgebra;
use crate::error::{Error, Result};
use crate::linalg::scalar::{sign, Scalar};
use crate::linalg::tensor::MultiIndex;
use crate::linalg::LinMap;

/// `(outer, position, inner, inputs)`: an element of `𝒞 ∘_(1) 𝒞` tensored
/// with a list of basis elements, written `outer ⊗ inner ⊗ inputs`.
type Key = ((usize, usize), usize, (usize, usize), Vec<usize>);

/// Result of comparing the two sides of a decomposition identity.
#[derive(Clone, Debug, Default)]
pub struct IdentityReport {
    pub elements: usize,
    pub terms: usize,
    pub mismatch: Option<String>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.mismatch.is_none()
    }
}

fn add(map: &mut BTreeMap<Key, Scalar>, key: Key, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let e = map.entry(key.clone()).or_insert_with(Scalar::zero);
    *e += c;
    if e.is_zero() {
        map.remove(&key);
    }
}

/// `(Δ_(1) ∘ 1_C)Δ_C^n(c)`.
fn split_after(c: &Coalgebra, n: usize, x: usize) -> Result<BTreeMap<Key, Scalar>> {
    let co = c.cooperad();
    let mut out = BTreeMap::new();
    for t in c.delta_n(n, x)? {
        for d in co.infinitesimal(n, t.op.1)? {
            let s = &t.coeff * &d.coeff;
            add(&mut out, (d.left, d.position, d.right, t.inputs.clone()), s);
        }
    }
    Ok(out)
}

/// `Σ (1_𝒞 ∘ (1 ⊗ … ⊗ Δ_C^{n₂} ⊗ … ⊗ 1))Δ_C^{n₁}(c)` over `n₁ + n₂ = n + 1`.
fn split_before(c: &Coalgebra, n: usize, x: usize) -> Result<BTreeMap<Key, Scalar>> {
    let col = c.cooperad().collection();
    let deg = |i: usize| c.space().degree(i);
    let mut out = BTreeMap::new();
    for n1 in 1..=n {
        let n2 = n + 1 - n1;
        for t in c.delta_n(n1, x)? {
            for i in 1..=n1 {
                let before: i64 = t.inputs[..i - 1].iter().map(|&d| deg(d)).sum();
                for u in c.delta_n(n2, t.inputs[i - 1])? {
                    let mut inputs = t.inputs[..i - 1].to_vec();
                    inputs.extend(&u.inputs);
                    inputs.extend(&t.inputs[i..]);
                    let s = &t.coeff * &u.coeff * sign(col.degree(u.op.0, u.op.1) * before);
                    add(&mut out, (t.op, i, u.op, inputs), s);
                }
            }
        }
    }
    Ok(out)
}

fn describe(key: &Key, lhs: Option<&Scalar>, rhs: Option<&Scalar>) -> String {
    let show = |s: Option<&Scalar>| s.map_or("0".to_string(), |s| s.to_string());
    format!(
        "outer {:?} at {} inner {:?} on {:?}: {} vs {}",
        key.0, key.1, key.2, key.3, show(lhs), show(rhs)
    )
}

fn compare(report: &mut IdentityReport, lhs: &BTreeMap<Key, Scalar>, rhs: &BTreeMap<Key, Scalar>) {
    report.elements += 1;
    report.terms += lhs.len();
    if report.mismatch.is_some() {
        return;
    }
    for key in lhs.keys().chain(rhs.keys()) {
        if lhs.get(key) != rhs.get(key) {
            report.mismatch = Some(describe(key, lhs.get(key), rhs.get(key)));
            return;
        }
    }
}

/// `(Δ_(1) ∘ 1_C)Δ_C^n = Σ_{n₁+n₂=n+1, 1≤i≤n₁} (1 ∘ (1^{⊗(i−1)} ⊗ Δ_C^{n₂} ⊗ 1^{⊗(n−i)}))Δ_C^{n₁}`
/// on every basis element of `c`.
pub fn check_decomposition_identity(c: &Coalgebra, n: usize) -> Result<IdentityReport> {
    let mut report = IdentityReport::default();
    for x in 0..c.dim() {
        let lhs = split_after(c, n, x)?;
        let rhs = split_before(c, n, x)?;
        compare(&mut report, &lhs, &rhs);
    }
    Ok(report)
}

/// Applies `f_1 ⊗ … ⊗ f_n` to `outer ⊗ inner ⊗ c_1 ⊗ … ⊗ c_n` with the
/// Koszul sign of each `f_j` passing `outer`, `inner` and `c_1, …, c_{j−1}`.
fn apply_maps(
    c: &Coalgebra,
    maps: &[LinMap],
    flat: &BTreeMap<Key, Scalar>,
) -> BTreeMap<Key, Scalar> {
    let col = c.cooperad().collection();
    let mut out = BTreeMap::new();
    for ((outer, i, inner, inputs), coeff) in flat {
        let mut e = 0i64;
        let mut passed = col.degree(outer.0, outer.1) + col.degree(inner.0, inner.1);
        for (f, &ci) in maps.iter().zip(inputs) {
            e += f.degree() * passed;
            passed += c.space().degree(ci);
        }
        let images: Vec<Vec<(usize, Scalar)>> = maps
            .iter()
            .zip(inputs)
            .map(|(f, &ci)| f.column(ci).iter().map(|(v, s)| (v, s.clone())).collect())
            .collect();
        for pick in MultiIndex::new(images.iter().map(Vec::len).collect()) {
            let mut s = coeff * sign(e);
            let mut vs = Vec::with_capacity(pick.len());
            for (j, &k) in pick.iter().enumerate() {
                s *= &images[j][k].1;
                vs.push(images[j][k].0);
            }
            add(&mut out, (*outer, *i, *inner, vs), s);
        }
    }
    out
}

/// The nested side with the maps applied tree by tree: the maps on the
/// inner block pass `inner` and the earlier outer inputs, those after the
/// block pass the whole inner block; `inner` is then brought next to
/// `outer`.
fn nested_with_maps(c: &Coalgebra, maps: &[LinMap], x: usize) -> Result<BTreeMap<Key, Scalar>> {
    let n = maps.len();
    let col = c.cooperad().collection();
    let deg = |i: usize| c.space().degree(i);
    let mut out = BTreeMap::new();
    for n1 in 1..=n {
        let n2 = n + 1 - n1;
        for t in c.delta_n(n1, x)? {
            let outer_deg = col.degree(t.op.0, t.op.1);
            for i in 1..=n1 {
                for u in c.delta_n(n2, t.inputs[i - 1])? {
                    let inner_deg = col.degree(u.op.0, u.op.1);
                    let mut slots: Vec<usize> = t.inputs[..i - 1].to_vec();
                    slots.extend(&u.inputs);
                    slots.extend(&t.inputs[i..]);
                    let mut e = 0i64;
                    let mut passed = outer_deg;
                    let mut moved = 0i64;
                    for (j, (f, &ci)) in maps.iter().zip(&slots).enumerate() {
                        if j == i - 1 {
                            passed += inner_deg;
                        }
                        e += f.degree() * passed;
                        passed += deg(ci);
                        if j < i - 1 {
                            moved += f.degree() + deg(ci);
                        }
                    }
                    e += inner_deg * moved;
                    let images: Vec<Vec<(usize, Scalar)>> = maps
                        .iter()
                        .zip(&slots)
                        .map(|(f, &ci)| f.column(ci).iter().map(|(v, s)| (v, s.clone())).collect())
                        .collect();
                    for pick in MultiIndex::new(images.iter().map(Vec::len).collect()) {
                        let mut s = &t.coeff * &u.coeff * sign(e);
                        let mut vs = Vec::with_capacity(n);
                        for (j, &k) in pick.iter().enumerate() {
                            s *= &images[j][k].1;
                            vs.push(images[j][k].0);
                        }
                        add(&mut out, (t.op, i, u.op, vs), s);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The identity after applying `f_1 ⊗ … ⊗ f_n`, `f_j: C → V`: the split
/// side is pushed through the maps, the nested side has the maps applied
/// block by block.
pub fn check_decomposition_identity_on_maps(c: &Coalgebra, maps: &[LinMap]) -> Result<IdentityReport> {
    let n = maps.len();
    if n == 0 {
        return Err(Error::Invalid("at least one map is needed".into()));
    }
    for f in maps {
        if **f.source() != **c.space() {
            return Err(Error::Shape("map not defined on the coalgebra".into()));
        }
        if f.target() != maps[0].target() {
            return Err(Error::Shape("maps with different targets".into()));
        }
    }
    let mut report = IdentityReport::default();
    for x in 0..c.dim() {
        let lhs = apply_maps(c, maps, &split_after(c, n, x)?);
        let rhs = nested_with_maps(c, maps, x)?;
        compare(&mut report, &lhs, &rhs);
    }
    Ok(report)
}
