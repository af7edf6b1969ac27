use std::sync::Arc;

use super::{open, pick, Command, Limits, Pick, Report};
use crate::algebra::{bar, cobar, Coalgebra};
use crate::convolution::{
    alg_morphism_to_mc, build_convolution, check_decomposition_identity, check_decomposition_identity_on_maps,
    check_strictness_l, check_strictness_r, coalg_morphism_to_mc, equalizer_check, hom_space, mc_to_alg_morphism,
    mc_to_coalg_morphism, ConvolutionAlgebra, Order,
};
use crate::error::{Error, Result};
use crate::linalg::{GradedSpace, LinMap, Vector};
use crate::operad::Cooperad;
use crate::scenarios::{random_cofree, random_map, seed_from_env};
use crate::slinf::{check_generalized_jacobi, Multilinear};
use crate::workspace::{builtin, Workspace};

/// Strictness and bijection suites are skipped above this many basis maps.
const SUITE_DIM: usize = 400;

/// Largest auxiliary bar or cobar construction built by the suites.
const AUX_DIM: usize = 600;

/// Dimension of the free or cofree construction of weight `w` on `d`
/// generators over a collection.
fn words_dim(col: &crate::operad::NsCollection, d: usize, w: usize) -> usize {
    (1..=w.min(col.bound()))
        .map(|n| col.space(n).map(|s| s.dim()).unwrap_or(0).saturating_mul(d.saturating_pow(n as u32)))
        .fold(0usize, |a, b| a.saturating_add(b))
}

/// `Some(reason)` when a bar or cobar construction at weight `w` is too large.
fn too_large(h: &ConvolutionAlgebra, w: usize) -> Option<String> {
    let bar = words_dim(h.alpha().cooperad().collection(), h.algebra().dim(), w);
    let cobar = words_dim(h.alpha().operad().collection(), h.coalgebra().dim(), w);
    (bar.max(cobar) > AUX_DIM).then(|| format!("bar/cobar at weight {w} would have {} basis words", bar.max(cobar)))
}

struct Pair {
    label: String,
    h: ConvolutionAlgebra,
}

/// Convolution algebras of all matching triples; those whose brackets
/// overflow a truncated free algebra are listed as skipped.
fn pairs(r: &mut Report, ws: &Workspace, p: &Pick) -> Result<Vec<Pair>> {
    let mut out = Vec::new();
    for (tn, t) in pick(&ws.twisting, p.twisting.as_deref(), "twisting morphisms")? {
        for (cn, c) in pick(&ws.coalgebras, p.coalgebra.as_deref(), "coalgebras")? {
            if c.cooperad().collection() != t.cooperad().collection() {
                continue;
            }
            for (an, a) in pick(&ws.algebras, p.algebra.as_deref(), "algebras")? {
                if a.operad().collection() != t.operad().collection() {
                    continue;
                }
                let label = format!("hom^{tn}({cn}, {an})");
                if let Some(h) = fits(r, &label, build_convolution(t.clone(), c.clone(), a.clone()))? {
                    out.push(Pair { label, h });
                }
            }
        }
    }
    Ok(out)
}

fn tuple(h: &ConvolutionAlgebra, key: &[usize]) -> String {
    symbols(h.space(), key)
}

fn symbols(space: &GradedSpace, key: &[usize]) -> String {
    key.iter().map(|&i| space.symbol(i)).collect::<Vec<_>>().join(", ")
}

/// A degree-0 map `C → A` of the workspace with every twisting morphism it
/// can be read against.
fn map_algebras(ws: &Workspace, name: &str, twisting: Option<&str>) -> Result<Vec<(String, ConvolutionAlgebra, Vector)>> {
    let spec = ws.document().maps.get(name).ok_or_else(|| Error::Reference(name.into()))?;
    let (Some(c), Some(a)) = (ws.coalgebras.get(&spec.source), ws.algebras.get(&spec.target)) else {
        return Err(Error::Invalid(format!("`{name}` is not a map from a coalgebra to an algebra")));
    };
    let mut out = Vec::new();
    for (tn, t) in pick(&ws.twisting, twisting, "twisting morphisms")? {
        if c.cooperad().collection() == t.cooperad().collection() && a.operad().collection() == t.operad().collection() {
            let h = build_convolution(t.clone(), c.clone(), a.clone())?;
            let v = h.from_map(&ws.maps[name])?;
            out.push((format!("{name} in hom^{tn}({}, {})", spec.source, spec.target), h, v));
        }
    }
    if out.is_empty() {
        return Err(Error::Invalid(format!("no twisting morphism matches `{name}`")));
    }
    Ok(out)
}

pub(super) fn dispatch(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Verify { source, all, limits } => verify(&open(&source.source)?, *all, *limits),
        Command::Brackets { source, pick, limits } => brackets(&open(&source.source)?, pick, *limits),
        Command::Mc { source, map, twisting } => mc(&open(&source.source)?, map, twisting.as_deref()),
        Command::Bijection { source, map, twisting, limits } => {
            let ws = open(&source.source)?;
            let mut r = Report::new("bijection");
            for (label, h, v) in map_algebras(&ws, map, twisting.as_deref())? {
                bijection_legs(&mut r, &label, &h, &v, limits.max_weight)?;
            }
            Ok(r)
        }
        Command::McRoundtrip { source, limits } => mc_roundtrip(&open(&source.source)?, *limits),
        Command::Strictness { source, pick, limits } => strictness(&open(&source.source)?, pick, *limits),
        Command::Compose { source, actions } => compose(&open(&source.source)?, &actions.phi, &actions.psi),
        Command::Equalizer { source, actions, limits } => equalizer(&open(&source.source)?, &actions.phi, &actions.psi, limits.max_weight),
        Command::Counterexample => counterexample(),
        Command::Decomposition { source, limits } => decomposition(source.as_deref(), *limits),
        Command::Export { source } => {
            let mut r = Report::new("export");
            r.line(open(&source.source)?.to_json());
            Ok(r)
        }
    }
}

fn verify(ws: &Workspace, all: bool, limits: Limits) -> Result<Report> {
    let mut r = Report::new("verify");
    for (kind, names) in [
        ("space", ws.spaces.keys().collect::<Vec<_>>()),
        ("operad", ws.operads.keys().collect()),
        ("cooperad", ws.cooperads.keys().collect()),
        ("twisting morphism", ws.twisting.keys().collect()),
        ("algebra", ws.algebras.keys().collect()),
        ("coalgebra", ws.coalgebras.keys().collect()),
        ("map", ws.maps.keys().collect()),
    ] {
        for n in names {
            r.line(format!("ok {kind} {n}"));
        }
    }
    let reparsed = Workspace::parse(&ws.to_json())?;
    r.check(reparsed.document() == ws.document(), "serialization round trip");

    for p in pairs(&mut r, ws, &Pick::default())? {
        let g = p.h.family();
        let planar = check_generalized_jacobi(g, limits.max_arity);
        r.check(planar.holds(), format!("{}: planar relations to arity {}", p.label, limits.max_arity.min(g.bound())));
        let sym = check_generalized_jacobi(&p.h.symmetric_family()?, limits.max_arity);
        r.check(sym.holds(), format!("{}: symmetrized Jacobi to arity {}", p.label, limits.max_arity.min(g.bound())));
        r.check(g.check_filtration().is_ok(), format!("{}: filtration", p.label));
        if all {
            if p.h.space().dim() > SUITE_DIM {
                r.line(format!("skip {}: strictness ({} basis maps)", p.label, p.h.space().dim()));
                continue;
            }
            strictness_pair(&mut r, &p, limits)?;
        }
    }

    for name in ws.maps.keys() {
        let spec = &ws.document().maps[name];
        if spec.degree != 0 || !ws.coalgebras.contains_key(&spec.source) || !ws.algebras.contains_key(&spec.target) {
            continue;
        }
        for (label, h, v) in map_algebras(ws, name, None).unwrap_or_default() {
            let is_mc = h.family().is_mc(&v)?;
            r.line(format!("{label}: {}", if is_mc { "Maurer–Cartan" } else { "not Maurer–Cartan" }));
            if all && is_mc && h.space().dim() <= SUITE_DIM {
                bijection_legs(&mut r, &label, &h, &v, limits.max_weight)?;
            }
        }
    }

    if all {
        for (n, c) in &ws.coalgebras {
            identity_on(&mut r, n, c, limits.max_arity)?;
        }
    }
    Ok(r)
}

fn brackets(ws: &Workspace, p: &Pick, limits: Limits) -> Result<Report> {
    let mut r = Report::new("brackets");
    for pair in pairs(&mut r, ws, p)? {
        let g = pair.h.family();
        r.line(format!("{} (dimension {})", pair.label, pair.h.space().dim()));
        for n in 1..=limits.max_arity.min(g.bound()) {
            for (key, v) in g.bracket(n)?.entries() {
                r.line(format!("  ℓ{n}({}) = {}", tuple(&pair.h, key), v.render(pair.h.space())));
            }
        }
    }
    Ok(r)
}

fn mc(ws: &Workspace, map: &str, twisting: Option<&str>) -> Result<Report> {
    let mut r = Report::new("mc");
    for (label, h, v) in map_algebras(ws, map, twisting)? {
        let res = h.family().mc_residual(&v)?;
        r.line(format!("{label}: residual {}", res.render(h.space())));
        r.check(res.is_zero(), format!("{label} is Maurer–Cartan"));
    }
    Ok(r)
}

fn bijection_legs(r: &mut Report, label: &str, h: &ConvolutionAlgebra, v: &Vector, w: usize) -> Result<()> {
    if !h.family().is_mc(v)? {
        r.fail(format!("{label}: not Maurer–Cartan"));
        return Ok(());
    }
    if let Some(why) = too_large(h, w) {
        r.line(format!("skip {label}: {why}"));
        return Ok(());
    }
    let alpha = h.alpha();
    let Some(b) = fits(r, label, bar(alpha, h.algebra(), w))? else { return Ok(()) };
    let legs = (|| -> Result<bool> {
        let g = mc_to_coalg_morphism(h, v, &b)?;
        let back = coalg_morphism_to_mc(h, &g, &b)?;
        Ok(back == *v && mc_to_coalg_morphism(h, &back, &b)? == g)
    })();
    r.check(matches!(legs, Ok(true)), format!("{label}: coalgebra morphism legs at weight {w}{}", err_suffix(&legs)));
    let Some(om) = fits(r, label, cobar(alpha, h.coalgebra(), w))? else { return Ok(()) };
    let legs = (|| -> Result<bool> {
        let g = mc_to_alg_morphism(h, v, &om)?;
        let back = alg_morphism_to_mc(h, &g, &om)?;
        Ok(back == *v && mc_to_alg_morphism(h, &back, &om)? == g)
    })();
    r.check(matches!(legs, Ok(true)), format!("{label}: algebra morphism legs at weight {w}{}", err_suffix(&legs)));
    Ok(())
}

/// A construction that overflows its truncation is reported as skipped.
fn fits<T>(r: &mut Report, label: &str, x: Result<T>) -> Result<Option<T>> {
    match x {
        Ok(v) => Ok(Some(v)),
        Err(e @ Error::TruncationOverflow { .. }) => {
            r.line(format!("skip {label}: {e}"));
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn err_suffix<T>(x: &Result<T>) -> String {
    match x {
        Err(e) => format!(" ({e})"),
        Ok(_) => String::new(),
    }
}

fn mc_roundtrip(ws: &Workspace, limits: Limits) -> Result<Report> {
    let mut r = Report::new("mc-roundtrip");
    let mut count = 0;
    for name in ws.maps.keys() {
        let spec = &ws.document().maps[name];
        if spec.degree != 0 || !ws.coalgebras.contains_key(&spec.source) || !ws.algebras.contains_key(&spec.target) {
            continue;
        }
        for (label, h, v) in map_algebras(ws, name, None).unwrap_or_default() {
            if h.family().is_mc(&v)? {
                bijection_legs(&mut r, &label, &h, &v, limits.max_weight)?;
                count += 1;
            }
        }
    }
    if count == 0 {
        r.line("no Maurer–Cartan elements: vacuous pass");
    }
    Ok(r)
}

fn strictness_pair(r: &mut Report, p: &Pair, limits: Limits) -> Result<()> {
    let k = limits.max_arity.min(3);
    if let Some(why) = too_large(&p.h, limits.max_weight) {
        r.line(format!("skip {}: strictness, {why}", p.label));
        return Ok(());
    }
    let (alpha, c, a) = (p.h.alpha(), p.h.coalgebra(), p.h.algebra());
    let w = limits.max_weight;
    let Some(b) = fits(r, &p.label, bar(alpha, a, w))? else { return Ok(()) };
    let rep = check_strictness_r(&p.h, &p.h, &b, k)?;
    r.check(rep.holds(), format!("{}: right action strict to k = {k}, {} tuples", p.label, rep.checked.iter().sum::<usize>()));
    let x = GradedSpace::new([("x", 0)])?.shared();
    let c_prime = Coalgebra::cofree("cofree(ℚx)", alpha.cooperad().clone(), x, None, w)?;
    let target = build_convolution(alpha.clone(), Arc::new(c_prime), a.clone())?;
    let Some(om) = fits(r, &p.label, cobar(alpha, c, w))? else { return Ok(()) };
    let rep = check_strictness_l(&p.h, &target, &om, k)?;
    r.check(rep.holds(), format!("{}: left action strict to k = {k}, {} tuples", p.label, rep.checked.iter().sum::<usize>()));
    Ok(())
}

fn strictness(ws: &Workspace, p: &Pick, limits: Limits) -> Result<Report> {
    let mut r = Report::new("strictness");
    for pair in pairs(&mut r, ws, p)? {
        strictness_pair(&mut r, &pair, limits)?;
    }
    Ok(r)
}

fn render_components(r: &mut Report, h: &ConvolutionAlgebra, target: &ConvolutionAlgebra, comps: &[Multilinear]) {
    for (i, t) in comps.iter().enumerate() {
        for (key, v) in t.entries() {
            r.line(format!("  θ{}({}) = {}", i + 1, tuple(h, key), v.render(target.space())));
        }
    }
}

fn compose(ws: &Workspace, phi: &str, psi: &str) -> Result<Report> {
    let s = ws.action_setup(phi, psi)?;
    let mut r = Report::new("compose");
    for order in [Order::LeftFirst, Order::RightFirst] {
        r.line(format!("order {}:", order.label()));
        let m = s.compose_action(order)?;
        render_components(&mut r, &s.hom_c_a, &s.hom_cp_ap, m.components());
    }
    match s.composite_difference()? {
        None => r.line("composites agree"),
        Some((n, key, v)) => r.line(format!(
            "composites differ at arity {n} on ({}): {}",
            tuple(&s.hom_c_a, &key),
            v.render(s.hom_cp_ap.space())
        )),
    }
    Ok(r)
}

fn equalizer(ws: &Workspace, phi: &str, psi: &str, w: usize) -> Result<Report> {
    let s = ws.action_setup(phi, psi)?;
    let rep = equalizer_check(&s, w)?;
    let mut r = Report::new("equalizer");
    let describe = |d: &Option<(usize, Vec<usize>, Vector)>, keys: &GradedSpace| match d {
        None => "none".to_string(),
        Some((n, key, v)) => format!("arity {n} on ({}): {}", symbols(keys, key), v.render(s.hom_cp_ap.space())),
    };
    r.line(format!("raw difference: {}", describe(&rep.raw_difference, s.hom_c_a.space())));
    let rectified = hom_space(s.c.space(), cobar(&s.alpha, &s.bar_a, w)?.space());
    r.line(format!("after the counit: {}", describe(&rep.rectified_difference, &rectified)));
    r.check(rep.inner_square_difference.is_none(), "rectified square commutes");
    r.check(rep.equalized(), format!("composites agree after precomposition with the counit at W = {w}"));
    Ok(r)
}

fn counterexample() -> Result<Report> {
    let ws = builtin("counterexample")?;
    let s = ws.action_setup("phi", "psi")?;
    let f = s.hom_c_a.from_map(&ws.maps["f"])?;
    let x = s.c_prime.space().require("x")?;
    let mut r = Report::new("counterexample");
    let mut values = Vec::new();
    for order in [Order::LeftFirst, Order::RightFirst] {
        let m = s.compose_action(order)?;
        let v = m.component(3)?.eval(&[&f, &f, &f]);
        let at_x = s.hom_cp_ap.to_map(&v, 0)?.column(x).render(s.a_prime.space());
        values.push(format!("order {}: {at_x}", order.label()));
    }
    let differ = values[0] != values[1];
    r.line(format!("{} — composites {}", values.join(", "), if differ { "differ" } else { "agree" }));
    r.check(values == ["order ℓ∘r: 0", "order r∘ℓ: w"], "composites at (f, f, f) on x are 0 and w");
    Ok(r)
}

fn identity_on(r: &mut Report, name: &str, c: &Coalgebra, max_arity: usize) -> Result<()> {
    let seed = seed_from_env();
    for n in 1..=max_arity.min(c.cooperad().bound()) {
        let rep = check_decomposition_identity(c, n)?;
        r.check(rep.holds(), format!("{name}: decomposition identity, n = {n}, {} terms", rep.terms));
        let maps = (0..n)
            .map(|j| random_map(seed.wrapping_add(j as u64 + 1), c, (j as i64 % 3) - 1))
            .collect::<Result<Vec<LinMap>>>()?;
        let rep = check_decomposition_identity_on_maps(c, &maps)?;
        r.check(rep.holds(), format!("{name}: map form, n = {n}"));
    }
    Ok(())
}

fn decomposition(source: Option<&str>, limits: Limits) -> Result<Report> {
    let mut r = Report::new("decomposition");
    match source {
        Some(src) => {
            let ws = open(src)?;
            for (n, c) in &ws.coalgebras {
                identity_on(&mut r, n, c, limits.max_arity)?;
            }
        }
        None => {
            let w = limits.max_arity.max(1);
            let co = Arc::new(Cooperad::coassociative(w, true)?);
            let gens = GradedSpace::new([("a", 0), ("b", 1), ("c", -1)])?.shared();
            identity_on(&mut r, "cofree(a, b, c)", &Coalgebra::cofree("cofree(a, b, c)", co, gens, None, w)?, limits.max_arity)?;
            let seed = seed_from_env();
            r.line(format!("seed {seed}"));
            for i in 0..3 {
                let c = random_cofree(seed.wrapping_add(i), 3, w)?;
                let name = format!("random #{i} {}", c.name());
                identity_on(&mut r, &name, &c, limits.max_arity)?;
            }
        }
    }
    Ok(r)
}

