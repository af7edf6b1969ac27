use std::sync::Arc;

use convkit::algebra::{bar, bar_projection, cobar, cofree_lift, free_extension, Algebra, Coalgebra};
use convkit::convolution::{build_convolution, hom_l, hom_r, ActionSetup, Order};
use convkit::linalg::scalar::int;
use convkit::linalg::{GradedSpace, LinMap};
use convkit::operad::{Cooperad, Operad, TwistingMorphism};
use convkit::scenarios::{contractible_pair, counterexample, idempotent_line};
use convkit::slinf::compose_inf;

fn line(sym: &str, deg: i64) -> Arc<GradedSpace> {
    GradedSpace::new([(sym, deg)]).unwrap().shared()
}

/// `proj ∘ Ψ̂ ∘ f̂`, the Maurer–Cartan element of the composite coalgebra map.
fn pushed_by_bar(c: &Coalgebra, bar_a: &Coalgebra, bar_ap: &Coalgebra, a_prime: &Algebra, f: &LinMap, psi: &LinMap) -> LinMap {
    let f_hat = cofree_lift(c, bar_a, f).unwrap();
    let psi_hat = cofree_lift(bar_a, bar_ap, psi).unwrap();
    bar_projection(bar_ap, a_prime).unwrap().compose(&psi_hat.compose(&f_hat).unwrap()).unwrap()
}

#[test]
fn pushing_along_the_right_action_is_composing_coalgebra_maps() {
    let ce = counterexample().unwrap();
    let s = &ce.setup;
    let f = s.hom_c_a.from_map(&ce.f).unwrap();
    let pushed = hom_r(&s.hom_c_a, &s.hom_c_ap, &s.bar_a, &s.psi).unwrap().mc_push(&f).unwrap();
    let bar_ap = bar(&s.alpha, &s.a_prime, 3).unwrap();
    let expected = pushed_by_bar(&s.c, &s.bar_a, &bar_ap, &s.a_prime, &ce.f, &s.psi);
    assert_eq!(pushed, s.hom_c_ap.from_map(&expected).unwrap());
    assert!(!pushed.is_zero());
}

#[test]
fn pushing_along_a_kappa_right_action() {
    let kappa = Arc::new(TwistingMorphism::kappa(4).unwrap());
    let op = kappa.operad().clone();
    let a = Arc::new(idempotent_line(op.clone(), "w").unwrap());
    let a_prime = Arc::new(contractible_pair(op).unwrap());
    let c = Arc::new(bar(&kappa, &a, 4).unwrap());
    let f_map = bar_projection(&c, &a).unwrap();
    let psi = LinMap::from_entries(
        c.space().clone(),
        a_prime.space().clone(),
        0,
        [("p", "id⊗w", int(1)), ("q", "μ2^∨⊗w⊗w", int(1))],
    )
    .unwrap();
    let h = build_convolution(kappa.clone(), c.clone(), a.clone()).unwrap();
    let h2 = build_convolution(kappa.clone(), c.clone(), a_prime.clone()).unwrap();
    let f = h.from_map(&f_map).unwrap();
    let pushed = hom_r(&h, &h2, &c, &psi).unwrap().mc_push(&f).unwrap();
    let bar_ap = bar(&kappa, &a_prime, 4).unwrap();
    let expected = pushed_by_bar(&c, &c, &bar_ap, &a_prime, &f_map, &psi);
    assert_eq!(pushed, h2.from_map(&expected).unwrap());
    let q_at = h2.index(1, c.space().require("μ2^∨⊗w⊗w").unwrap());
    assert_eq!(pushed.coeff(q_at), int(1));
}

#[test]
fn right_actions_compose_along_composite_morphisms() {
    let ce = counterexample().unwrap();
    let s = &ce.setup;
    let bar_ap = bar(&s.alpha, &s.a_prime, 3).unwrap();
    let psi2 = LinMap::from_entries(
        bar_ap.space().clone(),
        s.a_prime.space().clone(),
        0,
        [("w", "id⊗w", int(1)), ("w", "μ2^∨⊗w⊗w", int(3)), ("w", "μ3^∨⊗w⊗w⊗w", int(-1))],
    )
    .unwrap();
    let psi_hat = cofree_lift(&s.bar_a, &bar_ap, &s.psi).unwrap();
    let composite = psi2.compose(&psi_hat).unwrap();
    let one = hom_r(&s.hom_c_a, &s.hom_c_ap, &s.bar_a, &s.psi).unwrap();
    let two = hom_r(&s.hom_c_ap, &s.hom_c_ap, &bar_ap, &psi2).unwrap();
    let both = hom_r(&s.hom_c_a, &s.hom_c_ap, &s.bar_a, &composite).unwrap();
    assert_eq!(compose_inf(&two, &one).unwrap().components(), both.components());
}

#[test]
fn left_actions_compose_along_composite_morphisms() {
    let w = 4;
    let co = Arc::new(Cooperad::coassociative(w, false).unwrap());
    let op = Arc::new(Operad::associative(w).unwrap());
    let alpha = Arc::new(TwistingMorphism::zero(co.clone(), op.clone()));
    let c = Arc::new(Coalgebra::cofree("As^∨(ℚy)", co.clone(), line("y", 0), None, 3).unwrap());
    let c1 = Arc::new(Coalgebra::cofree("As^∨(ℚu)", co.clone(), line("u", 0), None, 3).unwrap());
    let c2 = Arc::new(Coalgebra::from_terms("ℚx", co, line("x", 0), None, []).unwrap());
    let a = Arc::new(idempotent_line(op, "w").unwrap());
    let om = cobar(&alpha, &c, w).unwrap();
    let om1 = cobar(&alpha, &c1, w).unwrap();
    let phi1 = LinMap::from_entries(
        c1.space().clone(),
        om.space().clone(),
        0,
        [
            ("id⊗(id⊗y)", "id⊗u", int(1)),
            ("id⊗(μ2^∨⊗y⊗y)", "μ2^∨⊗u⊗u", int(2)),
            ("id⊗(μ3^∨⊗y⊗y⊗y)", "μ3^∨⊗u⊗u⊗u", int(1)),
        ],
    )
    .unwrap();
    let phi2 = LinMap::from_entries(
        c2.space().clone(),
        om1.space().clone(),
        0,
        [("μ2⊗(id⊗u)⊗(id⊗u)", "x", int(1)), ("id⊗(μ2^∨⊗u⊗u)", "x", int(-1))],
    )
    .unwrap();
    let composite = free_extension(&om1, &om, &phi1).unwrap().compose(&phi2).unwrap();
    let h = build_convolution(alpha.clone(), c.clone(), a.clone()).unwrap();
    let h1 = build_convolution(alpha.clone(), c1, a.clone()).unwrap();
    let h2 = build_convolution(alpha, c2, a).unwrap();
    let one = hom_l(&h, &h1, &om, &phi1).unwrap();
    let two = hom_l(&h1, &h2, &om1, &phi2).unwrap();
    let both = hom_l(&h, &h2, &om, &composite).unwrap();
    assert_eq!(compose_inf(&two, &one).unwrap().components(), both.components());
    assert!(both.components().iter().any(|t| !t.is_zero()));
}

#[test]
fn strict_left_action_commutes_with_right_action() {
    let ce = counterexample().unwrap();
    let s = ce.setup;
    let cp_space = s.c_prime.space().clone();
    let psi = s.psi.clone();
    let strict = ActionSetup::new(
        s.alpha.clone(),
        s.c_prime.clone(),
        s.c.clone(),
        s.a.clone(),
        s.a_prime.clone(),
        3,
        3,
        |om| LinMap::from_entries(cp_space, om.space().clone(), 0, [("id⊗(id⊗y)", "x", int(1))]),
        |_| Ok(psi),
    )
    .unwrap();
    assert!(strict.composite_difference().unwrap().is_none());
    let lr = strict.compose_action(Order::LeftFirst).unwrap();
    assert!(lr.components().iter().any(|t| !t.is_zero()));
}
