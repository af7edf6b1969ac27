use std::sync::Arc;

use convkit::algebra::{bar, cobar, Coalgebra};
use convkit::convolution::{build_convolution, check_strictness_l, check_strictness_r};
use convkit::linalg::GradedSpace;
use convkit::scenarios::{counterexample, desk_instances};

#[test]
fn right_action_is_strict_on_desk_instances() {
    for inst in desk_instances().unwrap() {
        let h = build_convolution(inst.alpha.clone(), inst.c.clone(), inst.a.clone()).unwrap();
        let b = bar(&inst.alpha, &inst.a, 4).unwrap();
        let r = check_strictness_r(&h, &h, &b, 3).unwrap();
        assert!(r.holds(), "{}: {:?}", inst.name, r.violations);
        assert!(r.checked.iter().sum::<usize>() > 0);
    }
}

#[test]
fn left_action_is_strict_on_desk_instances() {
    for inst in desk_instances().unwrap() {
        let h = build_convolution(inst.alpha.clone(), inst.c.clone(), inst.a.clone()).unwrap();
        let co = inst.alpha.cooperad().clone();
        let x = GradedSpace::new([("x", 0)]).unwrap().shared();
        let w = if inst.c.dim() <= 10 { 3 } else { 2 };
        let c_prime = Coalgebra::cofree("As^∨(ℚx)", co, x, None, w).unwrap();
        let target = build_convolution(inst.alpha.clone(), Arc::new(c_prime), inst.a.clone()).unwrap();
        let om = cobar(&inst.alpha, &inst.c, w).unwrap();
        let r = check_strictness_l(&h, &target, &om, 3).unwrap();
        assert!(r.holds(), "{}: {:?}", inst.name, r.violations);
        assert!(r.checked[0] > 0);
    }
}

#[test]
fn actions_are_strict_on_the_counterexample() {
    let ce = counterexample().unwrap();
    let s = &ce.setup;
    let r = check_strictness_r(&s.hom_c_a, &s.hom_c_ap, &s.bar_a, 3).unwrap();
    assert!(r.holds(), "{:?}", r.violations);
    let r = check_strictness_l(&s.hom_c_a, &s.hom_cp_a, &s.cobar_c, 3).unwrap();
    assert!(r.holds(), "{:?}", r.violations);
}
