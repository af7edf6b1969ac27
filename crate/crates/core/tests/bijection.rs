
use convkit::algebra::{bar, cobar};
use convkit::convolution::{
    alg_morphism_to_mc, build_convolution, coalg_morphism_to_mc, mc_to_alg_morphism, mc_to_coalg_morphism,
};
use convkit::scenarios::{counterexample, desk_instances};

fn cobar_weight(dim: usize) -> usize {
    if dim <= 10 { 3 } else { 2 }
}

#[test]
fn desk_instances_carry_maurer_cartan_elements() {
    for inst in desk_instances().unwrap() {
        let h = build_convolution(inst.alpha.clone(), inst.c.clone(), inst.a.clone()).unwrap();
        let f = h.from_map(&inst.mc).unwrap();
        assert!(h.family().is_mc(&f).unwrap(), "{}", inst.name);
    }
}

#[test]
fn four_legs_round_trip_on_desk_instances() {
    for inst in desk_instances().unwrap() {
        let h = build_convolution(inst.alpha.clone(), inst.c.clone(), inst.a.clone()).unwrap();
        let f = h.from_map(&inst.mc).unwrap();
        let b = bar(&inst.alpha, &inst.a, 4).unwrap();
        let g = mc_to_coalg_morphism(&h, &f, &b).unwrap();
        assert_eq!(coalg_morphism_to_mc(&h, &g, &b).unwrap(), f, "{}", inst.name);
        let f2 = coalg_morphism_to_mc(&h, &g, &b).unwrap();
        assert_eq!(mc_to_coalg_morphism(&h, &f2, &b).unwrap(), g, "{}", inst.name);

        let om = cobar(&inst.alpha, &inst.c, cobar_weight(inst.c.dim())).unwrap();
        let g = mc_to_alg_morphism(&h, &f, &om).unwrap();
        assert_eq!(alg_morphism_to_mc(&h, &g, &om).unwrap(), f, "{}", inst.name);
        let f2 = alg_morphism_to_mc(&h, &g, &om).unwrap();
        assert_eq!(mc_to_alg_morphism(&h, &f2, &om).unwrap(), g, "{}", inst.name);
    }
}

#[test]
fn counterexample_map_induces_coalgebra_and_algebra_morphisms() {
    let ce = counterexample().unwrap();
    let s = &ce.setup;
    let f = s.hom_c_a.from_map(&ce.f).unwrap();
    let b = bar(&s.alpha, &s.a, 3).unwrap();
    let g = mc_to_coalg_morphism(&s.hom_c_a, &f, &b).unwrap();
    assert_eq!(coalg_morphism_to_mc(&s.hom_c_a, &g, &b).unwrap(), f);
    let g = mc_to_alg_morphism(&s.hom_c_a, &f, &s.cobar_c).unwrap();
    assert_eq!(alg_morphism_to_mc(&s.hom_c_a, &g, &s.cobar_c).unwrap(), f);
}
