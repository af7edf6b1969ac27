use convkit::convolution::build_convolution;
use convkit::scenarios::desk_instances;
use convkit::slinf::{check_generalized_jacobi, Mode};

#[test]
fn symmetrized_desk_families_satisfy_jacobi_to_arity_four() {
    for inst in desk_instances().unwrap() {
        let h = build_convolution(inst.alpha.clone(), inst.c.clone(), inst.a.clone()).unwrap();
        let sym = h.symmetric_family().unwrap();
        assert_eq!(sym.mode(), Mode::Symmetric);
        let r = check_generalized_jacobi(&sym, 4);
        assert!(r.holds(), "{}: {:?}", inst.name, r.first_failure());
    }
}

#[test]
fn planar_desk_families_satisfy_planar_relations() {
    for inst in desk_instances().unwrap() {
        let h = build_convolution(inst.alpha.clone(), inst.c.clone(), inst.a.clone()).unwrap();
        let r = check_generalized_jacobi(h.family(), 4);
        assert!(r.holds(), "{}: {:?}", inst.name, r.first_failure());
    }
}
