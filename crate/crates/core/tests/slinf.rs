use std::sync::Arc;

use convkit::convolution::build_convolution;
use convkit::linalg::scalar::{int, ratio};
use convkit::linalg::{GradedSpace, LinMap, Vector};
use convkit::scenarios::desk_instances;
use convkit::slinf::{check_generalized_jacobi, compose_inf, is_gauge_witness, BracketFamily, InfMorphism, MCElement, Mode, Multilinear, PathElement};
use convkit::Error;
use proptest::prelude::*;

fn chain() -> Arc<GradedSpace> {
    GradedSpace::new([("x", 0), ("y", -1), ("z", -2)]).unwrap().shared()
}

fn family(l1: &[(usize, usize)], l2: &[([usize; 2], usize)]) -> BracketFamily {
    let mut a = Multilinear::new(1, -1);
    for &(s, t) in l1 {
        a.add_at(vec![s], &Vector::basis(t), &int(1));
    }
    let mut b = Multilinear::new(2, -1);
    for &(k, t) in l2 {
        b.add_at(k.to_vec(), &Vector::basis(t), &int(1));
    }
    BracketFamily::new(chain(), Mode::Planar, vec![a, b, Multilinear::new(3, -1)], vec![1, 1, 1], 2).unwrap()
}

#[test]
fn abelian_family_satisfies_jacobi() {
    let sp = chain();
    let d = LinMap::from_entries(sp.clone(), sp.clone(), -1, [("y", "x", int(1)), ("z", "y", int(0))]).unwrap();
    let g = BracketFamily::abelian(sp, &d, 4).unwrap();
    assert!(check_generalized_jacobi(&g, 4).holds());
}

#[test]
fn bracket_not_compatible_with_differential_fails_in_arity_two() {
    let g = family(&[(1, 2)], &[([0, 0], 1)]);
    let r = check_generalized_jacobi(&g, 3);
    assert_eq!(r.first_failure().unwrap().arity, 2);
}

#[test]
fn non_associative_bracket_fails_in_arity_three() {
    let g = family(&[], &[([0, 0], 1), ([0, 1], 2)]);
    let r = check_generalized_jacobi(&g, 3);
    let f = r.first_failure().unwrap();
    assert_eq!(f.arity, 3);
    assert_eq!(f.violation.as_ref().unwrap().0, vec![0, 0, 0]);
}

#[test]
fn maurer_cartan_residuals() {
    let g = family(&[], &[([0, 0], 1)]);
    assert_eq!(g.mc_residual(&Vector::basis(0)).unwrap(), Vector::basis(1));
    assert!(g.is_mc(&Vector::zero()).unwrap());
    assert!(matches!(g.mc_residual(&Vector::basis(1)), Err(Error::Degree(_))));
    assert!(matches!(MCElement::new(&g, Vector::basis(0)), Err(Error::NotMaurerCartan(_))));
    let sym = g.symmetrize_family().unwrap();
    // ℓ_2(x, x) doubles under symmetrization and 1/2! restores it
    assert_eq!(sym.mc_residual(&Vector::term(0, int(3))).unwrap(), Vector::term(1, int(9)));
}

#[test]
fn residual_beyond_filtration_length_diverges() {
    let mut l2 = Multilinear::new(2, -1);
    l2.add_at(vec![0, 0], &Vector::basis(1), &int(1));
    let g = BracketFamily::new(chain(), Mode::Planar, vec![Multilinear::new(1, -1), l2], vec![1, 1, 1], 1).unwrap();
    assert!(matches!(g.mc_residual(&Vector::basis(0)), Err(Error::Divergence(_))));
}

fn desk_family() -> Arc<BracketFamily> {
    let inst = desk_instances().unwrap().remove(2);
    let h = build_convolution(inst.alpha.clone(), inst.c.clone(), inst.a.clone()).unwrap();
    h.family().clone()
}

#[test]
fn identity_pushes_maurer_cartan_elements_to_themselves() {
    let inst = desk_instances().unwrap().remove(2);
    let h = build_convolution(inst.alpha.clone(), inst.c.clone(), inst.a.clone()).unwrap();
    let f = h.from_map(&inst.mc).unwrap();
    let id = InfMorphism::identity(h.family().clone()).unwrap();
    assert!(id.is_valid());
    assert_eq!(id.mc_push(&f).unwrap(), f);
}

#[test]
fn strict_scaling_is_not_an_infinity_morphism_of_a_nonabelian_family() {
    let g = desk_family();
    let two = LinMap::identity(g.space().clone()).scale(&int(2));
    let m = InfMorphism::strict(g.clone(), g, &two, 4).unwrap();
    assert!(!m.is_valid());
}

#[test]
fn composing_with_identity_is_neutral_and_composition_associates() {
    let g = desk_family();
    let id = InfMorphism::identity(g.clone()).unwrap();
    let mut theta2 = Multilinear::new(2, 0);
    let dim = g.space().dim();
    for a in 0..dim {
        for b in 0..dim {
            if g.space().degree(a) + g.space().degree(b) == g.space().degree(0) {
                theta2.add_at(vec![a, b], &Vector::basis(0), &ratio(1, 2));
            }
        }
    }
    let comps = |t2: &Multilinear| {
        let mut v = id.components().to_vec();
        v[1] = t2.clone();
        v
    };
    let m = InfMorphism::new(g.clone(), g.clone(), comps(&theta2)).unwrap();
    assert_eq!(compose_inf(&id, &m).unwrap().components(), m.components());
    assert_eq!(compose_inf(&m, &id).unwrap().components(), m.components());
    let mm = compose_inf(&m, &m).unwrap();
    let left = compose_inf(&compose_inf(&m, &m).unwrap(), &m).unwrap();
    let right = compose_inf(&m, &mm).unwrap();
    assert_eq!(left.components(), right.components());
    // with θ_1 = 1, the arity-2 component of m∘m is θ_2 + θ_2
    assert_eq!(mm.components()[1], theta2.scaled(&int(2)));
}

#[test]
fn gauge_witnesses() {
    let inst = desk_instances().unwrap().remove(2);
    let h = build_convolution(inst.alpha.clone(), inst.c.clone(), inst.a.clone()).unwrap();
    let g = h.family();
    let f = h.from_map(&inst.mc).unwrap();
    assert!(is_gauge_witness(g, &PathElement::constant(&f), &f, &f).unwrap());
    let zero = Vector::zero();
    assert!(is_gauge_witness(g, &PathElement::constant(&zero), &zero, &zero).unwrap());
    // straight line from 0 to a Maurer–Cartan element is not Maurer–Cartan
    let line = PathElement::new(vec![Vector::zero(), f.clone()], vec![]);
    assert!(!is_gauge_witness(g, &line, &zero, &f).unwrap());
}

#[test]
fn exact_difference_paths_and_reversal() {
    let sp1 = GradedSpace::new([("u", 0), ("v", 1)]).unwrap().shared();
    let d1 = LinMap::from_entries(sp1.clone(), sp1.clone(), -1, [("u", "v", int(1))]).unwrap();
    let g1 = BracketFamily::abelian(sp1, &d1, 3).unwrap();
    let x0 = Vector::term(0, int(5));
    let y = Vector::term(1, ratio(2, 3));
    let path = PathElement::exact_difference(&g1, &x0, &y).unwrap();
    let x1 = path.end();
    assert_eq!(x1, Vector::term(0, ratio(17, 3)));
    assert!(is_gauge_witness(&g1, &path, &x0, &x1).unwrap());
    assert!(is_gauge_witness(&g1, &path.reversed(), &x1, &x0).unwrap());
    assert_eq!(path.reversed().reversed(), path);
    // the same endpoints without the dt part fail
    let fake = PathElement::new(path.p.clone(), vec![]);
    assert!(!is_gauge_witness(&g1, &fake, &x0, &x1).unwrap());
    assert!(PathElement::exact_difference(&desk_family(), &Vector::zero(), &Vector::zero()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reversal_is_an_involution(p in prop::collection::vec(-5i64..=5, 0..5), q in prop::collection::vec(-5i64..=5, 0..5)) {
        let poly = |c: &[i64], b: usize| c.iter().map(|&k| Vector::term(b, int(k))).collect::<Vec<_>>();
        let path = PathElement::new(poly(&p, 0), poly(&q, 1));
        prop_assert_eq!(path.reversed().reversed(), path.clone());
        prop_assert_eq!(path.reversed().start(), path.end());
    }

    #[test]
    fn symmetrized_families_are_symmetric(entries in prop::collection::vec((0usize..3, 0usize..3, -3i64..=3), 0..6)) {
        let sp = GradedSpace::new([("a", 0), ("b", 0), ("c", -1)]).unwrap().shared();
        let mut l2 = Multilinear::new(2, -1);
        for (i, j, k) in entries {
            if i < 2 && j < 2 {
                l2.add_at(vec![i, j], &Vector::basis(2), &int(k));
            }
        }
        let g = BracketFamily::new(sp, Mode::Planar, vec![Multilinear::new(1, -1), l2], vec![1, 1, 1], 2).unwrap();
        let s = g.symmetrize_family().unwrap();
        prop_assert!(s.symmetry_violation().is_none());
    }
}
