use std::sync::Arc;

use convkit::algebra::{bar, Coalgebra};
use convkit::convolution::{check_decomposition_identity, check_decomposition_identity_on_maps};
use convkit::linalg::GradedSpace;
use convkit::operad::{Cooperad, TwistingMorphism};
use convkit::scenarios::{random_cofree, random_map, seed_from_env, triangular_plane};
use proptest::prelude::*;

#[test]
fn identity_on_three_cogenerators() {
    let co = Arc::new(Cooperad::coassociative(4, true).unwrap());
    let gens = GradedSpace::new([("a", 0), ("b", 1), ("c", -1)]).unwrap().shared();
    let c = Coalgebra::cofree("As^∨(a,b,c)", co, gens, None, 4).unwrap();
    for n in 1..=4 {
        let r = check_decomposition_identity(&c, n).unwrap();
        assert!(r.holds(), "n = {n}: {:?}", r.mismatch);
        assert_eq!(r.elements, c.dim());
    }
}

#[test]
fn identity_on_a_bar_construction_with_differential() {
    let kappa = TwistingMorphism::kappa(4).unwrap();
    let plane = triangular_plane(kappa.operad().clone()).unwrap();
    let b = bar(&kappa, &plane, 4).unwrap();
    for n in 1..=4 {
        assert!(check_decomposition_identity(&b, n).unwrap().holds());
    }
}

#[test]
fn map_form_on_the_environment_seed() {
    let seed = seed_from_env();
    let c = random_cofree(seed, 3, 4).unwrap();
    for n in 1..=4 {
        let maps: Vec<_> = (0..n).map(|j| random_map(seed + 1 + j as u64, &c, (j as i64 % 3) - 1).unwrap()).collect();
        let r = check_decomposition_identity_on_maps(&c, &maps).unwrap();
        assert!(r.holds(), "seed {seed}, n = {n}: {:?}", r.mismatch);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn identity_holds_on_random_cofree(seed in any::<u64>(), n in 1usize..=4) {
        let c = random_cofree(seed, 3, 4).unwrap();
        let r = check_decomposition_identity(&c, n).unwrap();
        prop_assert!(r.holds(), "{:?}", r.mismatch);
    }

    #[test]
    fn map_form_holds_on_random_cofree(seed in any::<u64>(), degrees in prop::collection::vec(-1i64..=1, 1..=4)) {
        let c = random_cofree(seed, 3, 4).unwrap();
        let maps: Vec<_> = degrees
            .iter()
            .enumerate()
            .map(|(j, &d)| random_map(seed.wrapping_add(j as u64 + 1), &c, d).unwrap())
            .collect();
        let r = check_decomposition_identity_on_maps(&c, &maps).unwrap();
        prop_assert!(r.holds(), "{:?}", r.mismatch);
    }
}
