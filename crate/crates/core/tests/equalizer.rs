use convkit::convolution::equalizer_check;
use convkit::scenarios::{counterexample, kappa_action_setup};

#[test]
fn kappa_composites_differ_raw_and_rectified_square_commutes() {
    let s = kappa_action_setup().unwrap();
    let r = equalizer_check(&s, 4).unwrap();
    assert!(r.raw_difference.is_some());
    assert!(r.inner_square_difference.is_none());
}

#[test]
fn counit_precomposition_does_not_identify_the_composites() {
    // ε_A has a section, so a raw difference survives precomposition
    let s = kappa_action_setup().unwrap();
    let r = equalizer_check(&s, 4).unwrap();
    assert!(!r.equalized());
    let (n, _, v) = r.rectified_difference.expect("composites still differ");
    assert_eq!(n, 2);
    assert_eq!(v.len(), 1);
}

#[test]
fn rectification_needs_a_koszul_twisting_morphism() {
    let ce = counterexample().unwrap();
    assert!(ce.setup.composite_difference().unwrap().is_some());
    assert!(equalizer_check(&ce.setup, 3).is_err());
}
