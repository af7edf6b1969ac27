use convkit::linalg::scalar::ratio;
use convkit::linalg::{GradedSpace, Vector};
use convkit_py::{to_terms, to_vector, Terms};

#[test]
fn terms_round_trip() {
    let sp = GradedSpace::new([("a", 0), ("b", 1)]).unwrap();
    let mut v = Vector::term(0, ratio(-3, 4));
    v.add_term(1, ratio(2, 1));
    let t = to_terms(&sp, &v);
    assert_eq!(t, Terms::from([("a".into(), "-3/4".into()), ("b".into(), "2".into())]));
    assert_eq!(to_vector(&sp, &t).unwrap(), v);
}

#[test]
fn unknown_symbols_and_bad_scalars_are_rejected() {
    let sp = GradedSpace::new([("a", 0)]).unwrap();
    assert!(to_vector(&sp, &Terms::from([("z".into(), "1".into())])).is_err());
    assert!(to_vector(&sp, &Terms::from([("a".into(), "x".into())])).is_err());
}
