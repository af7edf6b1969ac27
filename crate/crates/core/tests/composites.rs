use convkit::convolution::Order;
use convkit::linalg::Vector;
use convkit::scenarios::counterexample;

#[test]
fn composite_orders_disagree_on_the_planar_counterexample() {
    let ce = counterexample().unwrap();
    let s = &ce.setup;
    let f = s.hom_c_a.index(s.a.space().require("id⊗z").unwrap(), s.c.space().require("id⊗y").unwrap());
    let w_at_x = s.hom_cp_ap.index(0, ce.x);
    for (order, expected) in [(Order::LeftFirst, Vector::zero()), (Order::RightFirst, Vector::basis(w_at_x))] {
        let m = s.compose_action(order).unwrap();
        let got = m.component(3).unwrap().get(&[f, f, f]).cloned().unwrap_or_default();
        assert_eq!(got, expected, "{}", order.label());
    }
}
