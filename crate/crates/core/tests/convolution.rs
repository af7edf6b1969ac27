use std::sync::Arc;

use convkit::algebra::{Algebra, Coalgebra};
use convkit::convolution::{build_convolution, ConvolutionAlgebra};
use convkit::linalg::scalar::{int, sign};
use convkit::linalg::{GradedSpace, LinMap, Vector};
use convkit::operad::{Cooperad, Operad, TwistingMorphism};
use convkit::scenarios::{counterexample, desk_instances, idempotent_line};

/// `ℓ_n(f_1, …, f_n)` as a map `C → A`, computed from the maps directly.
fn oracle(h: &ConvolutionAlgebra, fs: &[LinMap]) -> LinMap {
    let (c, a, alpha) = (h.coalgebra(), h.algebra(), h.alpha());
    let col = c.cooperad().collection();
    let n = fs.len();
    let degree = fs.iter().map(LinMap::degree).sum::<i64>() - 1;
    let mut cols = vec![Vector::zero(); c.dim()];
    for x in 0..c.dim() {
        if n == 1 {
            let f = &fs[0];
            cols[x].add_assign(&a.apply_differential(f.column(x)).unwrap());
            let dc = c.differential().apply(&Vector::basis(x));
            cols[x].add_scaled(&f.apply(&dc), &-sign(f.degree()));
        }
        for t in c.delta(x).iter().filter(|t| t.op.0 == n) {
            let op = alpha.apply_basis(n, t.op.1).unwrap();
            let mut e = 0;
            let mut passed = col.degree(n, t.op.1);
            for (f, &ci) in fs.iter().zip(&t.inputs) {
                e += f.degree() * passed;
                passed += c.space().degree(ci);
            }
            let args: Vec<Vector> = fs.iter().zip(&t.inputs).map(|(f, &ci)| f.column(ci).clone()).collect();
            let refs: Vec<&Vector> = args.iter().collect();
            let v = a.gamma(n, op, &refs).unwrap();
            cols[x].add_scaled(&v, &(&t.coeff * sign(e)));
        }
    }
    LinMap::new(c.space().clone(), a.space().clone(), degree, cols).unwrap()
}

fn basis_map(h: &ConvolutionAlgebra, i: usize) -> LinMap {
    let d = h.space().degree(i);
    h.to_map(&Vector::basis(i), d).unwrap()
}

#[test]
fn brackets_agree_with_direct_evaluation() {
    for inst in desk_instances().unwrap().into_iter().filter(|i| i.c.dim() <= 30 && i.a.dim() == 1) {
        let h = build_convolution(inst.alpha.clone(), inst.c.clone(), inst.a.clone()).unwrap();
        let dim = h.space().dim();
        for i in 0..dim {
            let fi = basis_map(&h, i);
            let got = h.family().eval_bracket(1, &[&Vector::basis(i)]).unwrap();
            assert_eq!(got, h.from_map(&oracle(&h, &[fi.clone()])).unwrap(), "{} ℓ_1 at {i}", inst.name);
            for j in 0..dim {
                let fj = basis_map(&h, j);
                let got = h.family().eval_bracket(2, &[&Vector::basis(i), &Vector::basis(j)]).unwrap();
                let want = h.from_map(&oracle(&h, &[fi.clone(), fj])).unwrap();
                assert_eq!(got, want, "{} ℓ_2 at ({i}, {j})", inst.name);
            }
        }
    }
}

#[test]
fn zero_twisting_morphism_gives_no_higher_brackets() {
    let ce = counterexample().unwrap();
    for h in [&ce.setup.hom_c_a, &ce.setup.hom_c_ap, &ce.setup.hom_cp_a, &ce.setup.hom_cp_ap] {
        for n in 2..=h.family().bound() {
            assert!(h.family().bracket(n).unwrap().is_zero());
        }
    }
    // one-dimensional hom(C′, A′): x ↦ w, every element is Maurer–Cartan
    let hp = &ce.setup.hom_cp_ap;
    assert_eq!(hp.space().dim(), 1);
    assert!(hp.family().is_mc(&Vector::term(0, int(7))).unwrap());
}

#[test]
fn kappa_bracket_on_the_cofree_line() {
    let kappa = Arc::new(TwistingMorphism::kappa(3).unwrap());
    let y = GradedSpace::new([("y", 0)]).unwrap().shared();
    let c = Arc::new(Coalgebra::cofree("As^∨(ℚy)", kappa.cooperad().clone(), y, None, 2).unwrap());
    let a = Arc::new(idempotent_line(kappa.operad().clone(), "w").unwrap());
    let h = build_convolution(kappa, c, a).unwrap();
    let syms: Vec<_> = h.space().basis().map(|(_, s, d)| (s.to_string(), d)).collect();
    assert_eq!(syms, [("w←id⊗y".to_string(), 0), ("w←μ2^∨⊗y⊗y".to_string(), -1)]);
    // ℓ_2(f, f)(μ₂^∨⊗y⊗y) = μ₂(w, w) = w
    assert_eq!(h.family().eval_bracket(2, &[&Vector::basis(0), &Vector::basis(0)]).unwrap(), Vector::basis(1));
    assert_eq!(h.family().mc_residual(&Vector::term(0, int(2))).unwrap(), Vector::term(1, int(4)));
    assert!(h.family().bracket(1).unwrap().is_zero());
}

#[test]
fn filtration_weights_follow_the_coalgebra() {
    let inst = desk_instances().unwrap().remove(0);
    let h = build_convolution(inst.alpha.clone(), inst.c.clone(), inst.a.clone()).unwrap();
    let g = h.family();
    g.check_filtration().unwrap();
    assert_eq!(g.filtration_length(), 4);
    let levels: Vec<usize> = (0..inst.c.dim()).map(|x| inst.c.level(x)).collect();
    assert_eq!(levels, [1, 2, 3, 4]);
    assert_eq!(g.weights(), &levels[..]);
}

#[test]
fn mismatched_operads_are_rejected() {
    let co = Arc::new(Cooperad::coassociative(3, true).unwrap());
    let op3 = Arc::new(Operad::associative(3).unwrap());
    let op4 = Arc::new(Operad::associative(4).unwrap());
    let alpha = Arc::new(TwistingMorphism::zero(co.clone(), op3));
    let c = Arc::new(Coalgebra::from_terms("ℚx", co, GradedSpace::new([("x", 0)]).unwrap().shared(), None, []).unwrap());
    let a: Arc<Algebra> = Arc::new(idempotent_line(op4, "w").unwrap());
    assert!(build_convolution(alpha, c, a).is_err());
}
