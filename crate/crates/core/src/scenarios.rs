//! Built-in data: the planar counterexample in which the two composite
//! orders of ∞-morphism actions disagree, small `κ` instances used by the
//! test suites and the CLI, and seeded random coalgebras.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{bar, bar_projection, Algebra, Coalgebra};
use crate::convolution::ActionSetup;
use crate::error::Result;
use crate::linalg::scalar::{int, ratio, Scalar};
use crate::linalg::{GradedSpace, LinMap, Vector};
use crate::operad::{Cooperad, Operad, TwistingMorphism};

fn line(sym: &str, deg: i64) -> Arc<GradedSpace> {
    GradedSpace::new([(sym, deg)]).expect("one symbol").shared()
}

/// `ℚw` with `μ₂(w, w) = w`.
pub fn idempotent_line(op: Arc<Operad>, sym: &str) -> Result<Algebra> {
    Algebra::associative(format!("ℚ{sym}"), op, line(sym, 0), None, [((0, 0), Vector::basis(0))])
}

/// A line in degree `deg` with zero product.
pub fn square_zero_line(op: Arc<Operad>, sym: &str, deg: i64) -> Result<Algebra> {
    Algebra::associative(format!("ℚ{sym}"), op, line(sym, deg), None, [])
}

/// `ℚ{e, n}` in degree 0 with `e·e = e`, `e·n = n` and all other products zero.
pub fn triangular_plane(op: Arc<Operad>) -> Result<Algebra> {
    let sp = GradedSpace::new([("e", 0), ("n", 0)])?.shared();
    Algebra::associative(
        "ℚ{e,n}",
        op,
        sp,
        None,
        [((0, 0), Vector::basis(0)), ((0, 1), Vector::basis(1))],
    )
}

/// Data of the counterexample: `α = 0` on the ungraded `As^∨ → As`.
#[derive(Clone, Debug)]
pub struct Counterexample {
    pub setup: ActionSetup,
    /// `f(id⊗y) = id⊗z` in `hom(C, A)`.
    pub f: LinMap,
    /// Index of `x` in `C′`.
    pub x: usize,
}

/// `C′ = ℚx` with trivial coproduct, `C = As^∨(ℚy)`, `A = As(ℚz)` and
/// `A′ = ℚw`, all at weight 3, with
/// `Φ(x) = μ₂⊗((μ₂^∨⊗y⊗y)⊗(id⊗y))` and `Ψ` sending `id⊗(id⊗z)` and
/// `μ₂^∨⊗((id⊗z)⊗(id⊗z))` to `w`.
pub fn counterexample() -> Result<Counterexample> {
    let w = 3;
    let co = Arc::new(Cooperad::coassociative(w, false)?);
    let op = Arc::new(Operad::associative(w)?);
    let alpha = Arc::new(TwistingMorphism::zero(co.clone(), op.clone()));
    let c_prime = Arc::new(Coalgebra::from_terms("ℚx", co.clone(), line("x", 0), None, [])?);
    let c = Arc::new(Coalgebra::cofree("As^∨(ℚy)", co, line("y", 0), None, w)?);
    let a = Arc::new(Algebra::free("As(ℚz)", op.clone(), line("z", 0), None, w)?);
    let a_prime = Arc::new(idempotent_line(op, "w")?);
    let cp_space = c_prime.space().clone();
    let ap_space = a_prime.space().clone();
    let setup = ActionSetup::new(
        alpha,
        c_prime,
        c.clone(),
        a.clone(),
        a_prime,
        w,
        w,
        |cobar| {
            LinMap::from_entries(cp_space, cobar.space().clone(), 0, [("μ2⊗(μ2^∨⊗y⊗y)⊗(id⊗y)", "x", int(1))])
        },
        |bar_a| {
            LinMap::from_entries(
                bar_a.space().clone(),
                ap_space,
                0,
                [("w", "id⊗(id⊗z)", int(1)), ("w", "μ2^∨⊗(id⊗z)⊗(id⊗z)", int(1))],
            )
        },
    )?;
    let f = LinMap::from_entries(c.space().clone(), a.space().clone(), 0, [("id⊗z", "id⊗y", int(1))])?;
    Ok(Counterexample { setup, f, x: 0 })
}

/// A convolution algebra `hom^α(C, A)` with a chosen Maurer–Cartan element.
#[derive(Clone, Debug)]
pub struct DeskInstance {
    pub name: String,
    pub alpha: Arc<TwistingMorphism>,
    pub c: Arc<Coalgebra>,
    pub a: Arc<Algebra>,
    pub mc: LinMap,
}

/// Small `κ` instances at weight 4: bar constructions with their universal
/// projections (and one pushed along an algebra map), plus a cofree
/// coalgebra on cogenerators of degrees 0 and -1 into an idempotent line.
pub fn desk_instances() -> Result<Vec<DeskInstance>> {
    let w = 4;
    let kappa = Arc::new(TwistingMorphism::kappa(w)?);
    let op = kappa.operad().clone();
    let co = kappa.cooperad().clone();
    let mut out = Vec::new();

    let line_w = Arc::new(idempotent_line(op.clone(), "w")?);
    let b_line = Arc::new(bar(&kappa, &line_w, w)?);
    out.push(DeskInstance {
        name: "B(ℚw) → ℚw".into(),
        alpha: kappa.clone(),
        mc: bar_projection(&b_line, &line_w)?,
        c: b_line,
        a: line_w.clone(),
    });

    let plane = Arc::new(triangular_plane(op.clone())?);
    let b_plane = Arc::new(bar(&kappa, &plane, w)?);
    let pi = bar_projection(&b_plane, &plane)?;
    let to_line = LinMap::from_entries(plane.space().clone(), line_w.space().clone(), 0, [("w", "e", int(1))])?;
    out.push(DeskInstance {
        name: "B(ℚ{e,n}) → ℚw".into(),
        alpha: kappa.clone(),
        mc: to_line.compose(&pi)?,
        c: b_plane.clone(),
        a: line_w,
    });
    out.push(DeskInstance {
        name: "B(ℚ{e,n}) → ℚ{e,n}".into(),
        alpha: kappa.clone(),
        mc: pi,
        c: b_plane,
        a: plane,
    });

    let line_v = Arc::new(idempotent_line(op, "v")?);
    let gens = GradedSpace::new([("y", 0), ("u", -1)])?.shared();
    let cofree = Arc::new(Coalgebra::cofree("As^∨(ℚ{y,u})", co, gens, None, w)?);
    let f = LinMap::from_entries(cofree.space().clone(), line_v.space().clone(), 0, [("v", "μ3^∨⊗y⊗u⊗u", ratio(3, 2))])?;
    out.push(DeskInstance {
        name: "As^∨(ℚ{y,u}) → ℚv".into(),
        alpha: kappa,
        c: cofree,
        a: line_v,
        mc: f,
    });
    Ok(out)
}

/// `ℚ{p, q}` with `|q| = 1`, `d q = p` and zero products.
pub fn contractible_pair(op: Arc<Operad>) -> Result<Algebra> {
    let sp = GradedSpace::new([("p", 0), ("q", 1)])?.shared();
    let d = LinMap::from_entries(sp.clone(), sp.clone(), -1, [("p", "q", int(1))])?;
    Algebra::associative("ℚ{p,q}", op, sp, Some(d), [])
}

/// A `κ` instance with both morphisms non-strict, `Ψ` failing to be
/// multiplicative on the nose: `A = ℚe` idempotent, `A′ = ℚ{p, q}`,
/// `Ψ(id⊗e) = p`, `Ψ(μ₂^∨⊗e⊗e) = q`; `C = As^∨(ℚ{y, z})` and bar
/// constructions at weight 2, `C′ = ℚx` and `Φ(x) = μ₂⊗(id⊗y)⊗(id⊗z)`.
pub fn kappa_action_setup() -> Result<ActionSetup> {
    let w = 2;
    let kappa = Arc::new(TwistingMorphism::kappa(4)?);
    let op = kappa.operad().clone();
    let co = kappa.cooperad().clone();
    let c_prime = Arc::new(Coalgebra::from_terms("ℚx", co.clone(), line("x", 0), None, [])?);
    let gens = GradedSpace::new([("y", 0), ("z", 0)])?.shared();
    let c = Arc::new(Coalgebra::cofree("As^∨(ℚ{y,z})", co, gens, None, w)?);
    let a = Arc::new(idempotent_line(op.clone(), "e")?);
    let a_prime = Arc::new(contractible_pair(op)?);
    let cp_space = c_prime.space().clone();
    let ap_space = a_prime.space().clone();
    ActionSetup::new(
        kappa,
        c_prime,
        c,
        a,
        a_prime,
        w,
        w,
        |cobar| LinMap::from_entries(cp_space, cobar.space().clone(), 0, [("μ2⊗(id⊗y)⊗(id⊗z)", "x", int(1))]),
        |bar_a| {
            LinMap::from_entries(bar_a.space().clone(), ap_space, 0, [("p", "id⊗e", int(1)), ("q", "μ2^∨⊗e⊗e", int(1))])
        },
    )
}

/// `CONVKIT_SEED` if set and numeric, a fixed default otherwise.
pub fn seed_from_env() -> u64 {
    std::env::var("CONVKIT_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(0x5eed)
}

/// Cofree `As^∨`-coalgebra on 1 to `max_gens` cogenerators of random
/// degree in `{-1, 0, 1}`, truncated at `weight`.
pub fn random_cofree(seed: u64, max_gens: usize, weight: usize) -> Result<Coalgebra> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.gen_range(1..=max_gens);
    let gens = GradedSpace::new((0..k).map(|i| (format!("y{i}"), rng.gen_range(-1..=1))))?.shared();
    let co = Arc::new(Cooperad::coassociative(weight, true)?);
    Coalgebra::cofree(format!("As^∨(y×{k})"), co, gens, None, weight)
}

/// Random homogeneous map `C → V` of the given degree with small integer
/// entries, `V` being a fixed three-dimensional space in degrees 0, 1, -1.
pub fn random_map(seed: u64, c: &Coalgebra, degree: i64) -> Result<LinMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = GradedSpace::new([("v0", 0), ("v1", 1), ("v2", -1)])?.shared();
    let cols = (0..c.dim())
        .map(|j| {
            let mut col = Vector::zero();
            for t in 0..v.dim() {
                if v.degree(t) == c.space().degree(j) + degree && rng.gen_bool(0.7) {
                    col.add_term(t, Scalar::from_integer(rng.gen_range(-3..=3).into()));
                }
            }
            col
        })
        .collect();
    LinMap::new(c.space().clone(), v, degree, cols)
}
