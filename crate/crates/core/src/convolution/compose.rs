use std::sync::Arc;

use num_traits::One;

use super::action::{hom_l_components, hom_r, hom_l, postcompose_table};
use super::hom::{build_convolution, ConvolutionAlgebra};
use crate::algebra::{bar, check_chain_map, cobar, cofree_lift, counit_epsilon, free_extension, Algebra, Coalgebra};
use crate::error::{Error, Result};
use crate::linalg::scalar::{sign, Scalar};
use crate::linalg::{LinMap, Vector};
use crate::operad::TwistingMorphism;
use crate::slinf::{compose_inf, InfMorphism, Multilinear};

/// Residual `∂f + Σ_n γ_A(α ⊗ f^{⊗n}) Δ_C^n` of a degree-0 map `f: C → A`,
/// evaluated directly without tabulating brackets.
pub fn mc_residual_map(alpha: &TwistingMorphism, c: &Coalgebra, a: &Algebra, f: &LinMap) -> Result<LinMap> {
    if f.degree() != 0 {
        return Err(Error::Degree("Maurer–Cartan elements have degree 0".into()));
    }
    let mut cols = Vec::with_capacity(c.dim());
    for x in 0..c.dim() {
        let mut out = a.apply_differential(f.column(x))?;
        out.add_scaled(&f.apply(&c.differential().apply(&Vector::basis(x))), &sign(1));
        for t in c.delta(x) {
            let img = alpha.apply_basis(t.op.0, t.op.1)?;
            if img.is_zero() {
                continue;
            }
            let args: Vec<&Vector> = t.inputs.iter().map(|&i| f.column(i)).collect();
            if args.iter().any(|v| v.is_zero()) {
                continue;
            }
            out.add_scaled(&a.gamma(t.op.0, img, &args)?, &t.coeff);
        }
        cols.push(out);
    }
    LinMap::new(c.space().clone(), a.space().clone(), -1, cols)
}

/// Which ∞-morphism acts first in a composite `hom^α(C, A) ⇝ hom^α(C′, A′)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    /// `hom_ℓ(Φ, 1)` first, then `hom_r(1, Ψ)`: the composite
    /// `hom^α(1, Ψ) hom^α(Φ, 1)`. Labelled `ℓ∘r`.
    LeftFirst,
    /// `hom_r(1, Ψ)` first, then `hom_ℓ(Φ, 1)`: the composite
    /// `hom^α(Φ, 1) hom^α(1, Ψ)`. Labelled `r∘ℓ`.
    RightFirst,
}

impl Order {
    pub fn label(self) -> &'static str {
        match self {
            Order::LeftFirst => "ℓ∘r",
            Order::RightFirst => "r∘ℓ",
        }
    }
}

/// An ∞_α-morphism `Φ: C′ ⇝ C` of coalgebras, stored as an element of
/// `hom(C′, Ω_α C)`, and `Ψ: A ⇝ A′` of algebras, stored as an element of
/// `hom(B_α A, A′)`, with the four convolution algebras they act between.
#[derive(Clone, Debug)]
pub struct ActionSetup {
    pub alpha: Arc<TwistingMorphism>,
    pub c_prime: Arc<Coalgebra>,
    pub c: Arc<Coalgebra>,
    pub a: Arc<Algebra>,
    pub a_prime: Arc<Algebra>,
    pub bar_a: Arc<Coalgebra>,
    pub cobar_c: Arc<Algebra>,
    pub phi: LinMap,
    pub psi: LinMap,
    pub hom_c_a: ConvolutionAlgebra,
    pub hom_c_ap: ConvolutionAlgebra,
    pub hom_cp_a: ConvolutionAlgebra,
    pub hom_cp_ap: ConvolutionAlgebra,
}

impl ActionSetup {
    /// `phi` and `psi` are built from the cobar and bar constructions of
    /// weights `w_cobar` and `w_bar`; both are checked to be Maurer–Cartan.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        alpha: Arc<TwistingMorphism>,
        c_prime: Arc<Coalgebra>,
        c: Arc<Coalgebra>,
        a: Arc<Algebra>,
        a_prime: Arc<Algebra>,
        w_bar: usize,
        w_cobar: usize,
        phi: impl FnOnce(&Algebra) -> Result<LinMap>,
        psi: impl FnOnce(&Coalgebra) -> Result<LinMap>,
    ) -> Result<Self> {
        let bar_a = Arc::new(bar(&alpha, &a, w_bar)?);
        let cobar_c = Arc::new(cobar(&alpha, &c, w_cobar)?);
        let phi = phi(&cobar_c)?;
        let psi = psi(&bar_a)?;
        for (name, r) in [
            ("Φ", mc_residual_map(&alpha, &c_prime, &cobar_c, &phi)?),
            ("Ψ", mc_residual_map(&alpha, &bar_a, &a_prime, &psi)?),
        ] {
            if !r.is_zero() {
                return Err(Error::NotMaurerCartan(format!("{name} has a nonzero residual")));
            }
        }
        let hom_c_a = build_convolution(alpha.clone(), c.clone(), a.clone())?;
        let hom_c_ap = build_convolution(alpha.clone(), c.clone(), a_prime.clone())?;
        let hom_cp_a = build_convolution(alpha.clone(), c_prime.clone(), a.clone())?;
        let hom_cp_ap = build_convolution(alpha.clone(), c_prime.clone(), a_prime.clone())?;
        Ok(ActionSetup {
            alpha,
            c_prime,
            c,
            a,
            a_prime,
            bar_a,
            cobar_c,
            phi,
            psi,
            hom_c_a,
            hom_c_ap,
            hom_cp_a,
            hom_cp_ap,
        })
    }

    pub fn compose_action(&self, order: Order) -> Result<InfMorphism> {
        match order {
            Order::LeftFirst => {
                let l = hom_l(&self.hom_c_a, &self.hom_cp_a, &self.cobar_c, &self.phi)?;
                let r = hom_r(&self.hom_cp_a, &self.hom_cp_ap, &self.bar_a, &self.psi)?;
                compose_inf(&r, &l)
            }
            Order::RightFirst => {
                let r = hom_r(&self.hom_c_a, &self.hom_c_ap, &self.bar_a, &self.psi)?;
                let l = hom_l(&self.hom_c_ap, &self.hom_cp_ap, &self.cobar_c, &self.phi)?;
                compose_inf(&l, &r)
            }
        }
    }

    /// First arity where the two composites differ, with the tuple and the
    /// difference `ℓ∘r − r∘ℓ` there.
    pub fn composite_difference(&self) -> Result<Option<(usize, Vec<usize>, Vector)>> {
        let lr = self.compose_action(Order::LeftFirst)?;
        let rl = self.compose_action(Order::RightFirst)?;
        Ok(first_difference(lr.components(), rl.components()))
    }
}

pub(crate) fn first_difference(a: &[Multilinear], b: &[Multilinear]) -> Option<(usize, Vec<usize>, Vector)> {
    let n = a.len().max(b.len());
    (1..=n).find_map(|k| {
        let empty = Multilinear::new(k, 0);
        let x = a.get(k - 1).unwrap_or(&empty);
        let y = b.get(k - 1).unwrap_or(&empty);
        let d = x.sub(y);
        d.entries().first().map(|(key, v)| (k, (*key).clone(), (*v).clone()))
    })
}

/// `R(Ψ) = Ω_α Ψ̂: Ω_α B_α A → Ω_α B_α A′` where `Ψ̂ = (1 ∘ Ψ)Δ` is the
/// coalgebra map of `Ψ`; asserted to be a chain map on the interior of
/// `r_a`.
pub fn rectify(bar_a: &Coalgebra, bar_ap: &Coalgebra, psi: &LinMap, r_a: &Algebra, r_ap: &Algebra) -> Result<LinMap> {
    let hat = cofree_lift(bar_a, bar_ap, psi)?;
    let gen_ap = r_ap.words().ok_or_else(|| Error::Invalid("R(A′) must be free".into()))?;
    let cols = (0..bar_a.dim())
        .map(|b| hat.column(b).iter().map(|(x, k)| (gen_ap.generator(x), k.clone())).collect())
        .collect();
    let g = LinMap::new(bar_a.space().clone(), r_ap.space().clone(), 0, cols)?;
    let rp = free_extension(r_a, r_ap, &g)?;
    check_chain_map(&rp, |x| r_a.differential(x), |v| r_ap.apply_differential(v), |x| r_a.in_interior(x))?;
    Ok(rp)
}

/// Outcome of the rectification comparison.
#[derive(Clone, Debug)]
pub struct EqualizerReport {
    /// Where `ℓ∘r` and `r∘ℓ` differ on `hom(C, A)`, if anywhere.
    pub raw_difference: Option<(usize, Vec<usize>, Vector)>,
    /// Where they still differ after precomposition with `hom(1, ε_A)`,
    /// restricted to the interior of `R(A)`.
    pub rectified_difference: Option<(usize, Vec<usize>, Vector)>,
    /// Where `hom(1, R(Ψ))` and `hom(Φ, 1)` fail to commute on
    /// `hom(C, R(A))`, over input tuples within the truncation.
    pub inner_square_difference: Option<(usize, Vec<usize>, Vector)>,
}

impl EqualizerReport {
    pub fn equalized(&self) -> bool {
        self.rectified_difference.is_none()
    }
}

/// Compares the two composites after precomposition with
/// `hom(1, ε_A): hom(C, R(A)) → hom(C, A)`, with `R(A) = Ω_α B_α A`
/// truncated at `w`, and checks that the strict square through `R(Ψ)`
/// commutes.
pub fn equalizer_check(setup: &ActionSetup, w: usize) -> Result<EqualizerReport> {
    if !setup.alpha.is_koszul() {
        return Err(Error::Invalid("the rectification comparison needs a Koszul twisting morphism".into()));
    }
    let lr = setup.compose_action(Order::LeftFirst)?;
    let rl = setup.compose_action(Order::RightFirst)?;
    let raw_difference = first_difference(lr.components(), rl.components());

    let alpha = &setup.alpha;
    let r_a = cobar(alpha, &setup.bar_a, w)?;
    let eps = counit_epsilon(&r_a, &setup.bar_a, &setup.a)?;
    let c_space = setup.c.space();
    let nc = c_space.dim();
    let full = postcompose_table(c_space, &eps);
    let mut e = Multilinear::new(1, 0);
    for (key, v) in full.entries() {
        if r_a.in_interior(key[0] / nc) {
            e.add_at(key.clone(), v, &Scalar::one());
        }
    }
    let r_space = crate::convolution::hom::hom_space(c_space, r_a.space());
    let pulled = |comps: &[Multilinear]| -> Vec<Multilinear> {
        comps
            .iter()
            .map(|t| Multilinear::compose_blocks(t, &vec![&e; t.arity()], &r_space))
            .collect()
    };
    let rectified_difference = first_difference(&pulled(lr.components()), &pulled(rl.components()));

    let bar_ap = bar(alpha, &setup.a_prime, setup.bar_a.words().map(|w| w.weight_bound()).unwrap_or(1))?;
    let r_ap = cobar(alpha, &bar_ap, w)?;
    let rpsi = rectify(&setup.bar_a, &bar_ap, &setup.psi, &r_a, &r_ap)?;
    let bound = lr.bound();
    let post_src = postcompose_table(c_space, &rpsi);
    let post_tgt = postcompose_table(setup.c_prime.space(), &rpsi);
    let l_src = hom_l_components(&setup.cobar_c, &r_a, &setup.phi, bound, true)?;
    let l_tgt = hom_l_components(&setup.cobar_c, &r_ap, &setup.phi, bound, true)?;
    let lhs: Vec<Multilinear> = l_src
        .iter()
        .map(|t| Multilinear::compose_blocks(&post_tgt, &[t], &r_space))
        .collect();
    let rhs: Vec<Multilinear> = l_tgt
        .iter()
        .map(|t| Multilinear::compose_blocks(t, &vec![&post_src; t.arity()], &r_space))
        .collect();
    let inner_square_difference = first_difference(&lhs, &rhs);
    Ok(EqualizerReport { raw_difference, rectified_difference, inner_square_difference })
}
