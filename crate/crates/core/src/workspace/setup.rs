use super::build::Workspace;
use super::document::{AlgebraSpec, CoalgebraSpec};
use crate::convolution::ActionSetup;
use crate::error::{Error, Result};
use crate::linalg::{GradedSpace, LinMap};
use std::sync::Arc;

/// The same map on an equal space built afresh.
fn rehome(m: &LinMap, source: &Arc<GradedSpace>, target: &Arc<GradedSpace>) -> Result<LinMap> {
    if **m.source() != **source || **m.target() != **target {
        return Err(Error::Shape("rebuilt bar or cobar construction differs".into()));
    }
    LinMap::new(source.clone(), target.clone(), m.degree(), m.columns().to_vec())
}

impl Workspace {
    /// `Φ: C′ → Ω_α C` and `Ψ: B_α A → A′` read from two maps whose target
    /// and source are a cobar and a bar construction over one twisting
    /// morphism.
    pub fn action_setup(&self, phi: &str, psi: &str) -> Result<ActionSetup> {
        let doc = self.document();
        let phi_spec = doc.maps.get(phi).ok_or_else(|| Error::Reference(phi.into()))?;
        let psi_spec = doc.maps.get(psi).ok_or_else(|| Error::Reference(psi.into()))?;
        let Some(AlgebraSpec::Cobar { twisting: t1, coalgebra, weight: w_cobar }) = doc.algebras.get(&phi_spec.target) else {
            return Err(Error::Invalid(format!("the target of `{phi}` must be a cobar construction")));
        };
        let Some(CoalgebraSpec::Bar { twisting: t2, algebra, weight: w_bar }) = doc.coalgebras.get(&psi_spec.source) else {
            return Err(Error::Invalid(format!("the source of `{psi}` must be a bar construction")));
        };
        if t1 != t2 {
            return Err(Error::Invalid(format!("`{phi}` and `{psi}` use different twisting morphisms")));
        }
        let get_c = |n: &str| self.coalgebras.get(n).cloned().ok_or_else(|| Error::Reference(n.into()));
        let get_a = |n: &str| self.algebras.get(n).cloned().ok_or_else(|| Error::Reference(n.into()));
        let alpha = self.twisting.get(t1).cloned().ok_or_else(|| Error::Reference(t1.clone()))?;
        let c_prime = get_c(&phi_spec.source)?;
        let a_prime = get_a(&psi_spec.target)?;
        let (phi_map, psi_map) = (&self.maps[phi], &self.maps[psi]);
        ActionSetup::new(
            alpha,
            c_prime.clone(),
            get_c(coalgebra)?,
            get_a(algebra)?,
            a_prime.clone(),
            *w_bar,
            *w_cobar,
            |cobar| rehome(phi_map, c_prime.space(), cobar.space()),
            |bar| rehome(psi_map, bar.space(), a_prime.space()),
        )
    }
}
