//! Linearized polynomials and the explicit algebra behind the fourth family
//! of rank-4 systems U_{α,β} = {(x, x^q + αx^{q³}, x^{q²} + βx^{q³})} in
//! PG(2, q^4), q even.
//!
//! Every named polynomial exists in two forms: as printed (`Form::Transcribed`)
//! and as rebuilt from its defining combination (`Form::Derived`). The
//! derived form is the one the checks rely on; the printed one is compared
//! against it and differences are reported as findings.

mod derive;
mod linpoly;
mod registry;
mod transcribed;
mod verify;
mod ypoly;

pub use derive::{ACoeffs, Derivation};
pub use linpoly::LinPoly;
pub use registry::{registry_eval, registry_eval_form, Bindings, Form, REGISTRY_NAMES};
pub use transcribed::{delta1_filter, h, r0, Transcribed};
pub use verify::{
    case3_norm_condition, case3_witness, delta0_artin_schreier, delta_projection, delta_sets, gamma_set, gamma_set_transcribed,
    projection_scan, transcription_findings, verify_delta_unsaturated, verify_gamma_unsaturated,
    verify_identities, Case3Report, Case3Route, DeltaReport, Finding, GammaReport, GammaVariant,
    IdentityReport, ProjectionScan,
};
pub use ypoly::{Conj, Mon, XLin, YPoly};

use crate::error::{Error, Result};
use crate::gf::{Elt, FieldSpec};

/// Field F_{q^4} with q even, plus normalized parameters α, β.
#[derive(Clone, Debug)]
pub struct AppendixContext {
    field: FieldSpec,
    alpha: Elt,
    beta: Elt,
}

impl AppendixContext {
    pub fn new(field: &FieldSpec, alpha: Elt, beta: Elt) -> Result<AppendixContext> {
        check_even_m4(field)?;
        if !field.contains(alpha) || !field.contains(beta) {
            return Err(Error::FieldMismatch);
        }
        let q = field.q();
        if alpha == 0 || field.pow_u(alpha, q + 1) != 1 {
            return Err(Error::InvalidParams(format!("alpha={alpha} has alpha^(q+1) != 1")));
        }
        if beta == 0 || field.pow_u(beta, (q * q + 1) * (q - 1)) != 1 {
            return Err(Error::InvalidBeta(format!(
                "beta={beta} has beta^((q^2+1)(q-1)) != 1"
            )));
        }
        Ok(AppendixContext { field: field.clone(), alpha, beta })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn alpha(&self) -> Elt {
        self.alpha
    }

    pub fn beta(&self) -> Elt {
        self.beta
    }

    pub fn derive(&self, c: Elt) -> Result<Derivation> {
        Derivation::new(self, c)
    }

    pub fn transcribed(&self, c: Elt) -> Transcribed<'_> {
        Transcribed::new(self, c)
    }
}

pub(crate) fn check_even_m4(field: &FieldSpec) -> Result<()> {
    if field.p() != 2 {
        return Err(Error::OddCharacteristic(field.p()));
    }
    if field.m() != 4 {
        return Err(Error::InvalidParams(format!("m={} but need m=4", field.m())));
    }
    Ok(())
}

/// Π_i (z^{q^i})^{e_i}
pub(crate) fn pw(f: &FieldSpec, z: Elt, e: [u32; 4]) -> Elt {
    let mut acc = 1;
    for (i, &ei) in e.iter().enumerate() {
        if ei > 0 {
            acc = f.mul(acc, f.pow_u(f.frob(z, i as i64), ei as u64));
        }
    }
    acc
}

/// Square root in characteristic 2.
pub(crate) fn sqrt2(f: &FieldSpec, z: Elt) -> Elt {
    f.pow_u(z, f.order() / 2)
}
