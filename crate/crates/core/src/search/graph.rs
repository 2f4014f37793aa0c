//! Graph-form normal forms of rank-4 systems in F_{q^4}^3.

use crate::constructions::{case4_params, case_system};
use crate::error::{Error, Result};
use crate::gf::{Elt, FieldSpec};
use crate::linalg::System;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphForm {
    pub case: u8,
    pub alpha: Elt,
    pub beta: Elt,
    pub system: System,
}

impl GraphForm {
    pub fn label(&self) -> String {
        match self.case {
            1 => "case 1".into(),
            2 | 3 => format!("case {} alpha={}", self.case, self.alpha),
            _ => format!("case 4 alpha={} beta={}", self.alpha, self.beta),
        }
    }
}

/// The normal forms {(x, f(x), g(x))} that remain after the reductions of
/// the rank-4 classification: case 1; case 2 for every α ≠ 0; case 3 for
/// α ∈ F_{q²} with α^{q+1} = 1; case 4 for the normalized (α, β). Other
/// parameters of cases 3 and 4 have (0:0:1) unsaturated by a scattered
/// projection and are not emitted.
pub fn graph_form_enumerate(field: &FieldSpec) -> Result<Vec<GraphForm>> {
    let f = field;
    if f.m() != 4 {
        return Err(Error::InvalidParams(format!("m={} but need m=4", f.m())));
    }
    let q = f.q();
    let mut out = vec![GraphForm { case: 1, alpha: 0, beta: 0, system: case_system(f, 1, 0, 0)? }];
    for a in 1..f.order() as Elt {
        out.push(GraphForm { case: 2, alpha: a, beta: 0, system: case_system(f, 2, a, 0)? });
    }
    for a in 1..f.order() as Elt {
        if f.frob(a, 2) == a && f.pow_u(a, q + 1) == 1 {
            out.push(GraphForm { case: 3, alpha: a, beta: 0, system: case_system(f, 3, a, 0)? });
        }
    }
    for (a, b) in case4_params(f)? {
        out.push(GraphForm { case: 4, alpha: a, beta: b, system: case_system(f, 4, a, b)? });
    }
    Ok(out)
}
