//! Linear algebra over F_q and F_{q^m}.

mod fp;
mod matrix;
mod subspace;
mod system;

pub use fp::{fp_solve, FpBasis, Pivot};
pub use matrix::Mat;
pub use subspace::{dim_intersection, enumerate_fqm_subspaces, FqmSubspace, SubspaceEnum};
pub use system::System;

pub(crate) use subspace::combinations;

use crate::error::{Error, Result};
use crate::gf::{Elt, FieldSpec};

pub fn vscale(f: &FieldSpec, c: Elt, v: &[Elt]) -> Vec<Elt> {
    v.iter().map(|&x| f.mul(c, x)).collect()
}

pub fn vadd(f: &FieldSpec, u: &[Elt], v: &[Elt]) -> Vec<Elt> {
    u.iter().zip(v).map(|(&x, &y)| f.add(x, y)).collect()
}

pub fn vsub(f: &FieldSpec, u: &[Elt], v: &[Elt]) -> Vec<Elt> {
    u.iter().zip(v).map(|(&x, &y)| f.sub(x, y)).collect()
}

/// u += c·v
pub fn axpy(f: &FieldSpec, u: &mut [Elt], c: Elt, v: &[Elt]) {
    for (x, &y) in u.iter_mut().zip(v) {
        *x = f.add(*x, f.mul(c, y));
    }
}

pub(crate) fn check_vectors<V: AsRef<[Elt]>>(f: &FieldSpec, k: usize, vs: &[V]) -> Result<()> {
    for v in vs {
        let v = v.as_ref();
        if v.len() != k {
            return Err(Error::InvalidParams(format!(
                "vector of length {} in ambient dimension {k}",
                v.len()
            )));
        }
        if v.iter().any(|&x| !f.contains(x)) {
            return Err(Error::FieldMismatch);
        }
    }
    Ok(())
}

/// dim_{F_q} of the F_q-span of the given elements.
pub fn fq_span_dim(f: &FieldSpec, elements: &[Elt]) -> usize {
    if f.p() == 2 && f.a() == 1 {
        let mut basis = [0u32; 32];
        let mut r = 0;
        for &e in elements {
            let mut v = e;
            while v != 0 {
                let b = 31 - v.leading_zeros() as usize;
                if basis[b] == 0 {
                    basis[b] = v;
                    r += 1;
                    break;
                }
                v ^= basis[b];
            }
        }
        return r;
    }
    let mut basis = FpBasis::new(f, 1);
    for &e in elements {
        for &w in f.fq_basis() {
            basis.insert(&[f.mul(w, e)]);
        }
    }
    basis.rank() / f.a() as usize
}
