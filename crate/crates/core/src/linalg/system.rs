use std::fmt::Write as _;

use super::fp::FpBasis;
use super::{check_vectors, vscale};
use crate::error::{Error, Result};
use crate::gf::{Elt, FieldSpec};

/// An F_q-subspace U of F_{q^m}^k.
///
/// The canonical form is the reduced echelon basis of the F_p-span of U's
/// F_q-closure, so two systems are equal iff their canonical rows agree.
#[derive(Clone)]
pub struct System {
    field: FieldSpec,
    k: usize,
    basis: FpBasis,
    gens: Vec<Vec<Elt>>,
}

impl PartialEq for System {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.k == other.k
            && self.basis.rank() == other.basis.rank()
            && self.basis.rows().eq(other.basis.rows())
    }
}

impl Eq for System {}

impl std::fmt::Debug for System {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("System")
            .field("k", &self.k)
            .field("rank", &self.rank())
            .field("gens", &self.gens)
            .finish()
    }
}

pub(crate) fn insert_fq(field: &FieldSpec, basis: &mut FpBasis, v: &[Elt]) -> bool {
    if basis.contains(v) {
        return false;
    }
    for &w in field.fq_basis() {
        basis.insert(&vscale(field, w, v));
    }
    true
}

impl System {
    /// Builds the F_q-span of `generators`; F_q-dependent ones are dropped.
    pub fn new<V: AsRef<[Elt]>>(field: &FieldSpec, k: usize, generators: &[V]) -> Result<System> {
        check_vectors(field, k, generators)?;
        let mut basis = FpBasis::new(field, k);
        for g in generators {
            insert_fq(field, &mut basis, g.as_ref());
        }
        Ok(Self::from_basis(field, basis))
    }

    pub(crate) fn from_basis(field: &FieldSpec, basis: FpBasis) -> System {
        let k = basis.k();
        let mut closure = FpBasis::new(field, k);
        let mut gens = Vec::new();
        for row in basis.rows() {
            if insert_fq(field, &mut closure, row) {
                gens.push(row.to_vec());
            }
        }
        debug_assert_eq!(closure.rank(), basis.rank());
        System {
            field: field.clone(),
            k,
            basis,
            gens,
        }
    }

    pub fn zero(field: &FieldSpec, k: usize) -> System {
        Self::from_basis(field, FpBasis::new(field, k))
    }

    /// The subgeometry system F_q^k.
    pub fn subgeometry(field: &FieldSpec, k: usize) -> System {
        let gens: Vec<Vec<Elt>> = (0..k)
            .map(|i| (0..k).map(|j| (i == j) as Elt).collect())
            .collect();
        Self::new(field, k, &gens).unwrap()
    }

    /// The whole of F_{q^m}^k as an F_q-space.
    pub fn full(field: &FieldSpec, k: usize) -> System {
        let mut basis = FpBasis::new(field, k);
        for i in 0..k {
            for d in 0..field.degree() {
                let mut v = vec![0; k];
                v[i] = field.monomial(d);
                basis.insert(&v);
            }
        }
        Self::from_basis(field, basis)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// dim_{F_q} U
    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Canonical F_q-basis, in canonical order.
    pub fn generators(&self) -> &[Vec<Elt>] {
        &self.gens
    }

    pub fn fp_basis(&self) -> &FpBasis {
        &self.basis
    }

    /// Canonical F_p-echelon rows.
    pub fn canonical(&self) -> Vec<Vec<Elt>> {
        self.basis.rows().map(|r| r.to_vec()).collect()
    }

    /// Flat canonical rows; byte-equal iff the subspaces are equal.
    pub fn canonical_key(&self) -> Vec<Elt> {
        self.basis.rows().flatten().copied().collect()
    }

    pub fn contains(&self, v: &[Elt]) -> bool {
        self.basis.contains(v)
    }

    /// U + ⟨extra⟩_{F_q}
    pub fn extend<V: AsRef<[Elt]>>(&self, extra: &[V]) -> Result<System> {
        check_vectors(&self.field, self.k, extra)?;
        let mut basis = self.basis.clone();
        for g in extra {
            insert_fq(&self.field, &mut basis, g.as_ref());
        }
        Ok(Self::from_basis(&self.field, basis))
    }

    /// Image of U under an F_q-linear map given on vectors.
    pub fn map<F: Fn(&[Elt]) -> Vec<Elt>>(&self, k_out: usize, f: F) -> Result<System> {
        let imgs: Vec<Vec<Elt>> = self.gens.iter().map(|g| f(g)).collect();
        System::new(&self.field, k_out, &imgs)
    }

    /// `gen` lines of the certificate format.
    pub fn to_lines(&self) -> String {
        let mut s = String::new();
        for g in &self.gens {
            s.push_str("gen");
            for x in g {
                write!(s, " {x}").unwrap();
            }
            s.push('\n');
        }
        s
    }

    /// Calls `visit` on one representative of every F_q^*-class of nonzero
    /// vectors of U: those whose first nonzero F_q-coordinate is 1.
    pub fn for_each_projective<F: FnMut(&[Elt])>(&self, mut visit: F) {
        let n = self.rank();
        if n == 0 {
            return;
        }
        let gray = GrayWalk::new(&self.field, &self.gens);
        for l in 0..n {
            let mut v = self.gens[l].clone();
            visit(&v);
            gray.walk(&mut v, l + 1, &mut visit);
        }
    }

    /// Calls `visit` on every vector of U, starting with zero.
    pub fn for_each_vector<F: FnMut(&[Elt])>(&self, mut visit: F) {
        let mut v = vec![0; self.k];
        visit(&v);
        GrayWalk::new(&self.field, &self.gens).walk(&mut v, 0, &mut visit);
    }
}

/// q-ary modular Gray code over F_q-combinations of a list of vectors: each
/// step bumps one coefficient to the next element of F_q.
struct GrayWalk<'a> {
    field: &'a FieldSpec,
    q: u64,
    /// diffs[i*q + c] = (fq[c+1] - fq[c])·gens[i]
    diffs: Vec<Vec<Elt>>,
    n: usize,
}

impl<'a> GrayWalk<'a> {
    fn new(field: &'a FieldSpec, gens: &[Vec<Elt>]) -> Self {
        let fq = field.mid_elements();
        let q = fq.len();
        let mut diffs = Vec::with_capacity(gens.len() * q);
        for g in gens {
            for c in 0..q {
                let d = field.sub(fq[(c + 1) % q], fq[c]);
                diffs.push(vscale(field, d, g));
            }
        }
        GrayWalk {
            field,
            q: q as u64,
            diffs,
            n: gens.len(),
        }
    }

    /// Walks all combinations of gens[from..] added to `v`, skipping the
    /// starting point itself.
    fn walk<F: FnMut(&[Elt])>(&self, v: &mut [Elt], from: usize, visit: &mut F) {
        let len = self.n - from;
        if len == 0 {
            return;
        }
        let q = self.q;
        let total = q.pow(len as u32);
        let mut digits = vec![0usize; len];
        let two = self.field.p() == 2;
        for t in 1..total {
            let mut j = 0;
            let mut tt = t;
            while tt % q == 0 {
                tt /= q;
                j += 1;
            }
            let c = digits[j];
            let d = &self.diffs[(from + j) * q as usize + c];
            if two {
                for (x, &y) in v.iter_mut().zip(d) {
                    *x ^= y;
                }
            } else {
                for (x, &y) in v.iter_mut().zip(d) {
                    *x = self.field.add(*x, y);
                }
            }
            digits[j] = (c + 1) % q as usize;
            visit(v);
        }
    }
}

pub(crate) fn require_same(a: &FieldSpec, b: &FieldSpec) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::FieldMismatch)
    }
}
