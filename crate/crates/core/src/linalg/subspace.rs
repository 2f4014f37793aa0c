use super::fp::FpBasis;
use super::matrix::Mat;
use super::system::{require_same, System};
use super::{check_vectors, vscale};
use crate::config::{check_budget, config};
use crate::error::Result;
use crate::gf::{Elt, FieldSpec};

/// An F_{q^m}-subspace of F_{q^m}^k with a reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FqmSubspace {
    field: FieldSpec,
    k: usize,
    basis: Vec<Vec<Elt>>,
}

impl FqmSubspace {
    pub fn new<V: AsRef<[Elt]>>(field: &FieldSpec, k: usize, rows: &[V]) -> Result<FqmSubspace> {
        check_vectors(field, k, rows)?;
        let mut m = Mat::from_rows(k, rows);
        let r = m.rref(field);
        let basis = (0..r.len()).map(|i| m.row(i).to_vec()).collect();
        Ok(FqmSubspace {
            field: field.clone(),
            k,
            basis,
        })
    }

    pub fn whole(field: &FieldSpec, k: usize) -> FqmSubspace {
        let rows: Vec<Vec<Elt>> = (0..k)
            .map(|i| (0..k).map(|j| (i == j) as Elt).collect())
            .collect();
        FqmSubspace::new(field, k, &rows).unwrap()
    }

    pub fn zero(field: &FieldSpec, k: usize) -> FqmSubspace {
        FqmSubspace {
            field: field.clone(),
            k,
            basis: Vec::new(),
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Elt>] {
        &self.basis
    }

    pub fn contains(&self, v: &[Elt]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Mat::from_rows(self.k, &rows).rank(&self.field) == self.basis.len()
    }

    /// F_p-basis of the underlying vector space: x^d·b for every basis row b.
    pub fn fp_span(&self) -> FpBasis {
        let mut fb = FpBasis::new(&self.field, self.k);
        for b in &self.basis {
            for d in 0..self.field.degree() {
                fb.insert(&vscale(&self.field, self.field.monomial(d), b));
            }
        }
        fb
    }
}

/// dim_{F_q}(U ∩ W)
pub fn dim_intersection(u: &System, w: &FqmSubspace) -> Result<usize> {
    require_same(u.field(), w.field())?;
    let mut sum = w.fp_span();
    let dw = sum.rank();
    for row in u.fp_basis().rows() {
        sum.insert(row);
    }
    let fp = u.fp_basis().rank() + dw - sum.rank();
    Ok(fp / u.field().a() as usize)
}

/// Every h-dimensional F_{q^m}-subspace of F_{q^m}^k exactly once.
///
/// Subspaces are indexed by pivot pattern (lexicographic h-subsets of the
/// columns) and then by the free entries of the echelon matrix read as a
/// base-Q number, so any index range can be materialized independently.
#[derive(Clone)]
pub struct SubspaceEnum {
    field: FieldSpec,
    k: usize,
    h: usize,
    patterns: Vec<(Vec<usize>, Vec<(usize, usize)>)>,
    offsets: Vec<u64>,
    pos: u64,
    end: u64,
}

pub fn enumerate_fqm_subspaces(field: &FieldSpec, k: usize, h: usize) -> Result<SubspaceEnum> {
    if h == 0 || h >= k {
        return Err(crate::Error::InvalidParams(format!("need 0 < h={h} < k={k}")));
    }
    let big_q = field.order() as u128;
    let mut patterns = Vec::new();
    let mut offsets = vec![0u64];
    let mut total: u128 = 0;
    for piv in combinations(k, h) {
        let mut free = Vec::new();
        for (r, &pc) in piv.iter().enumerate() {
            for c in pc + 1..k {
                if !piv.contains(&c) {
                    free.push((r, c));
                }
            }
        }
        total += big_q.pow(free.len() as u32);
        check_budget("subspace enumeration", total, config().enum_cap)?;
        offsets.push(total as u64);
        patterns.push((piv, free));
    }
    Ok(SubspaceEnum {
        field: field.clone(),
        k,
        h,
        patterns,
        offsets,
        pos: 0,
        end: total as u64,
    })
}

pub(crate) fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < r - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    rec(0, n, r, &mut cur, &mut out);
    out
}

impl SubspaceEnum {
    pub fn total(&self) -> u64 {
        *self.offsets.last().unwrap()
    }

    /// The subspace with global index `idx`.
    pub fn get(&self, idx: u64) -> FqmSubspace {
        let pi = self.offsets.partition_point(|&o| o <= idx) - 1;
        let (piv, free) = &self.patterns[pi];
        let mut rest = idx - self.offsets[pi];
        let big_q = self.field.order();
        let mut basis = vec![vec![0 as Elt; self.k]; self.h];
        for (r, &pc) in piv.iter().enumerate() {
            basis[r][pc] = 1;
        }
        for &(r, c) in free.iter().rev() {
            basis[r][c] = (rest % big_q) as Elt;
            rest /= big_q;
        }
        FqmSubspace {
            field: self.field.clone(),
            k: self.k,
            basis,
        }
    }

    /// Restricts the iterator to the index range [start, end).
    pub fn range(mut self, start: u64, end: u64) -> SubspaceEnum {
        self.pos = start.min(self.total());
        self.end = end.min(self.total());
        self
    }

    pub fn split(self) -> (SubspaceEnum, SubspaceEnum) {
        let mid = self.pos + (self.end - self.pos) / 2;
        let (s, e) = (self.pos, self.end);
        (self.clone().range(s, mid), self.range(mid, e))
    }
}

impl Iterator for SubspaceEnum {
    type Item = FqmSubspace;

    fn next(&mut self) -> Option<FqmSubspace> {
        if self.pos >= self.end {
            return None;
        }
        let s = self.get(self.pos);
        self.pos += 1;
        Some(s)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.end - self.pos) as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for SubspaceEnum {}
