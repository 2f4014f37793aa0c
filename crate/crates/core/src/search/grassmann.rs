//! Index-addressable enumeration of r-dimensional subspaces of F_q^N, each
//! given by its reduced row echelon basis.

use crate::error::Result;
use crate::gf::{Elt, FieldSpec};
use crate::linalg::combinations;

pub(crate) struct Grassmannian {
    fq: Vec<Elt>,
    n: usize,
    r: usize,
    /// (pivot columns, first index, number of free entries)
    blocks: Vec<(Vec<usize>, u128, u32)>,
    total: u128,
}

impl Grassmannian {
    pub(crate) fn new(field: &FieldSpec, n: usize, r: usize) -> Result<Grassmannian> {
        let fq = field.mid_elements().to_vec();
        let q = fq.len() as u128;
        let mut blocks = Vec::new();
        let mut total: u128 = 0;
        for piv in combinations(n, r) {
            let free: u32 = piv
                .iter()
                .enumerate()
                .map(|(i, &p)| ((n - p - 1) - (r - 1 - i)) as u32)
                .sum();
            blocks.push((piv, total, free));
            total = total.saturating_add(q.saturating_pow(free));
        }
        Ok(Grassmannian { fq, n, r, blocks, total })
    }

    pub(crate) fn total(&self) -> u128 {
        self.total
    }

    /// Echelon basis of the subspace with index `idx`.
    pub(crate) fn get(&self, idx: u128) -> Vec<Vec<Elt>> {
        let b = self.blocks.partition_point(|blk| blk.1 <= idx) - 1;
        let (piv, start, _) = &self.blocks[b];
        let mut local = idx - start;
        let q = self.fq.len() as u128;
        let mut rows = vec![vec![0 as Elt; self.n]; self.r];
        // free entries are filled last-row-last-column first
        for i in (0..self.r).rev() {
            rows[i][piv[i]] = 1;
            for c in (piv[i] + 1..self.n).rev() {
                if piv.contains(&c) {
                    continue;
                }
                rows[i][c] = self.fq[(local % q) as usize];
                local /= q;
            }
        }
        rows
    }
}

/// Reduced row echelon form over the field; zero rows dropped.
pub(crate) fn rref(f: &FieldSpec, rows: &mut Vec<Vec<Elt>>) {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(rows[r][c]).unwrap();
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let t = rows[i][c];
                for j in c..cols {
                    let v = f.sub(rows[i][j], f.mul(t, rows[r][j]));
                    rows[i][j] = v;
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
}

/// Gaussian binomial [n choose r]_q, saturating.
pub fn gaussian_binomial(q: u64, n: u32, r: u32) -> u128 {
    if r > n {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..r {
        let a = q.checked_pow(n - i).map(|x| x - 1);
        let b = q.checked_pow(i + 1).map(|x| x - 1);
        match (a.and_then(|a| num.checked_mul(a)), b.and_then(|b| den.checked_mul(b))) {
            (Some(x), Some(y)) => {
                let g = gcd(x, y);
                num = x / g;
                den = y / g;
            }
            _ => return u128::MAX,
        }
    }
    num / den
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn counts_and_distinct() {
        let f = FieldSpec::gf(3, 1, 2).unwrap();
        for n in 0..5 {
            for r in 0..=n {
                let g = Grassmannian::new(&f, n, r).unwrap();
                assert_eq!(g.total(), gaussian_binomial(3, n as u32, r as u32));
                let mut seen = HashSet::new();
                for i in 0..g.total() {
                    let mut rows = g.get(i);
                    let before = rows.clone();
                    rref(&f, &mut rows);
                    assert_eq!(rows, before);
                    assert!(seen.insert(rows));
                }
            }
        }
    }
}
