//! Row reduction over the prime field.
//!
//! A vector of F_{q^m}^k is treated as its F_p-expansion: the digits of the
//! k encodings, coordinate-major, low digit first. Row operations only ever
//! add F_p-multiples, which for encodings are field additions and products
//! with constants, so rows stay stored as plain `Elt` slices. Over p = 2 a
//! row is k packed 32-bit words and elimination is XOR.

use crate::gf::{Elt, FieldSpec};

/// Pivot position: (coordinate, digit).
pub type Pivot = (usize, u32);

pub(crate) fn pivot_of(field: &FieldSpec, v: &[Elt]) -> Option<Pivot> {
    let i = v.iter().position(|&x| x != 0)?;
    let x = v[i];
    let d = if field.p() == 2 {
        x.trailing_zeros()
    } else {
        (0..field.degree()).find(|&d| field.digit(x, d) != 0).unwrap()
    };
    Some((i, d))
}

/// Incrementally maintained reduced row-echelon basis of an F_p-span.
#[derive(Clone)]
pub struct FpBasis {
    field: FieldSpec,
    k: usize,
    rows: Vec<Elt>,
    pivots: Vec<Pivot>,
}

impl FpBasis {
    pub fn new(field: &FieldSpec, k: usize) -> FpBasis {
        FpBasis {
            field: field.clone(),
            k,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// F_p-dimension.
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[Pivot] {
        &self.pivots
    }

    pub fn row(&self, i: usize) -> &[Elt] {
        &self.rows[i * self.k..(i + 1) * self.k]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Elt]> {
        self.rows.chunks_exact(self.k.max(1))
    }

    /// Reduces `v` in place against the basis.
    pub fn reduce(&self, v: &mut [Elt]) {
        debug_assert_eq!(v.len(), self.k);
        if self.field.p() == 2 {
            for (r, &(i, d)) in self.pivots.iter().enumerate() {
                if (v[i] >> d) & 1 == 1 {
                    let row = &self.rows[r * self.k..(r + 1) * self.k];
                    for (x, &y) in v.iter_mut().zip(row) {
                        *x ^= y;
                    }
                }
            }
        } else {
            let f = &self.field;
            for (r, &(i, d)) in self.pivots.iter().enumerate() {
                let c = f.digit(v[i], d);
                if c != 0 {
                    let row = &self.rows[r * self.k..(r + 1) * self.k];
                    for (x, &y) in v.iter_mut().zip(row) {
                        *x = f.sub(*x, f.mul(c, y));
                    }
                }
            }
        }
    }

    pub fn contains(&self, v: &[Elt]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span; returns false if it was already there.
    pub fn insert(&mut self, v: &[Elt]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some((i, d)) = pivot_of(&self.field, &w) else {
            return false;
        };
        let f = &self.field;
        if f.p() != 2 {
            let c = f.digit(w[i], d);
            let ci = f.inv(c).unwrap();
            for x in w.iter_mut() {
                *x = f.mul(*x, ci);
            }
        }
        let k = self.k;
        for r in 0..self.pivots.len() {
            let row = &mut self.rows[r * k..(r + 1) * k];
            let c = f.digit(row[i], d);
            if c != 0 {
                if f.p() == 2 {
                    for (x, &y) in row.iter_mut().zip(&w) {
                        *x ^= y;
                    }
                } else {
                    for (x, &y) in row.iter_mut().zip(&w) {
                        *x = f.sub(*x, f.mul(c, y));
                    }
                }
            }
        }
        let pos = self.pivots.partition_point(|&pv| pv < (i, d));
        self.pivots.insert(pos, (i, d));
        let at = pos * k;
        self.rows.splice(at..at, w);
        true
    }
}

/// Finds F_p-coefficients c with Σ cᵢ·images[i] = target, if any.
pub fn fp_solve(field: &FieldSpec, images: &[Vec<Elt>], target: &[Elt]) -> Option<Vec<u32>> {
    let k = target.len();
    let p = field.p();
    let nimg = images.len();
    // Each working row carries its vector and the combination producing it.
    let mut rows: Vec<(Vec<Elt>, Vec<u32>, Pivot)> = Vec::new();
    let reduce = |rows: &Vec<(Vec<Elt>, Vec<u32>, Pivot)>, v: &mut Vec<Elt>, comb: &mut Vec<u32>| {
        for (rv, rc, (i, d)) in rows {
            let c = field.digit(v[*i], *d);
            if c != 0 {
                for (x, &y) in v.iter_mut().zip(rv) {
                    *x = field.sub(*x, field.mul(c, y));
                }
                for (x, &y) in comb.iter_mut().zip(rc) {
                    *x = ((*x as u64 + (p - c) as u64 * y as u64) % p as u64) as u32;
                }
            }
        }
    };
    for (j, img) in images.iter().enumerate() {
        debug_assert_eq!(img.len(), k);
        let mut v = img.clone();
        let mut comb = vec![0u32; nimg];
        comb[j] = 1;
        reduce(&rows, &mut v, &mut comb);
        if let Some((i, d)) = pivot_of(field, &v) {
            let c = field.digit(v[i], d);
            let ci = field.inv(c).unwrap();
            for x in v.iter_mut() {
                *x = field.mul(*x, ci);
            }
            for x in comb.iter_mut() {
                *x = (*x as u64 * ci as u64 % p as u64) as u32;
            }
            rows.push((v, comb, (i, d)));
        }
    }
    let mut v = target.to_vec();
    let mut comb = vec![0u32; nimg];
    reduce(&rows, &mut v, &mut comb);
    if v.iter().any(|&x| x != 0) {
        return None;
    }
    // v_target - Σ comb·img = 0, so the solution is -comb.
    Some(comb.iter().map(|&c| (p - c) % p).collect())
}
