//! F_{q^m}-linear codes in the rank metric.

use std::sync::atomic::{AtomicU32, Ordering};

use crate::config::{check_budget, config};
use crate::error::{Error, Result};
use crate::gf::{Elt, FieldSpec};
use crate::linalg::{fq_span_dim, Mat, System};
use crate::par;

/// Row space of a reduced generator matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Code {
    field: FieldSpec,
    n: usize,
    gen: Mat,
}

impl Code {
    pub fn new<V: AsRef<[Elt]>>(field: &FieldSpec, n: usize, rows: &[V]) -> Result<Code> {
        crate::linalg::check_vectors(field, n, rows)?;
        let mut m = Mat::from_rows(n, rows);
        let r = m.rref(field).len();
        let kept: Vec<Vec<Elt>> = (0..r).map(|i| m.row(i).to_vec()).collect();
        Ok(Code {
            field: field.clone(),
            n,
            gen: Mat::from_rows(n, &kept),
        })
    }

    /// The whole space F_{q^m}^n.
    pub fn full(field: &FieldSpec, n: usize) -> Code {
        Code {
            field: field.clone(),
            n,
            gen: Mat::identity(n),
        }
    }

    pub fn zero(field: &FieldSpec, n: usize) -> Code {
        Code {
            field: field.clone(),
            n,
            gen: Mat::zeros(0, n),
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> usize {
        self.gen.rows
    }

    pub fn generator(&self) -> &Mat {
        &self.gen
    }

    /// Right kernel of the generator matrix.
    pub fn dual(&self) -> Code {
        let rows = if self.dim() == 0 {
            Mat::identity(self.n).row_vecs()
        } else {
            self.gen.kernel(&self.field)
        };
        Code::new(&self.field, self.n, &rows).expect("kernel vectors are in range")
    }

    pub fn contains(&self, x: &[Elt]) -> bool {
        let mut rows = self.gen.row_vecs();
        rows.push(x.to_vec());
        Mat::from_rows(self.n, &rows).rank(&self.field) == self.dim()
    }

    /// C ⊇ other.
    pub fn contains_code(&self, other: &Code) -> bool {
        other.gen.row_vecs().iter().all(|r| self.contains(r))
    }

    /// Every codeword, by odometer over the message space.
    pub fn for_each_codeword<F: FnMut(&[Elt])>(&self, mut visit: F) {
        let f = &self.field;
        let big_q = f.order() as usize;
        let kc = self.dim();
        let mut c = vec![0 as Elt; self.n];
        let mut digits = vec![0usize; kc];
        visit(&c);
        let total = (big_q as u64).pow(kc as u32);
        for t in 1..total {
            let mut j = 0;
            let mut tt = t;
            while tt % big_q as u64 == 0 {
                tt /= big_q as u64;
                j += 1;
            }
            let next = (digits[j] + 1) % big_q;
            let d = f.sub(next as Elt, digits[j] as Elt);
            digits[j] = next;
            for (x, &y) in c.iter_mut().zip(self.gen.row(j)) {
                *x = f.add(*x, f.mul(d, y));
            }
            visit(&c);
        }
    }
}

/// Columns are the canonical F_q-basis of U.
pub fn code_from_system(u: &System) -> Result<Code> {
    let gens = u.generators();
    if gens.is_empty() {
        return Err(Error::RankTooSmall { rank: 0, needed: 1 });
    }
    let n = gens.len();
    let k = u.k();
    let rows: Vec<Vec<Elt>> = (0..k).map(|i| gens.iter().map(|g| g[i]).collect()).collect();
    Code::new(u.field(), n, &rows)
}

/// dim_{F_q} of the span of the entries.
pub fn rank_weight(field: &FieldSpec, x: &[Elt]) -> usize {
    fq_span_dim(field, x)
}

fn budget(c: &Code, exp: usize) -> Result<()> {
    let q = c.field.order() as u128;
    let needed = q.checked_pow(exp as u32).unwrap_or(u128::MAX);
    check_budget("covering radius", needed, config().enum_cap)
}

/// max_x min_{c ∈ C} rank_weight(x - c), pairing every x with every c.
pub fn covering_radius_naive(c: &Code) -> Result<u32> {
    budget(c, c.n + c.dim())?;
    let f = &c.field;
    let big_q = f.order() as u64;
    let n = c.n;
    let mut words = Vec::new();
    c.for_each_codeword(|w| words.push(w.to_vec()));
    let total = big_q.pow(n as u32);
    let best = AtomicU32::new(0);
    let chunks = (total as usize).min(1 << 12).max(1);
    par::for_each(chunks, |ch| {
        let lo = total * ch as u64 / chunks as u64;
        let hi = total * (ch as u64 + 1) / chunks as u64;
        let mut x = vec![0 as Elt; n];
        let mut diff = vec![0 as Elt; n];
        for t in lo..hi {
            let mut r = t;
            for xi in x.iter_mut().rev() {
                *xi = (r % big_q) as Elt;
                r /= big_q;
            }
            let mut m = usize::MAX;
            for w in &words {
                for i in 0..n {
                    diff[i] = f.sub(x[i], w[i]);
                }
                m = m.min(rank_weight(f, &diff));
                if m == 0 {
                    break;
                }
            }
            best.fetch_max(m as u32, Ordering::Relaxed);
        }
    });
    Ok(best.into_inner())
}

/// Same value through a coset-leader table: each x updates the minimum rank
/// weight stored under its syndrome, and the radius is the largest entry.
pub fn covering_radius_syndrome(c: &Code) -> Result<u32> {
    budget(c, c.n)?;
    let f = &c.field;
    let n = c.n;
    let h = c.dual();
    let r = h.dim();
    if r == 0 {
        return Ok(0);
    }
    let big_q = f.order() as usize;
    // Column j of H, as the syndrome change of a unit step in coordinate j.
    let cols: Vec<Vec<Elt>> = (0..n).map(|j| (0..r).map(|i| h.gen.get(i, j)).collect()).collect();
    let slots = (big_q as u64).pow(r as u32) as usize;
    let mut leader = vec![u8::MAX; slots];
    let mut x = vec![0 as Elt; n];
    let mut s = vec![0 as Elt; r];
    let mut digits = vec![0usize; n];
    let key = |s: &[Elt]| s.iter().fold(0usize, |acc, &v| acc * big_q + v as usize);
    leader[0] = 0;
    let total = (big_q as u64).pow(n as u32);
    for t in 1..total {
        let mut j = 0;
        let mut tt = t;
        while tt % big_q as u64 == 0 {
            tt /= big_q as u64;
            j += 1;
        }
        let next = (digits[j] + 1) % big_q;
        let d = f.sub(next as Elt, digits[j] as Elt);
        digits[j] = next;
        x[j] = f.add(x[j], d);
        for (si, &hj) in s.iter_mut().zip(&cols[j]) {
            *si = f.add(*si, f.mul(d, hj));
        }
        let slot = &mut leader[key(&s)];
        if *slot > 0 {
            let w = rank_weight(f, &x) as u8;
            if w < *slot {
                *slot = w;
            }
        }
    }
    Ok(leader.into_iter().max().unwrap() as u32)
}

/// Rank covering radius. The coset-leader pass visits each x once, so it is
/// always used; the pairwise version stays as a cross-check.
pub fn covering_radius(c: &Code) -> Result<u32> {
    covering_radius_syndrome(c)
}
