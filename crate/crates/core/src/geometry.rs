//! Points of PG(k-1, q^m): normalization, a perfect ranking, and marking
//! bitmaps indexed by that ranking.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::config::{check_budget, config};
use crate::error::{Error, Result};
use crate::gf::{Elt, FieldSpec};

/// A projective point, first nonzero coordinate equal to 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(Vec<Elt>);

impl Point {
    /// Normalizes `coords`; `None` for the zero vector.
    pub fn new(field: &FieldSpec, coords: &[Elt]) -> Option<Point> {
        let mut v = coords.to_vec();
        normalize(field, &mut v).then_some(Point(v))
    }

    pub fn coords(&self) -> &[Elt] {
        &self.0
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn parse(field: &FieldSpec, s: &str) -> Result<Point> {
        let coords = s
            .split_whitespace()
            .map(|t| t.parse::<Elt>().map_err(|e| Error::Parse(e.to_string())))
            .collect::<Result<Vec<Elt>>>()?;
        if coords.iter().any(|&c| !field.contains(c)) {
            return Err(Error::FieldMismatch);
        }
        Point::new(field, &coords).ok_or_else(|| Error::Parse("zero vector is not a point".into()))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Scales `v` so its first nonzero entry is 1. Returns false for zero.
#[inline]
pub fn normalize(field: &FieldSpec, v: &mut [Elt]) -> bool {
    let Some(i) = v.iter().position(|&x| x != 0) else {
        return false;
    };
    if v[i] != 1 {
        let c = field.inv(v[i]).unwrap();
        v[i] = 1;
        for x in v[i + 1..].iter_mut() {
            *x = field.mul(*x, c);
        }
    }
    true
}

/// Ranking of the points of PG(k-1, Q).
///
/// A point whose leading 1 sits at coordinate i gets index
/// offset(i) + Σ_{j>i} v_j·Q^{k-1-j}, offset(i) = Σ_{i'<i} Q^{k-1-i'}.
/// Points with earlier leading coordinates come first.
#[derive(Clone, Debug)]
pub struct PointSpace {
    field: FieldSpec,
    k: usize,
    big_q: u64,
    offsets: Vec<u64>,
    total: u64,
}

impl PointSpace {
    pub fn new(field: &FieldSpec, k: usize) -> Result<PointSpace> {
        let big_q = field.order();
        let mut offsets = Vec::with_capacity(k + 1);
        let mut acc: u128 = 0;
        for i in 0..k {
            offsets.push(acc as u64);
            acc += (big_q as u128).pow((k - 1 - i) as u32);
            check_budget("projective points", acc, config().point_cap)?;
        }
        offsets.push(acc as u64);
        Ok(PointSpace {
            field: field.clone(),
            k,
            big_q,
            offsets,
            total: acc as u64,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Index of an already normalized vector.
    #[inline]
    pub fn index(&self, v: &[Elt]) -> u64 {
        let i = v.iter().position(|&x| x != 0).expect("nonzero point");
        let mut r = 0u64;
        for &x in &v[i + 1..] {
            r = r * self.big_q + x as u64;
        }
        self.offsets[i] + r
    }

    /// Index of the point spanned by any nonzero vector.
    #[inline]
    pub fn index_of(&self, v: &[Elt]) -> Option<u64> {
        let i = v.iter().position(|&x| x != 0)?;
        let f = &self.field;
        let c = f.inv(v[i]).unwrap();
        let mut r = 0u64;
        if c == 1 {
            for &x in &v[i + 1..] {
                r = r * self.big_q + x as u64;
            }
        } else {
            for &x in &v[i + 1..] {
                r = r * self.big_q + f.mul(x, c) as u64;
            }
        }
        Some(self.offsets[i] + r)
    }

    pub fn point(&self, idx: u64) -> Point {
        assert!(idx < self.total);
        let i = self.offsets.partition_point(|&o| o <= idx) - 1;
        let mut rest = idx - self.offsets[i];
        let mut v = vec![0 as Elt; self.k];
        v[i] = 1;
        for j in (i + 1..self.k).rev() {
            v[j] = (rest % self.big_q) as Elt;
            rest /= self.big_q;
        }
        Point(v)
    }

    pub fn iter(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.total).map(move |i| self.point(i))
    }
}

/// Fixed-size bit set with idempotent, thread-safe set operations.
pub struct Bitmap {
    words: Vec<AtomicU64>,
    len: u64,
}

impl Bitmap {
    pub fn new(len: u64) -> Bitmap {
        let n = len.div_ceil(64) as usize;
        Bitmap {
            words: (0..n).map(|_| AtomicU64::new(0)).collect(),
            len,
        }
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn set(&self, i: u64) {
        let w = &self.words[(i >> 6) as usize];
        let bit = 1u64 << (i & 63);
        if w.load(Ordering::Relaxed) & bit == 0 {
            w.fetch_or(bit, Ordering::Relaxed);
        }
    }

    /// Sets bit i and reports whether it was already set.
    #[inline]
    pub fn test_and_set(&self, i: u64) -> bool {
        let bit = 1u64 << (i & 63);
        self.words[(i >> 6) as usize].fetch_or(bit, Ordering::Relaxed) & bit != 0
    }

    #[inline]
    pub fn get(&self, i: u64) -> bool {
        self.words[(i >> 6) as usize].load(Ordering::Relaxed) & (1u64 << (i & 63)) != 0
    }

    pub fn count(&self) -> u64 {
        self.words
            .iter()
            .map(|w| w.load(Ordering::Relaxed).count_ones() as u64)
            .sum()
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.len
    }

    /// Indices of clear bits, ascending.
    pub fn zeros(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.len).filter(move |&i| !self.get(i))
    }

    pub fn first_zero(&self) -> Option<u64> {
        for (wi, w) in self.words.iter().enumerate() {
            let x = !w.load(Ordering::Relaxed);
            if x != 0 {
                let i = wi as u64 * 64 + x.trailing_zeros() as u64;
                return (i < self.len).then_some(i);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranking_is_a_bijection() {
        for (p, m, k) in [(2, 2, 3), (3, 1, 3), (2, 3, 2), (2, 1, 4)] {
            let f = FieldSpec::gf(p, 1, m).unwrap();
            let ps = PointSpace::new(&f, k).unwrap();
            let q = f.order();
            let expect = (q.pow(k as u32) - 1) / (q - 1);
            assert_eq!(ps.total(), expect);
            for i in 0..ps.total() {
                let pt = ps.point(i);
                assert_eq!(ps.index(pt.coords()), i);
                let scaled: Vec<Elt> = pt.coords().iter().map(|&x| f.mul(x, f.generator())).collect();
                assert_eq!(ps.index_of(&scaled), Some(i));
            }
        }
    }

    #[test]
    fn bitmap_ops() {
        let b = Bitmap::new(130);
        assert_eq!(b.first_zero(), Some(0));
        for i in 0..130 {
            if i != 77 {
                b.set(i);
            }
        }
        assert!(!b.is_full());
        assert_eq!(b.first_zero(), Some(77));
        assert!(!b.test_and_set(77));
        assert!(b.test_and_set(77));
        assert!(b.is_full());
        assert_eq!(b.first_zero(), None);
    }

    #[test]
    fn point_parse_normalizes() {
        let f = FieldSpec::gf(2, 1, 4).unwrap();
        let p = Point::parse(&f, "0 2 4").unwrap();
        assert_eq!(p.coords(), &[0, 1, 2]);
        assert_eq!(p.to_string(), "0 1 2");
        assert!(Point::parse(&f, "0 0").is_err());
        assert!(Point::parse(&f, "0 16").is_err());
    }
}
