//! Saturation of PG(k-1, q^m) by a linear set.
//!
//! Level j of the computation marks every point lying in the span of j
//! points of L_U, i.e. the (j-1)-saturated points. Level 1 is L_U itself,
//! level 2 is the secant-line scan, higher levels grow spans one point at a
//! time with deduplication by echelon form.

use std::collections::HashSet;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use crate::error::Result;
use crate::geometry::{Bitmap, Point, PointSpace};
use crate::gf::{Elt, FieldSpec};
use crate::linalg::{Mat, System};
use crate::linset::{linear_set, spans_ambient, LinearSet};
use crate::par;

/// Result of a saturation computation.
#[derive(Clone, Debug)]
pub struct SaturationReport {
    pub rank: usize,
    pub spans: bool,
    /// Exact saturating index; absent when L_U does not span or the level
    /// limit was reached first.
    pub index: Option<u32>,
    /// Highest level fully computed.
    pub levels: u32,
    /// (ρ', P) with P not (ρ'-1)-saturated, for each failed level ρ'.
    pub witnesses: Vec<(u32, Point)>,
}

impl SaturationReport {
    /// Every point is (ρ-1)-saturated.
    pub fn at_most(&self, rho: u32) -> Option<bool> {
        match self.index {
            Some(i) => Some(i <= rho),
            None if !self.spans => Some(false),
            None if rho <= self.levels => Some(false),
            None => None,
        }
    }
}

/// Shared marking state for one system.
pub(crate) struct Marker<'a> {
    field: &'a FieldSpec,
    space: &'a PointSpace,
    pts: Vec<Vec<Elt>>,
    marks: Bitmap,
    marked: AtomicU64,
    full: AtomicBool,
}

impl<'a> Marker<'a> {
    pub(crate) fn new(ls: &'a LinearSet, field: &'a FieldSpec) -> Self {
        let space = ls.space();
        let pts: Vec<Vec<Elt>> = ls
            .indices()
            .iter()
            .map(|&i| space.point(i).coords().to_vec())
            .collect();
        let m = Marker {
            field,
            space,
            pts,
            marks: Bitmap::new(space.total()),
            marked: AtomicU64::new(0),
            full: AtomicBool::new(false),
        };
        for &i in ls.indices() {
            m.mark(i);
        }
        m
    }

    #[inline]
    fn mark(&self, idx: u64) {
        if !self.marks.test_and_set(idx) {
            let c = self.marked.fetch_add(1, Ordering::Relaxed) + 1;
            if c == self.space.total() {
                self.full.store(true, Ordering::Relaxed);
            }
        }
    }

    pub(crate) fn is_full(&self) -> bool {
        self.full.load(Ordering::Relaxed)
    }

    pub(crate) fn first_unmarked(&self) -> Option<Point> {
        self.marks.first_zero().map(|i| self.space.point(i))
    }

    /// Marks the span of echelon rows b_1..b_j: every point
    /// b_l + Σ_{i>l} c_i b_i is already normalized.
    fn mark_span(&self, rows: &[Vec<Elt>]) {
        let f = self.field;
        let big_q = f.order() as usize;
        let k = self.space.k();
        let j = rows.len();
        let mut v = vec![0 as Elt; k];
        let mut digits = vec![0usize; j];
        for l in 0..j {
            v.copy_from_slice(&rows[l]);
            self.mark(self.space.index(&v));
            let len = j - 1 - l;
            if len == 0 {
                continue;
            }
            digits[..len].fill(0);
            let total = (big_q as u64).pow(len as u32);
            for t in 1..total {
                let mut jj = 0;
                let mut tt = t;
                while tt % big_q as u64 == 0 {
                    tt /= big_q as u64;
                    jj += 1;
                }
                let c = digits[jj] as Elt;
                let next = ((digits[jj] + 1) % big_q) as Elt;
                let d = f.sub(next, c);
                let row = &rows[l + 1 + jj];
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = f.add(*x, f.mul(d, y));
                }
                digits[jj] = next as usize;
                self.mark(self.space.index(&v));
            }
            if self.is_full() {
                return;
            }
        }
    }

    /// Level 2: every line through two points of L_U.
    pub(crate) fn mark_secants(&self) {
        let n = self.pts.len();
        let k = self.space.k();
        let f = self.field;
        let lines = LineIndex::new(f, k);
        let seen = lines.as_ref().map(|li| Bitmap::new(li.total));
        let big_q = f.order();
        par::for_each(n, |i| {
            if self.is_full() {
                return;
            }
            let mut r1 = vec![0 as Elt; k];
            let mut r2 = vec![0 as Elt; k];
            let mut w = vec![0 as Elt; k];
            for j in i + 1..n {
                let (p1, p2) = rref2(f, &self.pts[i], &self.pts[j], &mut r1, &mut r2);
                if let (Some(li), Some(seen)) = (&lines, &seen) {
                    if seen.test_and_set(li.index(&r1, &r2, p1, p2)) {
                        continue;
                    }
                }
                self.mark(self.space.index(&r2));
                for lam in 0..big_q as Elt {
                    for c in 0..k {
                        w[c] = f.add(r1[c], f.mul(lam, r2[c]));
                    }
                    self.mark(self.space.index(&w));
                }
                if self.is_full() {
                    return;
                }
            }
        });
    }

    /// Level j ≥ 3, from the distinct (j-1)-spans.
    pub(crate) fn mark_level(&self, prev: &[Vec<Vec<Elt>>]) -> Vec<Vec<Vec<Elt>>> {
        let f = self.field;
        let k = self.space.k();
        let mut seen: HashSet<Vec<Elt>> = HashSet::new();
        let mut next = Vec::new();
        for span in prev {
            for p in &self.pts {
                let mut rows = span.clone();
                rows.push(p.clone());
                let mut m = Mat::from_rows(k, &rows);
                if m.rref(f).len() < rows.len() {
                    continue;
                }
                if !seen.insert(m.data.clone()) {
                    continue;
                }
                let r = m.row_vecs();
                if !self.is_full() {
                    self.mark_span(&r);
                }
                next.push(r);
            }
        }
        next
    }

    /// Distinct lines spanned by pairs of points, as echelon row pairs.
    pub(crate) fn lines(&self) -> Vec<Vec<Vec<Elt>>> {
        let f = self.field;
        let k = self.space.k();
        let mut seen: HashSet<Vec<Elt>> = HashSet::new();
        let mut out = Vec::new();
        let (mut r1, mut r2) = (vec![0; k], vec![0; k]);
        for i in 0..self.pts.len() {
            for j in i + 1..self.pts.len() {
                rref2(f, &self.pts[i], &self.pts[j], &mut r1, &mut r2);
                let mut key = r1.clone();
                key.extend_from_slice(&r2);
                if seen.insert(key) {
                    out.push(vec![r1.clone(), r2.clone()]);
                }
            }
        }
        out
    }
}

/// Echelon form of two distinct normalized points; returns the pivots.
#[inline]
fn rref2(f: &FieldSpec, a: &[Elt], b: &[Elt], r1: &mut [Elt], r2: &mut [Elt]) -> (usize, usize) {
    let ia = a.iter().position(|&x| x != 0).unwrap();
    let ib = b.iter().position(|&x| x != 0).unwrap();
    let (first, second) = if ia <= ib { (a, b) } else { (b, a) };
    r1.copy_from_slice(first);
    r2.copy_from_slice(second);
    let p1 = ia.min(ib);
    if ia == ib {
        for (x, &y) in r2.iter_mut().zip(r1.iter()) {
            *x = f.sub(*x, y);
        }
    }
    let p2 = r2.iter().position(|&x| x != 0).expect("distinct points");
    let c = r2[p2];
    if c != 1 {
        let ci = f.inv(c).unwrap();
        for x in r2[p2..].iter_mut() {
            *x = f.mul(*x, ci);
        }
    }
    let t = r1[p2];
    if t != 0 {
        for (x, &y) in r1.iter_mut().zip(r2.iter()) {
            *x = f.sub(*x, f.mul(t, y));
        }
    }
    (p1, p2)
}

/// Perfect ranking of the lines of PG(k-1, Q) by echelon form.
struct LineIndex {
    k: usize,
    big_q: u64,
    offsets: Vec<u64>,
    total: u64,
}

impl LineIndex {
    const MAX_LINES: u128 = 1 << 30;

    fn new(f: &FieldSpec, k: usize) -> Option<LineIndex> {
        if k < 2 {
            return None;
        }
        let big_q = f.order();
        let mut offsets = vec![0u64; k * k];
        let mut acc: u128 = 0;
        for p1 in 0..k {
            for p2 in p1 + 1..k {
                offsets[p1 * k + p2] = acc as u64;
                let free = (k - p1 - 2) + (k - 1 - p2);
                acc += (big_q as u128).pow(free as u32);
                if acc > Self::MAX_LINES {
                    return None;
                }
            }
        }
        Some(LineIndex {
            k,
            big_q,
            offsets,
            total: acc as u64,
        })
    }

    #[inline]
    fn index(&self, r1: &[Elt], r2: &[Elt], p1: usize, p2: usize) -> u64 {
        let mut r = 0u64;
        for (c, &x) in r1.iter().enumerate().skip(p1 + 1) {
            if c != p2 {
                r = r * self.big_q + x as u64;
            }
        }
        for &x in &r2[p2 + 1..] {
            r = r * self.big_q + x as u64;
        }
        self.offsets[p1 * self.k + p2] + r
    }
}

/// Saturation levels up to `limit` (default k).
pub fn saturation_report(u: &System, limit: Option<u32>) -> Result<SaturationReport> {
    let k = u.k() as u32;
    let limit = limit.unwrap_or(k).min(k);
    let spans = u.rank() > 0 && spans_ambient(u);
    let mut rep = SaturationReport {
        rank: u.rank(),
        spans,
        index: None,
        levels: 0,
        witnesses: Vec::new(),
    };
    if !spans {
        return Ok(rep);
    }
    let ls = linear_set(u)?;
    let f = u.field();
    let marker = Marker::new(&ls, f);
    let mut prev: Vec<Vec<Vec<Elt>>> = Vec::new();
    for level in 1..=limit {
        match level {
            1 => {}
            2 => marker.mark_secants(),
            3 => {
                prev = marker.lines();
                prev = marker.mark_level(&prev);
            }
            _ => prev = marker.mark_level(&prev),
        }
        rep.levels = level;
        if marker.is_full() {
            rep.index = Some(level);
            return Ok(rep);
        }
        rep.witnesses.push((level, marker.first_unmarked().unwrap()));
    }
    Ok(rep)
}

/// Minimal ρ with every point (ρ-1)-saturated, or `None` if L_U does not
/// span PG(k-1, q^m).
pub fn saturating_index(u: &System) -> Result<Option<u32>> {
    Ok(saturation_report(u, None)?.index)
}

/// U is a rank ρ-saturating system: the index is exactly ρ.
pub fn is_rank_saturating(u: &System, rho: u32) -> Result<bool> {
    Ok(saturation_report(u, Some(rho))?.index == Some(rho))
}

/// Every point of the space is (ρ-1)-saturated (index at most ρ).
pub fn is_at_most_saturating(u: &System, rho: u32) -> Result<bool> {
    Ok(saturation_report(u, Some(rho))?.index.is_some())
}

/// Q lies in the span of some ρ points of S.
pub fn is_point_saturated(field: &FieldSpec, s: &[Point], q: &Point, rho: u32) -> bool {
    if s.iter().any(|p| p == q) {
        return true;
    }
    match rho {
        0 | 1 => false,
        2 => line_collision(field, s.iter().map(|p| p.coords()), q.coords()),
        _ => {
            let pts: Vec<&[Elt]> = s.iter().map(|p| p.coords()).collect();
            dfs_span(field, &pts, q.coords(), rho as usize, 0, &mut Vec::new())
        }
    }
}

fn dfs_span(
    f: &FieldSpec,
    pts: &[&[Elt]],
    q: &[Elt],
    depth: usize,
    start: usize,
    cur: &mut Vec<Vec<Elt>>,
) -> bool {
    let k = q.len();
    if !cur.is_empty() {
        let mut rows = cur.clone();
        rows.push(q.to_vec());
        if Mat::from_rows(k, &rows).rank(f) == cur.len() {
            return true;
        }
    }
    if cur.len() == depth {
        return false;
    }
    for t in start..pts.len() {
        cur.push(pts[t].to_vec());
        let independent = Mat::from_rows(k, cur).rank(f) == cur.len();
        if independent && dfs_span(f, pts, q, depth, t + 1, cur) {
            cur.pop();
            return true;
        }
        cur.pop();
    }
    false
}

/// Two distinct points of `s` (both different from Q) on a common line
/// through Q. Each point is reduced modulo Q and the quotient points are
/// checked for a repeat.
pub fn line_collision<'a, I>(field: &FieldSpec, s: I, q: &[Elt]) -> bool
where
    I: IntoIterator<Item = &'a [Elt]>,
{
    let lead = q.iter().position(|&x| x != 0).expect("nonzero point");
    let qi = field.inv(q[lead]).unwrap();
    let mut seen: HashSet<Vec<Elt>> = HashSet::new();
    let mut w = vec![0 as Elt; q.len()];
    for p in s {
        let c = field.mul(p[lead], qi);
        for (x, (&a, &b)) in w.iter_mut().zip(p.iter().zip(q)) {
            *x = field.sub(a, field.mul(c, b));
        }
        if !crate::geometry::normalize(field, &mut w) {
            return true;
        }
        if !seen.insert(w.clone()) {
            return true;
        }
    }
    false
}

/// Reference check by explicit pairs: Q on the line through two points of S.
pub fn on_secant_bruteforce(field: &FieldSpec, s: &[Point], q: &Point) -> bool {
    let k = q.k();
    for i in 0..s.len() {
        if s[i] == *q {
            return true;
        }
        for j in i + 1..s.len() {
            let m = Mat::from_rows(k, &[s[i].coords(), s[j].coords(), q.coords()]);
            if m.rank(field) <= 2 {
                return true;
            }
        }
    }
    false
}

/// Q is not 1-saturated by L_U.
pub fn point_unsaturated_by(ls: &LinearSet, q: &Point) -> bool {
    let space = ls.space();
    if ls.contains_index(space.index(q.coords())) {
        return false;
    }
    let pts: Vec<Point> = ls.points();
    !line_collision(space.field(), pts.iter().map(|p| p.coords()), q.coords())
}
