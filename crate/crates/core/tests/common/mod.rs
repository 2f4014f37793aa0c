//! Brute-force reference implementations shared by the integration tests.
//! Everything here works from raw field operations and full enumeration.
#![allow(dead_code)]

use std::collections::HashSet;

use ranksat_core::gf::Subfield;
use ranksat_core::linalg::System;
use ranksat_core::{Elt, FieldSpec};

pub fn rank(f: &FieldSpec, rows: &[Vec<Elt>]) -> usize {
    let mut m: Vec<Vec<Elt>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        let inv = f.inv(m[r][c]).unwrap();
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let t = f.mul(m[i][c], inv);
                for j in 0..cols {
                    let v = f.sub(m[i][j], f.mul(t, m[r][j]));
                    m[i][j] = v;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn normalized(f: &FieldSpec, v: &[Elt]) -> Option<Vec<Elt>> {
    let lead = *v.iter().find(|&&x| x != 0)?;
    let inv = f.inv(lead).unwrap();
    Some(v.iter().map(|&x| f.mul(x, inv)).collect())
}

/// All points of PG(k-1, q^m) as normalized vectors, by filtering F^k.
pub fn all_points(f: &FieldSpec, k: usize) -> Vec<Vec<Elt>> {
    let big = f.order();
    let total = big.pow(k as u32);
    let mut out = Vec::new();
    for t in 1..total {
        let mut v = vec![0; k];
        let mut r = t;
        for x in v.iter_mut().rev() {
            *x = (r % big) as Elt;
            r /= big;
        }
        if v.iter().find(|&&x| x != 0) == Some(&1) {
            out.push(v);
        }
    }
    out
}

pub fn base_field(f: &FieldSpec) -> Vec<Elt> {
    f.subfield_elements(Subfield::Mid)
}

/// Every vector of U as an F_q-combination of its generators.
pub fn span_vectors(u: &System) -> Vec<Vec<Elt>> {
    let f = u.field();
    let fq = base_field(f);
    let gens = u.generators();
    let mut out = vec![vec![0; u.k()]];
    for g in gens {
        let mut next = Vec::with_capacity(out.len() * fq.len());
        for v in &out {
            for &c in &fq {
                next.push(v.iter().zip(g).map(|(&a, &b)| f.add(a, f.mul(c, b))).collect());
            }
        }
        out = next;
    }
    out
}

pub fn linset_points(u: &System) -> Vec<Vec<Elt>> {
    let f = u.field();
    let set: HashSet<Vec<Elt>> = span_vectors(u)
        .iter()
        .filter_map(|v| normalized(f, v))
        .collect();
    let mut v: Vec<_> = set.into_iter().collect();
    v.sort();
    v
}

fn subsets(n: usize, r: usize, start: usize, cur: &mut Vec<usize>, out: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if cur.len() == r {
        return out(cur);
    }
    for i in start..n {
        cur.push(i);
        if subsets(n, r, i + 1, cur, out) {
            cur.pop();
            return true;
        }
        cur.pop();
    }
    false
}

/// Q in the span of some r points of `pts`.
pub fn saturated_by(f: &FieldSpec, pts: &[Vec<Elt>], q: &[Elt], r: usize) -> bool {
    let r = r.min(pts.len());
    subsets(pts.len(), r, 0, &mut Vec::new(), &mut |idx| {
        let rows: Vec<Vec<Elt>> = idx.iter().map(|&i| pts[i].clone()).collect();
        let base = rank(f, &rows);
        let mut with = rows;
        with.push(q.to_vec());
        rank(f, &with) == base
    })
}

/// Minimal ρ with every point in the span of ρ points of L_U.
pub fn index_bruteforce(u: &System) -> Option<u32> {
    let f = u.field();
    let pts = linset_points(u);
    if pts.is_empty() || rank(f, &pts) < u.k() {
        return None;
    }
    let all = all_points(f, u.k());
    (1..=u.k()).find(|&r| all.iter().all(|q| saturated_by(f, &pts, q, r))).map(|r| r as u32)
}

/// dim_{F_q} of the span of the entries, by counting the span.
pub fn rank_weight_oracle(f: &FieldSpec, x: &[Elt]) -> usize {
    let fq = base_field(f);
    let mut span: HashSet<Elt> = HashSet::from([0]);
    for &e in x {
        let cur: Vec<Elt> = span.iter().copied().collect();
        for s in cur {
            for &c in &fq {
                span.insert(f.add(s, f.mul(c, e)));
            }
        }
    }
    let mut d = 0;
    let mut size = 1u64;
    while size < span.len() as u64 {
        size *= f.q();
        d += 1;
    }
    d
}

/// Rank covering radius of the row space of `gens` in F^n.
pub fn covering_radius_oracle(f: &FieldSpec, n: usize, gens: &[Vec<Elt>]) -> u32 {
    let big = f.order();
    let mut words = vec![vec![0; n]];
    for g in gens {
        let mut next = Vec::new();
        for w in &words {
            for c in 0..big as Elt {
                next.push(w.iter().zip(g).map(|(&a, &b)| f.add(a, f.mul(c, b))).collect::<Vec<_>>());
            }
        }
        words = next;
    }
    let words: Vec<Vec<Elt>> = words.into_iter().collect::<HashSet<_>>().into_iter().collect();
    let mut best = 0;
    for t in 0..big.pow(n as u32) {
        let mut x = vec![0; n];
        let mut r = t;
        for xi in x.iter_mut() {
            *xi = (r % big) as Elt;
            r /= big;
        }
        let m = words
            .iter()
            .map(|w| {
                let d: Vec<Elt> = x.iter().zip(w).map(|(&a, &b)| f.sub(a, b)).collect();
                rank_weight_oracle(f, &d)
            })
            .min()
            .unwrap();
        best = best.max(m as u32);
    }
    best
}

/// Random F_q-subspace spanned by `n` random vectors of F^k.
pub fn random_system(f: &FieldSpec, k: usize, n: usize, rng: &mut impl rand::Rng) -> System {
    let gens: Vec<Vec<Elt>> = (0..n)
        .map(|_| (0..k).map(|_| rng.gen_range(0..f.order()) as Elt).collect())
        .collect();
    System::new(f, k, &gens).unwrap()
}

pub fn point_saturated_brute(f: &FieldSpec, pts: &[Vec<Elt>], q: &[Elt]) -> bool {
    saturated_by(f, pts, q, 2)
}

pub fn det3(f: &FieldSpec, m: &[Vec<Elt>; 3]) -> Elt {
    let t = |a: usize, b: usize, c: usize| f.mul(m[0][a], f.mul(m[1][b], m[2][c]));
    let pos = f.add(f.add(t(0, 1, 2), t(1, 2, 0)), t(2, 0, 1));
    let neg = f.add(f.add(t(2, 1, 0), t(0, 2, 1)), t(1, 0, 2));
    f.sub(pos, neg)
}

/// Unique solution of a square system by Gauss-Jordan elimination.
pub fn solve(f: &FieldSpec, a: &[Vec<Elt>], b: &[Elt]) -> Option<Vec<Elt>> {
    let n = a.len();
    let mut m: Vec<Vec<Elt>> = a.iter().zip(b).map(|(r, &v)| {
        let mut r = r.clone();
        r.push(v);
        r
    }).collect();
    for c in 0..n {
        let p = (c..n).find(|&i| m[i][c] != 0)?;
        m.swap(c, p);
        let inv = f.inv(m[c][c]).unwrap();
        for j in 0..=n {
            m[c][j] = f.mul(m[c][j], inv);
        }
        for i in 0..n {
            if i != c && m[i][c] != 0 {
                let t = m[i][c];
                for j in 0..=n {
                    let v = f.sub(m[i][j], f.mul(t, m[c][j]));
                    m[i][j] = v;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n]).collect())
}
