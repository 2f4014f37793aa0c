//! Orbit representatives under the semilinear group ΓL(k, q^m).

use super::grassmann::rref;
use crate::config::{check_budget, config};
use crate::error::Result;
use crate::gf::{Elt, FieldSpec};
use crate::linalg::{Mat, System};

/// F_q-coordinates of every element of F_{q^m} in the basis 1, g, …, g^{m-1}.
pub(crate) struct Coords {
    basis: Vec<Elt>,
    table: Vec<Vec<Elt>>,
}

impl Coords {
    pub(crate) fn new(f: &FieldSpec) -> Result<Coords> {
        check_budget("coordinate table", f.order() as u128, config().enum_cap.min(1 << 24))?;
        let m = f.m() as usize;
        let fq = f.mid_elements();
        let q = fq.len() as u64;
        let basis: Vec<Elt> = (0..m as u64).map(|j| f.exp(j)).collect();
        let mut table = vec![Vec::new(); f.order() as usize];
        for t in 0..f.order() {
            let mut r = t;
            let mut z = 0;
            let mut digits = Vec::with_capacity(m);
            for &b in &basis {
                let c = fq[(r % q) as usize];
                r /= q;
                z = f.add(z, f.mul(c, b));
                digits.push(c);
            }
            table[z as usize] = digits;
        }
        Ok(Coords { basis, table })
    }

    pub(crate) fn of(&self, z: Elt) -> &[Elt] {
        &self.table[z as usize]
    }

    /// Vector of F_{q^m}^k from its km coordinates (component-major).
    pub(crate) fn vector(&self, f: &FieldSpec, k: usize, c: &[Elt]) -> Vec<Elt> {
        let m = self.basis.len();
        (0..k)
            .map(|i| {
                (0..m).fold(0, |acc, j| f.add(acc, f.mul(c[i * m + j], self.basis[j])))
            })
            .collect()
    }
}

/// Canonical orbit representative of U under ΓL(k, q^m).
///
/// Every ordered F_{q^m}-independent tuple (b_1, …, b_d) of vectors of U,
/// d = dim of the F_{q^m}-span, is sent to (e_1, …, e_d); the image is then
/// twisted by each field automorphism and the least canonical key wins.
/// Two systems in one orbit produce the same set of images.
pub fn canonical_reduce(u: &System) -> Result<System> {
    let f = u.field();
    let k = u.k();
    if u.is_empty() {
        return Ok(u.clone());
    }
    let d = Mat::from_rows(k, u.generators()).rank(f);
    let nvec = (f.q() as u128).saturating_pow(u.rank() as u32);
    check_budget("canonical_reduce frames", nvec.saturating_pow(d as u32), config().enum_cap.min(1 << 26))?;
    let mut vecs: Vec<Vec<Elt>> = Vec::new();
    u.for_each_vector(|v| {
        if v.iter().any(|&x| x != 0) {
            vecs.push(v.to_vec());
        }
    });
    let mut best: Option<(Vec<Elt>, System)> = None;
    let mut frame: Vec<usize> = Vec::new();
    frames(f, k, &vecs, d, &mut frame, &mut |fr| {
        let rows: Vec<Vec<Elt>> = fr.iter().map(|&i| vecs[i].clone()).collect();
        let solver = LeftSolver::new(f, &rows);
        let imgs: Vec<Vec<Elt>> = u
            .generators()
            .iter()
            .map(|g| {
                let mut c = solver.solve(f, g);
                c.resize(k, 0);
                c
            })
            .collect();
        for s in 0..f.degree() as i64 {
            let tw: Vec<Vec<Elt>> = imgs
                .iter()
                .map(|v| v.iter().map(|&x| f.abs_frob(x, s)).collect())
                .collect();
            let sys = System::new(f, k, &tw).unwrap();
            let key = sys.canonical_key();
            if best.as_ref().is_none_or(|(b, _)| key < *b) {
                best = Some((key, sys));
            }
        }
    });
    Ok(best.expect("nonzero system has a frame").1)
}

fn frames<F: FnMut(&[usize])>(
    f: &FieldSpec,
    k: usize,
    vecs: &[Vec<Elt>],
    d: usize,
    cur: &mut Vec<usize>,
    visit: &mut F,
) {
    if cur.len() == d {
        visit(cur);
        return;
    }
    for i in 0..vecs.len() {
        if cur.contains(&i) {
            continue;
        }
        cur.push(i);
        let rows: Vec<Vec<Elt>> = cur.iter().map(|&j| vecs[j].clone()).collect();
        if Mat::from_rows(k, &rows).rank(f) == cur.len() {
            frames(f, k, vecs, d, cur, visit);
        }
        cur.pop();
    }
}

/// Solves c·B = v for independent rows B, given v in their span.
struct LeftSolver {
    /// T with T·B = R in reduced echelon form
    t: Vec<Vec<Elt>>,
    pivots: Vec<usize>,
}

impl LeftSolver {
    fn new(f: &FieldSpec, b: &[Vec<Elt>]) -> LeftSolver {
        let d = b.len();
        let mut aug: Vec<Vec<Elt>> = b
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend((0..d).map(|j| (i == j) as Elt));
                row
            })
            .collect();
        let k = b[0].len();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..k {
            let Some(p) = (r..d).find(|&i| aug[i][c] != 0) else {
                continue;
            };
            aug.swap(r, p);
            let inv = f.inv(aug[r][c]).unwrap();
            for x in aug[r].iter_mut() {
                *x = f.mul(*x, inv);
            }
            for i in 0..d {
                if i != r && aug[i][c] != 0 {
                    let t = aug[i][c];
                    for j in 0..k + d {
                        let v = f.sub(aug[i][j], f.mul(t, aug[r][j]));
                        aug[i][j] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let t = aug.into_iter().map(|row| row[k..].to_vec()).collect();
        LeftSolver { t, pivots }
    }

    fn solve(&self, f: &FieldSpec, v: &[Elt]) -> Vec<Elt> {
        let d = self.t.len();
        let mut c = vec![0; d];
        for (i, &p) in self.pivots.iter().enumerate() {
            for j in 0..d {
                c[j] = f.add(c[j], f.mul(v[p], self.t[i][j]));
            }
        }
        c
    }
}

/// Isomorph rejection for frame extensions F_q^k ⊕ W: the group
/// GL(k, q) ⋊ Aut(F_{q^m}) fixes F_q^k and acts on the complements W.
pub(crate) struct FrameStabilizer {
    mats: Vec<Vec<Vec<Elt>>>,
    twists: u32,
}

impl FrameStabilizer {
    /// Uses all of GL(k, q) when it has at most `cap` elements, otherwise
    /// only the permutation matrices. Either choice keeps every orbit.
    pub(crate) fn new(f: &FieldSpec, k: usize, cap: u64) -> FrameStabilizer {
        let fq = f.mid_elements();
        let q = fq.len() as u64;
        let full = q.checked_pow((k * k) as u32).is_some_and(|n| n <= cap);
        let mut mats = Vec::new();
        if full {
            let total = q.pow((k * k) as u32);
            for t in 0..total {
                let mut r = t;
                let m: Vec<Vec<Elt>> = (0..k)
                    .map(|_| {
                        (0..k)
                            .map(|_| {
                                let c = fq[(r % q) as usize];
                                r /= q;
                                c
                            })
                            .collect()
                    })
                    .collect();
                if Mat::from_rows(k, &m).rank(f) == k {
                    mats.push(m);
                }
            }
        } else {
            let mut perm: Vec<usize> = (0..k).collect();
            permutations(&mut perm, 0, &mut |p| {
                mats.push((0..k).map(|i| (0..k).map(|j| (p[i] == j) as Elt).collect()).collect());
            });
        }
        FrameStabilizer { mats, twists: f.degree() }
    }

    pub(crate) fn order(&self) -> u64 {
        self.mats.len() as u64 * self.twists as u64
    }

    /// W (echelon rows over the km - k coordinates with j ≥ 1) is the least
    /// member of its orbit.
    pub(crate) fn is_least(&self, f: &FieldSpec, co: &Coords, k: usize, w: &[Vec<Elt>]) -> bool {
        let m = f.m() as usize;
        let vecs: Vec<Vec<Elt>> = w.iter().map(|r| co.vector(f, k, &lift(k, m, r))).collect();
        for s in 0..self.twists as i64 {
            let tw: Vec<Vec<Elt>> = vecs
                .iter()
                .map(|v| v.iter().map(|&x| f.abs_frob(x, s)).collect())
                .collect();
            for a in &self.mats {
                let mut rows: Vec<Vec<Elt>> = tw
                    .iter()
                    .map(|v| {
                        let img: Vec<Elt> = (0..k)
                            .map(|i| (0..k).fold(0, |acc, j| f.add(acc, f.mul(a[i][j], v[j]))))
                            .collect();
                        project(co, m, &img)
                    })
                    .collect();
                rref(f, &mut rows);
                if rows.as_slice() < w {
                    return false;
                }
            }
        }
        true
    }
}

/// Inserts zero j = 0 coordinates into a quotient row.
pub(crate) fn lift(k: usize, m: usize, r: &[Elt]) -> Vec<Elt> {
    let mut c = vec![0; k * m];
    for i in 0..k {
        for j in 1..m {
            c[i * m + j] = r[i * (m - 1) + j - 1];
        }
    }
    c
}

/// Drops the j = 0 coordinates (the F_q^k part).
fn project(co: &Coords, m: usize, v: &[Elt]) -> Vec<Elt> {
    let mut out = Vec::with_capacity(v.len() * (m - 1));
    for &x in v {
        out.extend_from_slice(&co.of(x)[1..]);
    }
    out
}

fn permutations<F: FnMut(&[usize])>(p: &mut Vec<usize>, i: usize, visit: &mut F) {
    if i == p.len() {
        visit(p);
        return;
    }
    for j in i..p.len() {
        p.swap(i, j);
        permutations(p, i + 1, visit);
        p.swap(i, j);
    }
}
