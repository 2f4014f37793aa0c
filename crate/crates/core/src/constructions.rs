//! Explicit systems: Moore-type saturating systems, h-scattered Moore
//! subspaces and their thinning, the four rank-4 families in V(3, q^4) and
//! the rank-5 example.

use crate::error::{Error, Result};
use crate::gf::{Elt, FieldSpec};
use crate::linalg::{fp_solve, fq_span_dim, Mat, System};
use crate::linset::is_scattered;

/// Parameters of a Moore system in V(ρt, q^m).
#[derive(Clone, Debug)]
pub struct MooreParams {
    pub field: FieldSpec,
    pub rho: usize,
    pub t: usize,
    /// Frobenius strides of the t-1 blocks; empty means all 1.
    pub shifts: Vec<u32>,
}

impl MooreParams {
    pub fn new(field: &FieldSpec, rho: usize, t: usize) -> MooreParams {
        MooreParams {
            field: field.clone(),
            rho,
            t,
            shifts: Vec::new(),
        }
    }

    pub fn with_shifts(mut self, shifts: Vec<u32>) -> MooreParams {
        self.shifts = shifts;
        self
    }

    pub fn k(&self) -> usize {
        self.rho * self.t
    }

    fn shift(&self, block: usize) -> u32 {
        self.shifts.get(block).copied().unwrap_or(1)
    }

    fn validate(&self) -> Result<()> {
        let m = self.field.m();
        if self.rho == 0 || self.t == 0 {
            return Err(Error::InvalidParams("rho and t must be positive".into()));
        }
        if self.rho > m as usize {
            return Err(Error::InvalidParams(format!(
                "rho={} exceeds m={m}",
                self.rho
            )));
        }
        if !self.shifts.is_empty() && self.shifts.len() != self.t - 1 {
            return Err(Error::InvalidParams(format!(
                "expected {} shifts, got {}",
                self.t - 1,
                self.shifts.len()
            )));
        }
        for &s in &self.shifts {
            if gcd(s, m) != 1 {
                return Err(Error::ShiftNotCoprime { shift: s, m });
            }
        }
        Ok(())
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// F_q-basis g^0..g^{m-1} of F_{q^m}.
fn fqm_basis(f: &FieldSpec) -> Vec<Elt> {
    (0..f.m() as u64).map(|j| f.exp(j)).collect()
}

/// {(x, x^{q^s}, …, x^{q^{s(len-1)}})} placed at `offset`, one generator
/// per F_q-basis element of F_{q^m}.
fn moore_block(f: &FieldSpec, k: usize, offset: usize, len: usize, s: u32) -> Vec<Vec<Elt>> {
    fqm_basis(f)
        .into_iter()
        .map(|x| {
            let mut v = vec![0; k];
            for l in 0..len {
                v[offset + l] = f.frob(x, (s as i64) * l as i64);
            }
            v
        })
        .collect()
}

/// The rank m(t-1)+ρ system {(x_1, x_1^{q^{s_1}}, …, x_{t-1}, …, a_1, …, a_ρ)}.
pub fn moore_system(params: &MooreParams) -> Result<System> {
    params.validate()?;
    let f = &params.field;
    let (rho, t, k) = (params.rho, params.t, params.k());
    let mut gens = Vec::new();
    for b in 0..t - 1 {
        gens.extend(moore_block(f, k, b * rho, rho, params.shift(b)));
    }
    for c in 0..rho {
        let mut v = vec![0; k];
        v[(t - 1) * rho + c] = 1;
        gens.push(v);
    }
    System::new(f, k, &gens)
}

/// F_q-coefficients of `target` in terms of `basis` (assumed F_q-independent).
fn fq_coords(f: &FieldSpec, basis: &[Elt], target: Elt) -> Option<Vec<Elt>> {
    let zb = f.fq_basis();
    let images: Vec<Vec<Elt>> = basis
        .iter()
        .flat_map(|&b| zb.iter().map(move |&z| vec![f.mul(z, b)]))
        .collect();
    let c = fp_solve(f, &images, &[target])?;
    let a = zb.len();
    Some(
        (0..basis.len())
            .map(|h| {
                (0..a).fold(0, |acc, j| {
                    f.add(acc, f.mul(c[h * a + j] as Elt, zb[j]))
                })
            })
            .collect(),
    )
}

/// Vectors u_1..u_ρ of the Moore system whose F_{q^m}-span contains v,
/// built as in the saturation argument: λ's from the a-block, then one
/// Moore-matrix solve per x-block.
pub fn moore_saturate_witness(params: &MooreParams, v: &[Elt]) -> Result<Vec<Vec<Elt>>> {
    let u = moore_system(params)?;
    let f = &params.field;
    let (rho, t, k) = (params.rho, params.t, params.k());
    if v.len() != k {
        return Err(Error::InvalidParams("vector has wrong length".into()));
    }
    if u.contains(v) {
        let mut out = vec![v.to_vec()];
        out.resize(rho, vec![0; k]);
        return Ok(out);
    }
    let abl = &v[(t - 1) * rho..];
    // Greedy F_q-independent subset of the A's, in coordinate order.
    let mut indep: Vec<usize> = Vec::new();
    let mut lambdas: Vec<Elt> = Vec::new();
    for (c, &ac) in abl.iter().enumerate() {
        let mut trial = lambdas.clone();
        trial.push(ac);
        if fq_span_dim(f, &trial) == trial.len() {
            indep.push(c);
            lambdas = trial;
        }
    }
    let s = indep.len();
    // a-matrix: row h < s has 1 at indep[h] and α_c^{(h)} at dependent c.
    let mut amat = vec![vec![0 as Elt; rho]; rho];
    for (h, &c) in indep.iter().enumerate() {
        amat[h][c] = 1;
    }
    for c in 0..rho {
        if indep.contains(&c) {
            continue;
        }
        let alpha = fq_coords(f, &lambdas, abl[c])
            .ok_or_else(|| Error::InternalInconsistency("A not in span of pivots".into()))?;
        for h in 0..s {
            amat[h][c] = alpha[h];
        }
    }
    // Extend by ascending encodings.
    for z in 1..f.order() as Elt {
        if lambdas.len() == rho {
            break;
        }
        let mut trial = lambdas.clone();
        trial.push(z);
        if fq_span_dim(f, &trial) == trial.len() {
            lambdas = trial;
        }
    }
    if lambdas.len() < rho {
        return Err(Error::InternalInconsistency("could not extend lambdas".into()));
    }
    let n = f.degree();
    let mut us = vec![vec![0 as Elt; k]; rho];
    for (i, row) in amat.iter().enumerate() {
        us[i][(t - 1) * rho..].copy_from_slice(row);
    }
    for b in 0..t - 1 {
        let sft = params.shift(b) as i64;
        // Σ_i λ_i (x^{(i)})^{q^{s l}} = Y_{l+1}, solved over F_p.
        let mut images = Vec::with_capacity(rho * n as usize);
        for i in 0..rho {
            for d in 0..n {
                let x = f.monomial(d);
                images.push(
                    (0..rho)
                        .map(|l| f.mul(lambdas[i], f.frob(x, sft * l as i64)))
                        .collect::<Vec<Elt>>(),
                );
            }
        }
        let target = &v[b * rho..(b + 1) * rho];
        let c = fp_solve(f, &images, target)
            .ok_or_else(|| Error::InternalInconsistency("Moore system not solvable".into()))?;
        for i in 0..rho {
            let x = (0..n).fold(0, |acc, d| {
                f.add(acc, f.mul(c[i * n as usize + d as usize] as Elt, f.monomial(d)))
            });
            for l in 0..rho {
                us[i][b * rho + l] = f.frob(x, sft * l as i64);
            }
        }
    }
    // Independent check: each u_i in U and v in their span.
    for ui in &us {
        if !u.contains(ui) {
            return Err(Error::InternalInconsistency("witness vector outside U".into()));
        }
    }
    let r0 = Mat::from_rows(k, &us).rank(f);
    let mut with_v = us.clone();
    with_v.push(v.to_vec());
    if Mat::from_rows(k, &with_v).rank(f) != r0 {
        return Err(Error::InternalInconsistency("v outside the witness span".into()));
    }
    Ok(us)
}

/// {(x_1, x_1^q, …, x_1^{q^h}, …, x_t, …, x_t^{q^h})} in V((h+1)t, q^m).
pub fn hscattered_moore(field: &FieldSpec, h: usize, t: usize) -> Result<System> {
    if h == 0 || t == 0 || field.m() as usize <= h {
        return Err(Error::InvalidParams(format!(
            "need h ≥ 1, t ≥ 1 and m > h (h={h}, t={t}, m={})",
            field.m()
        )));
    }
    let k = (h + 1) * t;
    let mut gens = Vec::new();
    for b in 0..t {
        gens.extend(moore_block(field, k, b * (h + 1), h + 1, 1));
    }
    System::new(field, k, &gens)
}

/// ⌊m(k-1)/(h+1)⌋ + 1
pub fn thin_target(m: usize, k: usize, h: usize) -> usize {
    m * (k - 1) / (h + 1) + 1
}

/// Keeps the first ⌊m(k-1)/(h+1)⌋+1 canonical generators of an h-scattered W.
pub fn thin_to_saturating(w: &System, h: usize) -> Result<System> {
    let target = thin_target(w.field().m() as usize, w.k(), h);
    if w.rank() < target {
        return Err(Error::RankTooSmall {
            rank: w.rank() as u32,
            needed: target as u32,
        });
    }
    System::new(w.field(), w.k(), &w.generators()[..target])
}

/// The four families of rank-4 systems in V(3, q^4).
pub fn case_system(field: &FieldSpec, case: u8, alpha: Elt, beta: Elt) -> Result<System> {
    if field.m() != 4 {
        return Err(Error::InvalidCaseParams(format!("m={} but need m=4", field.m())));
    }
    if !field.contains(alpha) || !field.contains(beta) {
        return Err(Error::FieldMismatch);
    }
    let f = field;
    let need = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidCaseParams(format!("case {case}: {what}")))
        }
    };
    let fr = |x: Elt, i: i64| f.frob(x, i);
    let map: Box<dyn Fn(Elt) -> [Elt; 3]> = match case {
        1 => Box::new(move |x| [x, fr(x, 1), fr(x, 2)]),
        2 => {
            need(alpha != 0, "alpha must be nonzero")?;
            Box::new(move |x| [x, f.add(fr(x, 1), f.mul(alpha, fr(x, 2))), fr(x, 3)])
        }
        3 => {
            need(alpha != 0, "alpha must be nonzero")?;
            Box::new(move |x| [x, f.add(fr(x, 1), f.mul(alpha, fr(x, 3))), fr(x, 2)])
        }
        4 => {
            need(alpha != 0 && beta != 0, "alpha and beta must be nonzero")?;
            Box::new(move |x| {
                [
                    x,
                    f.add(fr(x, 1), f.mul(alpha, fr(x, 3))),
                    f.add(fr(x, 2), f.mul(beta, fr(x, 3))),
                ]
            })
        }
        _ => return Err(Error::InvalidCaseParams(format!("unknown case {case}"))),
    };
    let gens: Vec<Vec<Elt>> = fqm_basis(f).into_iter().map(|x| map(x).to_vec()).collect();
    System::new(f, 3, &gens)
}

/// Normalized parameters of the fourth family: α^{q+1} = 1 and
/// β^{(q^2+1)(q-1)} = 1, in ascending exponent order of the generator.
pub fn case4_params(field: &FieldSpec) -> Result<Vec<(Elt, Elt)>> {
    if field.m() != 4 {
        return Err(Error::InvalidCaseParams(format!("m={} but need m=4", field.m())));
    }
    let q = field.q();
    let big = field.order() - 1;
    let na = q + 1;
    let nb = (q * q + 1) * (q - 1);
    let mut out = Vec::with_capacity((na * nb) as usize);
    for i in 0..na {
        let a = field.exp(i * (big / na));
        for j in 0..nb {
            out.push((a, field.exp(j * (big / nb))));
        }
    }
    Ok(out)
}

/// Rank-5 system in V(3, q^4): the scattered {(x, x^q, 0)} on the line
/// X_2 = 0 plus the point (0:0:1).
pub fn rank5_example(field: &FieldSpec) -> Result<System> {
    if field.m() != 4 {
        return Err(Error::InvalidParams(format!("m={} but need m=4", field.m())));
    }
    let line = System::new(field, 2, &moore_block(field, 2, 0, 2, 1))?;
    if !is_scattered(&line)? {
        return Err(Error::InternalInconsistency(
            "rank-4 subspace of the line is not scattered".into(),
        ));
    }
    let mut gens: Vec<Vec<Elt>> = line
        .generators()
        .iter()
        .map(|g| vec![g[0], g[1], 0])
        .collect();
    gens.push(vec![0, 0, 1]);
    System::new(field, 3, &gens)
}
