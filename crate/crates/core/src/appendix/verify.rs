//! Mechanical checks of the appendix: the identities of the derivation, the
//! Γ and Δ sets, and the non-saturation claims they are meant to certify.

use std::collections::HashMap;
use std::fmt;

use super::registry::f0_printed;
use super::transcribed::{delta1_filter, r0};
use super::ypoly::{Conj, YPoly};
use super::{check_even_m4, pw, AppendixContext, Derivation, LinPoly};
use crate::config::{check_budget, config};
use crate::constructions::case_system;
use crate::error::{Error, Result};
use crate::geometry::{Bitmap, Point};
use crate::gf::{Elt, FieldSpec};
use crate::linset::linear_set;
use crate::par;
use crate::rankcov::point_unsaturated_by;

/// Outcome of the identity checks for one C.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IdentityReport {
    pub c: Elt,
    /// (x, y) pairs evaluated for each of H₁ and H₂.
    pub pairs: u64,
    /// Q = U + yV with no y² term.
    pub q_split: bool,
    /// The substitution identity behind M; `None` when M is undefined.
    pub eq_l: Option<bool>,
    /// Derived f(C) = 0 (all cross coefficients of M vanish).
    pub f_vanishes: Option<bool>,
    /// M is the square of a20·y^q + a02·y^{q²} + a00·y^{q³}; checked only
    /// when f vanishes.
    pub m_square: Option<bool>,
    /// Dickson determinant of that map nonzero ⇔ map injective.
    pub g_dickson: Option<bool>,
    pub g: Option<Elt>,
    pub d: Elt,
}

fn violation(what: &str, c: Elt, x: Option<Elt>, y: Elt) -> Error {
    let at = match x {
        Some(x) => format!("C={c} x={x} y={y}"),
        None => format!("C={c} y={y}"),
    };
    Error::IdentityViolation(format!("{what} at {at}"))
}

/// Checks, in derived forms and over every (x, y) ∈ F_{q⁴}²:
/// (i) H₁ = K·(xy^q + x^q y)^{q²}·L₁, (ii) the same for H₂ and L₂,
/// (iii) α²C^{2q³}L₁ + (Cα+β)²α²L₂ = U + yV, (iv) the substitution identity
/// V²L₁(U/V) = α²(C²α²+β²)(C^{2q+2}α²+C^{2q}β²+1)·K·y^q·M and, when f(C) = 0,
/// M = (a00y^{q³} + a02y^{q²} + a20y^q)², (v) g ≠ 0 exactly when that map
/// has trivial kernel. H₁ and H₂ are evaluated from the printed F₀, so
/// (i)/(ii) compare two independent routes.
pub fn verify_identities(ctx: &AppendixContext, c: Elt) -> Result<IdentityReport> {
    let f = ctx.field();
    let big = f.order();
    check_budget("appendix (x,y) pairs", big as u128 * big as u128, config().enum_cap)?;
    let dv = ctx.derive(c)?;
    let xs: Vec<[Elt; 4]> = (0..big as Elt)
        .map(|x| [x, f.frob(x, 1), f.frob(x, 2), f.frob(x, 3)])
        .collect();

    // First x at which (i) or (ii) fails for this y.
    let bad_x = |y: Elt| -> Option<Elt> {
        let cj = Conj::new(f, y, 8);
        let ev = |p: &YPoly| p.eval_conj(f, &cj);
        let k = ev(&dv.k);
        let m: Vec<Elt> = dv.multipliers.iter().map(ev).collect();
        let (u, v, w) = (ev(&dv.u), ev(&dv.v), ev(&dv.w));
        let kl1 = f.mul(k, ev(&dv.l1));
        let kl2 = f.mul(k, ev(&dv.l2));
        let (y2, y3) = (cj.y(2), cj.y(3));
        xs.iter().map(|xq| xq[0]).zip(&xs).find_map(|(x, xq)| {
            let f0 = f0_printed(ctx, c, x, y);
            let gi = |i: usize| f.add(f.mul(k, f.frob(f0, i as i64)), f.mul(m[i - 1], f0));
            let (g1, g2, g3) = (gi(1), gi(2), gi(3));
            let h1 = f.add(f.mul(u, g1), f.mul(v, g2));
            let h2 = f.add(f.mul(w, g1), f.mul(v, g3));
            // (xy^q + x^q y)^{q²} = x^{q²}y^{q³} + x^{q³}y^{q²}
            let dd = f.add(f.mul(xq[2], y3), f.mul(xq[3], y2));
            (h1 != f.mul(kl1, dd) || h2 != f.mul(kl2, dd)).then_some(x)
        })
    };
    if let Some(yi) = par::find_first(big as usize, |yi| bad_x(yi as Elt).is_some()) {
        let y = yi as Elt;
        return Err(violation("H = K·(xy^q+x^q y)^{q²}·L", c, bad_x(y), y));
    }

    // (iii)
    let al2 = f.mul(ctx.alpha(), ctx.alpha());
    let cab = f.add(f.mul(c, ctx.alpha()), ctx.beta());
    let k1 = f.mul(al2, pw(f, c, [0, 0, 0, 2]));
    let k2 = f.mul(al2, f.mul(cab, cab));
    let bad = par::find_first(big as usize, |yi| {
        let y = yi as Elt;
        let lhs = f.add(f.mul(k1, dv.l1.eval(f, y)), f.mul(k2, dv.l2.eval(f, y)));
        lhs != f.add(dv.big_u.eval(f, y), f.mul(y, dv.big_v.eval(f, y)))
    });
    if let Some(y) = bad {
        return Err(violation("Q = U + yV", c, None, y as Elt));
    }

    // (iv), (v)
    let mut rep = IdentityReport {
        c,
        pairs: big * big,
        q_split: dv.q_excess.is_zero(),
        d: dv.d,
        ..Default::default()
    };
    if let (Some(mp), Some(a)) = (&dv.m, dv.a) {
        let bad = par::find_first(big as usize, |yi| {
            let y = yi as Elt;
            eq_l_lhs(ctx, &dv, y) != f.mul(dv.prefactor, f.mul(dv.k.eval(f, y), f.mul(f.frob(y, 1), mp.eval(f, y))))
        });
        if let Some(y) = bad {
            return Err(violation("V²L₁(U/V) = pref·K·y^q·M", c, None, y as Elt));
        }
        rep.eq_l = Some(true);
        let fv = a.cross_vanish();
        rep.f_vanishes = Some(fv);
        let lin = a.square_root_map(ctx);
        if fv {
            let bad = par::find_first(big as usize, |yi| {
                let s = lin.eval(yi as Elt);
                mp.eval(f, yi as Elt) != f.mul(s, s)
            });
            if let Some(y) = bad {
                return Err(violation("M = (a00y^{q³}+a02y^{q²}+a20y^q)²", c, None, y as Elt));
            }
            rep.m_square = Some(true);
        }
        let g = lin.dickson_det();
        let injective = (1..big as Elt).all(|y| lin.eval(y) != 0);
        if (g != 0) != injective {
            return Err(Error::IdentityViolation(format!(
                "C={c}: Dickson determinant {g} disagrees with injectivity {injective}"
            )));
        }
        rep.g_dickson = Some(true);
        rep.g = Some(g);
    }
    Ok(rep)
}

/// V(y)²·L₁ with y replaced by U(y)/V(y), evaluated term by term.
fn eq_l_lhs(ctx: &AppendixContext, dv: &Derivation, y: Elt) -> Elt {
    let f = ctx.field();
    let cj = Conj::new(f, y, 8);
    let u = f.neg(dv.big_u.eval_conj(f, &cj));
    let v = dv.big_v.eval_conj(f, &cj);
    let mut acc = 0;
    for &(mon, c) in dv.l1.terms() {
        let e0 = mon[0] as u64;
        let rest = YPoly::monomial([0, mon[1], mon[2], mon[3]], c).eval_conj(f, &cj);
        let t = f.mul(f.mul(f.pow_u(u, e0), f.pow_u(v, 2 - e0)), rest);
        acc = f.add(acc, t);
    }
    acc
}

/// Printed-versus-derived comparison for one name at one C.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub name: String,
    /// "agree", "mismatch" or "undefined".
    pub status: &'static str,
    pub detail: Option<String>,
}

impl fmt::Display for Finding {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "finding {} {}", self.name, self.status)?;
        if let Some(d) = &self.detail {
            write!(fm, " counterexample {d}")?;
        }
        Ok(())
    }
}

fn cmp_poly(name: &str, c: Elt, printed: &YPoly, derived: &YPoly) -> Finding {
    match printed.first_difference(derived) {
        None => Finding { name: name.into(), status: "agree", detail: None },
        Some((m, a, b)) => Finding {
            name: name.into(),
            status: "mismatch",
            detail: Some(format!(
                "C={c} monomial={}.{}.{}.{} printed={a} derived={b}",
                m[0], m[1], m[2], m[3]
            )),
        },
    }
}

fn cmp_scalar(name: &str, c: Elt, printed: Elt, derived: Option<Elt>) -> Finding {
    match derived {
        None => Finding { name: name.into(), status: "undefined", detail: Some(format!("C={c}")) },
        Some(d) if d == printed => Finding { name: name.into(), status: "agree", detail: None },
        Some(d) => Finding {
            name: name.into(),
            status: "mismatch",
            detail: Some(format!("C={c} printed={printed} derived={d}")),
        },
    }
}

/// Compares every printed polynomial with its derived counterpart at C.
/// L2 is compared both with the exact quotient and with α² times it (the
/// normalization the P(y) combination needs).
pub fn transcription_findings(ctx: &AppendixContext, c: Elt) -> Result<Vec<Finding>> {
    let f = ctx.field();
    let dv = ctx.derive(c)?;
    let t = ctx.transcribed(c);
    let a2 = f.mul(ctx.alpha(), ctx.alpha());
    let tm = t.multipliers();
    let mut out = vec![
        cmp_poly("G1-multiplier", c, &tm[0], &dv.multipliers[0]),
        cmp_poly("G2-multiplier", c, &tm[1], &dv.multipliers[1]),
        cmp_poly("G3-multiplier", c, &tm[2], &dv.multipliers[2]),
        cmp_poly("u", c, &t.u(), &dv.u),
        cmp_poly("v", c, &t.v(), &dv.v),
        cmp_poly("w", c, &t.w(), &dv.w),
        cmp_poly("L1", c, &t.l1(), &dv.l1),
        cmp_poly("L2", c, &t.l2(), &dv.l2),
        cmp_poly("L2-scaled", c, &t.l2(), &dv.l2.scale(f, a2)),
        cmp_poly("U", c, &t.big_u(), &dv.big_u),
        cmp_poly("V", c, &t.big_v(), &dv.big_v),
        cmp_scalar("d", c, t.d_poly(), Some(dv.d)),
        cmp_scalar("f", c, t.f_poly(), dv.f_value(ctx)),
        cmp_scalar("g", c, t.g_poly(), dv.g_value(ctx)),
    ];
    let ta = t.a_coeffs();
    for (name, _) in super::ACoeffs::MONOMIALS {
        out.push(cmp_scalar(name, c, ta.get(name).unwrap(), dv.a.map(|a| a.get(name).unwrap())));
    }
    Ok(out)
}

/// (C²α² + β²)(C^{2q+2}α² + C^{2q}β² + 1)
fn gamma_filter(ctx: &AppendixContext, c: Elt) -> Elt {
    let f = ctx.field();
    let a2 = f.mul(ctx.alpha(), ctx.alpha());
    let b2 = f.mul(ctx.beta(), ctx.beta());
    let c2 = f.mul(c, c);
    let c2q = f.frob(c2, 1);
    let e = f.add(f.mul(c2, a2), b2);
    let s = f.add(f.add(f.mul(f.mul(c2q, c2), a2), f.mul(c2q, b2)), 1);
    f.mul(e, s)
}

fn dickson_d(ctx: &AppendixContext, c: Elt) -> Elt {
    let f = ctx.field();
    let c2 = f.mul(c, c);
    let e = f.add(f.mul(c2, f.mul(ctx.alpha(), ctx.alpha())), f.mul(ctx.beta(), ctx.beta()));
    LinPoly::new(f, &[0, c2, 1, e]).dickson_det()
}

/// Γ_{α,β} over C ∈ F_{q⁴} with every polynomial in derived form.
pub fn gamma_set(ctx: &AppendixContext) -> Result<Vec<Elt>> {
    let f = ctx.field();
    check_budget("Γ enumeration", f.order() as u128, config().enum_cap)?;
    let hits = par::map(f.order() as usize, |ci| -> Result<bool> {
        let c = ci as Elt;
        if gamma_filter(ctx, c) == 0 || dickson_d(ctx, c) == 0 {
            return Ok(false);
        }
        let dv = ctx.derive(c)?;
        Ok(dv.f_vanishes() == Some(true) && dv.g_value(ctx).is_some_and(|g| g != 0))
    });
    let mut out = Vec::new();
    for (c, h) in hits.into_iter().enumerate() {
        if h? {
            out.push(c as Elt);
        }
    }
    Ok(out)
}

/// Readings of Γ that use printed polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GammaVariant {
    /// Printed f; d and g as Dickson determinants (g from the printed a's).
    PrintedF,
    /// Printed f and g; d as Dickson determinant.
    PrintedFG,
    /// Printed f, d and g.
    Printed,
}

impl GammaVariant {
    pub const ALL: [GammaVariant; 3] = [GammaVariant::PrintedF, GammaVariant::PrintedFG, GammaVariant::Printed];

    pub fn label(&self) -> &'static str {
        match self {
            GammaVariant::PrintedF => "printed-f",
            GammaVariant::PrintedFG => "printed-f-g",
            GammaVariant::Printed => "printed-f-d-g",
        }
    }
}

pub fn gamma_set_transcribed(ctx: &AppendixContext, variant: GammaVariant) -> Result<Vec<Elt>> {
    let f = ctx.field();
    check_budget("Γ enumeration", f.order() as u128, config().enum_cap)?;
    let hits = par::map(f.order() as usize, |ci| {
        let c = ci as Elt;
        let t = ctx.transcribed(c);
        if gamma_filter(ctx, c) == 0 || t.f_poly() != 0 {
            return false;
        }
        let d = match variant {
            GammaVariant::Printed => t.d_poly(),
            _ => dickson_d(ctx, c),
        };
        let g = match variant {
            GammaVariant::PrintedF => t.a_coeffs().square_root_map(ctx).dickson_det(),
            _ => t.g_poly(),
        };
        d != 0 && g != 0
    });
    Ok(hits.iter().enumerate().filter(|(_, &h)| h).map(|(c, _)| c as Elt).collect())
}

#[derive(Clone, Debug, Default)]
pub struct GammaReport {
    pub alpha: Elt,
    pub beta: Elt,
    pub members: Vec<Elt>,
    /// Members whose point (0:1:C) is 1-saturated by L_{U_{α,β}}.
    pub failures: Vec<Elt>,
    /// C with derived f(C) = 0, the filter and d(C) nonzero (g ignored).
    pub f_locus: usize,
    /// Of those, how many give an unsaturated (0:1:C).
    pub f_locus_unsaturated: usize,
    /// Per printed reading: (members, members with a saturated point).
    pub printed: Vec<(GammaVariant, usize, usize)>,
}

impl GammaReport {
    pub fn vacuous(&self) -> bool {
        self.members.is_empty()
    }

    pub fn check(&self) -> Result<()> {
        if self.failures.is_empty() {
            Ok(())
        } else {
            Err(Error::AssertionFailed(format!(
                "alpha={} beta={}: Γ members with a 1-saturated point: {:?}",
                self.alpha, self.beta, self.failures
            )))
        }
    }
}

/// Tests the claim behind Γ: for C ∈ Γ the point (0:1:C) is not 1-saturated
/// by L_{U_{α,β}}. The polynomials come from the determinant for (0:1:C²)
/// against U_{α²,β²}, which is the Frobenius image of the same
/// configuration; both are scanned and must agree. With `diagnostics`, the
/// whole f = 0 locus and the printed readings of Γ are scanned as well.
pub fn verify_gamma_unsaturated(ctx: &AppendixContext, diagnostics: bool) -> Result<GammaReport> {
    let f = ctx.field();
    let (al, be) = (ctx.alpha(), ctx.beta());
    let sq = |z: Elt| f.mul(z, z);
    let ls1 = linear_set(&case_system(f, 4, al, be)?)?;
    let ls2 = linear_set(&case_system(f, 4, sq(al), sq(be))?)?;
    let unsat = |c: Elt| -> Result<bool> {
        let a = point_unsaturated_by(&ls1, &Point::new(f, &[0, 1, c]).unwrap());
        let b = point_unsaturated_by(&ls2, &Point::new(f, &[0, 1, sq(c)]).unwrap());
        if a != b {
            return Err(Error::InternalInconsistency(format!(
                "Frobenius-equivalent points disagree at C={c}"
            )));
        }
        Ok(a)
    };
    let members = gamma_set(ctx)?;
    let mut rep = GammaReport { alpha: al, beta: be, ..Default::default() };
    for &c in &members {
        if !unsat(c)? {
            rep.failures.push(c);
        }
    }
    rep.members = members;
    if diagnostics {
        for c in 0..f.order() as Elt {
            if gamma_filter(ctx, c) == 0 || dickson_d(ctx, c) == 0 {
                continue;
            }
            if ctx.derive(c)?.f_vanishes() == Some(true) {
                rep.f_locus += 1;
                rep.f_locus_unsaturated += unsat(c)? as usize;
            }
        }
        for v in GammaVariant::ALL {
            let m = gamma_set_transcribed(ctx, v)?;
            let mut bad = 0;
            for &c in &m {
                bad += !unsat(c)? as usize;
            }
            rep.printed.push((v, m.len(), bad));
        }
    }
    Ok(rep)
}

/// Result of scanning a rank-m projection {(A(x) : B(x))} ⊂ PG(1, q^m).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProjectionScan {
    pub scattered: bool,
    /// Some nonzero x has A(x) = B(x) = 0.
    pub kernel: bool,
    /// F_q-classes of x scanned.
    pub classes: u64,
}

/// Image-dedup scan: one x per F_q-class (x = g^i, i < (q^m−1)/(q−1)),
/// projective image indexed as B/A or ∞, collisions detected on a shared
/// bitmap. Linear in the field size, never pairwise.
pub fn projection_scan<F>(field: &FieldSpec, map: F) -> Result<ProjectionScan>
where
    F: Fn(Elt) -> (Elt, Elt) + Sync + Send,
{
    let big = field.order();
    check_budget("projection scan", big as u128, config().point_cap)?;
    let classes = (big - 1) / (field.q() - 1);
    let seen = Bitmap::new(big + 1);
    let chunk: u64 = 1 << 12;
    let nchunks = classes.div_ceil(chunk) as usize;
    let g = field.generator();
    let kernel = std::sync::atomic::AtomicBool::new(false);
    let hit = par::find_first(nchunks, |ci| {
        let start = ci as u64 * chunk;
        let end = (start + chunk).min(classes);
        let mut x = field.pow_u(g, start);
        for _ in start..end {
            let (a, b) = map(x);
            if a == 0 && b == 0 {
                kernel.store(true, std::sync::atomic::Ordering::Relaxed);
                return true;
            }
            let idx = match field.inv(a) {
                None => big,
                Some(ai) => field.mul(b, ai) as u64,
            };
            if seen.test_and_set(idx) {
                return true;
            }
            x = field.mul(x, g);
        }
        false
    });
    Ok(ProjectionScan {
        scattered: hit.is_none(),
        kernel: kernel.load(std::sync::atomic::Ordering::Relaxed),
        classes,
    })
}

fn delta0_arg(f: &FieldSpec, beta: Elt, z: Elt) -> Option<Elt> {
    let b = |k| f.pow_u(beta, k);
    let num = f.mul(
        f.add(f.add(f.mul(z, b(3)), f.mul(z, b(2))), f.add(z, beta)),
        f.add(z, beta),
    );
    let den = f.mul(f.mul(z, z), b(4));
    f.inv(den).map(|di| f.mul(num, di))
}

fn check_delta_beta(f: &FieldSpec, beta: Elt, which: u8) -> Result<()> {
    check_even_m4(f)?;
    let q = f.q();
    match which {
        0 if beta != 0 && f.in_fq(beta) => Ok(()),
        0 => Err(Error::InvalidBeta(format!("{beta} is not in F_q^*"))),
        1 if !f.in_fq(beta) && f.pow_u(beta, (q * q + 1) * (q - 1)) == 1 => Ok(()),
        1 => Err(Error::InvalidBeta(format!(
            "{beta} must lie outside F_q with beta^((q^2+1)(q-1)) = 1"
        ))),
        _ => Err(Error::InvalidParams(format!("which={which} but need 0 or 1"))),
    }
}

fn in_delta(f: &FieldSpec, beta: Elt, which: u8, z: Elt) -> bool {
    if which == 0 {
        match delta0_arg(f, beta, z) {
            None => false,
            Some(t) => f.fq_abs_trace(t) == 0 && r0(f, beta, z) != 0,
        }
    } else {
        delta1_filter(f, beta, z) != 0
    }
}

/// Δ₀ (β ∈ F_q^*) or Δ₁ (β ∉ F_q, normalized), by enumeration of F_q.
pub fn delta_sets(field: &FieldSpec, beta: Elt, which: u8) -> Result<Vec<Elt>> {
    check_delta_beta(field, beta, which)?;
    Ok(field
        .mid_elements()
        .iter()
        .copied()
        .filter(|&z| in_delta(field, beta, which, z))
        .collect())
}

/// The trace condition of Δ₀ read through x² + x = c instead of the trace.
pub fn delta0_artin_schreier(field: &FieldSpec, beta: Elt, z: Elt) -> Result<Option<bool>> {
    match delta0_arg(field, beta, z) {
        None => Ok(None),
        Some(t) => Ok(Some(field.artin_schreier_solve(t)?.is_some())),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeltaReport {
    pub beta: Elt,
    pub z: Elt,
    pub which: u8,
    pub scan: ProjectionScan,
}

impl DeltaReport {
    pub fn scattered(&self) -> bool {
        self.scan.scattered
    }

    pub fn check(&self) -> Result<()> {
        if self.scan.scattered {
            Ok(())
        } else {
            Err(Error::AssertionFailed(format!(
                "beta={} z={}: projection from (1:z:beta) is not scattered",
                self.beta, self.z
            )))
        }
    }
}

/// Scans {(x^q + x^{q³} + zx : x^{q²} + βx^{q³} + βx)} ⊂ PG(1, q⁴); scattered
/// means (1:z:β) is not 1-saturated by L_{U_{1,β}}.
pub fn verify_delta_unsaturated(field: &FieldSpec, beta: Elt, which: u8, z: Elt) -> Result<DeltaReport> {
    check_delta_beta(field, beta, which)?;
    if !field.in_fq(z) || !in_delta(field, beta, which, z) {
        return Err(Error::InvalidParams(format!("z={z} is not in Delta_{which}")));
    }
    Ok(DeltaReport { beta, z, which, scan: delta_projection(field, beta, z)? })
}

/// The projection scan behind [`verify_delta_unsaturated`], without the
/// membership precondition.
pub fn delta_projection(f: &FieldSpec, beta: Elt, z: Elt) -> Result<ProjectionScan> {
    projection_scan(f, |x| {
        let (x1, x2, x3) = (f.frob(x, 1), f.frob(x, 2), f.frob(x, 3));
        let a = f.add(f.add(x1, x3), f.mul(z, x));
        let b = f.add(x2, f.mul(beta, f.add(x3, x)));
        (a, b)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Case3Route {
    /// α = 1: the projection from (1:0:0) has a unique weight-2 point, and
    /// it comes from a single point of L_U.
    UniqueHeavyPoint,
    /// α ≠ 1: the projection from (1:0:ω) is scattered.
    Scattered,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case3Report {
    pub alpha: Elt,
    pub omega: Elt,
    pub route: Case3Route,
    pub projection_ok: bool,
    /// N((ω+α)/(ωα+1)) ≠ 1; only for α ≠ 1.
    pub norm_ok: Option<bool>,
    /// Direct secant scan of (1:0:ω), run for q ≤ 4.
    pub secant_ok: Option<bool>,
}

impl Case3Report {
    pub fn ok(&self) -> bool {
        self.projection_ok && self.norm_ok.unwrap_or(true) && self.secant_ok.unwrap_or(true)
    }
}

/// N_{q⁴/q}((ω+α)/(ωα+1)) ≠ 1, with a vanishing denominator counted as
/// satisfied (the projection is then {(x : (ω+α)x^q)}).
pub fn case3_norm_condition(field: &FieldSpec, alpha: Elt, omega: Elt) -> bool {
    let f = field;
    let den = f.add(f.mul(omega, alpha), 1);
    match f.inv(den) {
        None => true,
        Some(di) => f.norm(f.mul(f.add(omega, alpha), di)) != 1,
    }
}

fn case3_projection(f: &FieldSpec, alpha: Elt, omega: Elt) -> Result<ProjectionScan> {
    projection_scan(f, |x| {
        let a = f.add(f.frob(x, 1), f.mul(alpha, f.frob(x, 3)));
        let b = f.add(f.frob(x, 2), f.mul(omega, x));
        (a, b)
    })
}

/// Elements of F_{q²} ⊂ F_{q⁴}, ascending.
fn fq2_elements(f: &FieldSpec) -> Vec<Elt> {
    let q2 = f.q() * f.q();
    let step = (f.order() - 1) / (q2 - 1);
    let g = f.pow_u(f.generator(), step);
    let mut v = vec![0];
    let mut z = 1;
    for _ in 0..q2 - 1 {
        v.push(z);
        z = f.mul(z, g);
    }
    v.sort_unstable();
    v
}

/// Finds a point (1:0:ω) that is not 1-saturated by the third family with
/// parameter α ∈ F_{q²}, α^{q+1} = 1. For α ≠ 1, ω^q + ω + α ≠ 0 holds on
/// all of F_{q²}, so the scan also requires the norm condition, which
/// singles out ω ∉ F_q.
pub fn case3_witness(field: &FieldSpec, alpha: Elt) -> Result<(Elt, Case3Report)> {
    let f = field;
    if f.m() != 4 {
        return Err(Error::InvalidParams(format!("m={} but need m=4", f.m())));
    }
    let q = f.q();
    if alpha == 0 || f.frob(alpha, 2) != alpha || f.pow_u(alpha, q + 1) != 1 {
        return Err(Error::InvalidParams(format!("alpha={alpha} needs alpha in F_q2 with alpha^(q+1)=1")));
    }
    let secant = |omega: Elt| -> Result<Option<bool>> {
        if q > 4 {
            return Ok(None);
        }
        let ls = linear_set(&case_system(f, 3, alpha, 0)?)?;
        Ok(Some(point_unsaturated_by(&ls, &Point::new(f, &[1, 0, omega]).unwrap())))
    };
    if alpha == 1 {
        let ok = unique_heavy_point(f)?;
        let rep = Case3Report {
            alpha,
            omega: 0,
            route: Case3Route::UniqueHeavyPoint,
            projection_ok: ok,
            norm_ok: None,
            secant_ok: secant(0)?,
        };
        return Ok((0, rep));
    }
    let omega = fq2_elements(f)
        .into_iter()
        .find(|&w| f.add(f.add(f.frob(w, 1), w), alpha) != 0 && case3_norm_condition(f, alpha, w))
        .ok_or(Error::NoWitness)?;
    let scan = case3_projection(f, alpha, omega)?;
    let rep = Case3Report {
        alpha,
        omega,
        route: Case3Route::Scattered,
        projection_ok: scan.scattered,
        norm_ok: Some(case3_norm_condition(f, alpha, omega)),
        secant_ok: secant(omega)?,
    };
    Ok((omega, rep))
}

/// α = 1: weights of {(x^q + x^{q³} : x^{q²})}; exactly one point, (0:1),
/// has weight 2 and its preimage is the single point (1:0:1) of L_U.
fn unique_heavy_point(f: &FieldSpec) -> Result<bool> {
    let big = f.order();
    check_budget("projection weights", big as u128, config().enum_cap)?;
    let mut weights: HashMap<u64, u64> = HashMap::new();
    let mut heavy_sources: Vec<Vec<Elt>> = Vec::new();
    for x in 1..big as Elt {
        let a = f.add(f.frob(x, 1), f.frob(x, 3));
        let b = f.frob(x, 2);
        if a == 0 && b == 0 {
            return Ok(false);
        }
        let idx = match f.inv(a) {
            None => big,
            Some(ai) => f.mul(b, ai) as u64,
        };
        *weights.entry(idx).or_insert(0) += 1;
        if idx == big {
            heavy_sources.push(vec![x, a, b]);
        }
    }
    let q = f.q();
    let heavy: Vec<(&u64, &u64)> = weights.iter().filter(|(_, &n)| n > q - 1).collect();
    if heavy.len() != 1 || *heavy[0].0 != big || *heavy[0].1 != q * q - 1 {
        return Ok(false);
    }
    let mut pts: Vec<Point> = heavy_sources.iter().map(|v| Point::new(f, v).unwrap()).collect();
    pts.dedup();
    pts.sort();
    pts.dedup();
    Ok(pts.len() == 1 && pts[0].coords() == [1, 0, 1])
}
