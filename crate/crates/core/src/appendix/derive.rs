//! The derivation chain for a fixed C, carried out on conjugate-variable
//! polynomials: F₀ → G₁..G₃ → H₁, H₂ → L₁, L₂ → Q = U + yV → M.

use super::ypoly::{xlin_comb, xlin_frob, XLin, YPoly};
use super::{pw, sqrt2, AppendixContext, LinPoly};
use crate::error::{Error, Result};
use crate::gf::Elt;

/// Coefficients of M(y) = a00²y^{2q³} + a01²y^{q³+q²} + a10²y^{q³+q}
/// + a02²y^{2q²} + a11²y^{q²+q} + a20²y^{2q}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct ACoeffs {
    pub a00: Elt,
    pub a01: Elt,
    pub a02: Elt,
    pub a10: Elt,
    pub a11: Elt,
    pub a20: Elt,
}

impl ACoeffs {
    pub const MONOMIALS: [(&'static str, [u8; 4]); 6] = [
        ("a00", [0, 0, 0, 2]),
        ("a01", [0, 0, 1, 1]),
        ("a10", [0, 1, 0, 1]),
        ("a02", [0, 0, 2, 0]),
        ("a11", [0, 1, 1, 0]),
        ("a20", [0, 2, 0, 0]),
    ];

    pub fn get(&self, name: &str) -> Option<Elt> {
        Some(match name {
            "a00" => self.a00,
            "a01" => self.a01,
            "a02" => self.a02,
            "a10" => self.a10,
            "a11" => self.a11,
            "a20" => self.a20,
            _ => return None,
        })
    }

    fn set(&mut self, name: &str, v: Elt) {
        match name {
            "a00" => self.a00 = v,
            "a01" => self.a01 = v,
            "a02" => self.a02 = v,
            "a10" => self.a10 = v,
            "a11" => self.a11 = v,
            _ => self.a20 = v,
        }
    }

    pub fn cross_vanish(&self) -> bool {
        self.a01 == 0 && self.a10 == 0 && self.a11 == 0
    }

    /// The map y ↦ a20·y^q + a02·y^{q²} + a00·y^{q³}.
    pub fn square_root_map(&self, ctx: &AppendixContext) -> LinPoly {
        LinPoly::new(ctx.field(), &[0, self.a20, self.a02, self.a00])
    }
}

#[derive(Clone, Debug)]
pub struct Derivation {
    pub c: Elt,
    /// C²Y₁ + Y₂ + (C²α² + β²)Y₃, the x-coefficient of F₀.
    pub k: YPoly,
    pub f0: XLin,
    /// Multipliers of F₀ in G₁..G₃: the x-coefficient of F_i.
    pub multipliers: [YPoly; 3],
    pub g: [XLin; 3],
    pub u: YPoly,
    pub v: YPoly,
    pub w: YPoly,
    pub h1: XLin,
    pub h2: XLin,
    /// Exact quotients H_i / (K·(xy^q + x^q y)^{q²}).
    pub l1: YPoly,
    pub l2: YPoly,
    /// α²C^{2q³}L₁ + (Cα + β)²·α²L₂.
    pub q: YPoly,
    pub big_u: YPoly,
    pub big_v: YPoly,
    /// Terms of Q of degree ≥ 2 in Y₀ (zero when the split is valid).
    pub q_excess: YPoly,
    /// α²(C²α² + β²)(C^{2q+2}α² + C^{2q}β² + 1).
    pub prefactor: Elt,
    /// V²·L₁ with Y₀ replaced by U/V.
    pub w_poly: YPoly,
    /// W / (prefactor·K·Y₁); absent when the prefactor vanishes.
    pub m: Option<YPoly>,
    pub a: Option<ACoeffs>,
    /// Dickson determinant of K as a linearized polynomial in y.
    pub d: Elt,
}

impl Derivation {
    pub fn new(ctx: &AppendixContext, c: Elt) -> Result<Derivation> {
        let f = ctx.field();
        let (al, be) = (ctx.alpha(), ctx.beta());
        let a2 = f.mul(al, al);
        let b2 = f.mul(be, be);
        let c2 = f.mul(c, c);
        let e = f.add(f.mul(c2, a2), b2);

        let k = YPoly::var(1, c2).add(f, &YPoly::var(2, 1)).add(f, &YPoly::var(3, e));
        let f0: XLin = [k.clone(), YPoly::var(0, c2), YPoly::var(0, 1), YPoly::var(0, e)];
        let fi: Vec<XLin> = (1..4).map(|i| xlin_frob(f, &f0, i)).collect();
        let multipliers: [YPoly; 3] = std::array::from_fn(|i| fi[i][0].clone());
        let g: [XLin; 3] = std::array::from_fn(|i| xlin_comb(f, &k, &fi[i], &multipliers[i], &f0));

        let u = g[1][1].scale(f, a2);
        let v = g[0][1].scale(f, a2);
        let w = g[2][1].scale(f, a2);
        let h1 = xlin_comb(f, &u, &g[0], &v, &g[1]);
        let h2 = xlin_comb(f, &w, &g[0], &v, &g[2]);

        let den = k.mul(f, &YPoly::var(3, 1));
        let l1 = h1[2].div_exact(f, &den)?;
        let l2 = h2[2].div_exact(f, &den)?;

        let ca_b = f.add(f.mul(c, al), be);
        let q = l1
            .scale(f, f.mul(a2, pw(f, c2, [0, 0, 0, 1])))
            .add(f, &l2.scale(f, f.mul(a2, f.mul(ca_b, ca_b))));
        let mut parts = q.split_y0();
        parts.resize(2, YPoly::zero());
        let big_u = parts[0].clone();
        let big_v = parts[1].clone();
        let q_excess = YPoly::from_terms(
            f,
            q.terms().iter().filter(|(m, _)| m[0] >= 2).copied(),
        );

        let s2 = f.add(
            f.add(f.mul(pw(f, c2, [1, 1, 0, 0]), a2), f.mul(pw(f, c2, [0, 1, 0, 0]), b2)),
            1,
        );
        let prefactor = f.mul(a2, f.mul(e, s2));

        let w_poly = substitute_y0(ctx, &l1, &big_u, &big_v)?;
        let (m, a) = if prefactor == 0 {
            (None, None)
        } else {
            let den = k.mul(f, &YPoly::var(1, prefactor));
            let m = w_poly.div_exact(f, &den)?;
            let mut a = ACoeffs::default();
            for (name, mon) in ACoeffs::MONOMIALS {
                a.set(name, sqrt2(f, m.coeff(&mon)));
            }
            let known = m
                .terms()
                .iter()
                .all(|(mon, _)| ACoeffs::MONOMIALS.iter().any(|(_, x)| x == mon));
            if !known {
                return Err(Error::InternalInconsistency(
                    "M has a monomial outside its six-term support".into(),
                ));
            }
            (Some(m), Some(a))
        };
        let d = LinPoly::new(f, &[0, c2, 1, e]).dickson_det();

        Ok(Derivation {
            c,
            k,
            f0,
            multipliers,
            g,
            u,
            v,
            w,
            h1,
            h2,
            l1,
            l2,
            q,
            big_u,
            big_v,
            q_excess,
            prefactor,
            w_poly,
            m,
            a,
            d,
        })
    }

    /// The cross coefficients a01, a10, a11 all vanish: the derived reading
    /// of f(C) = 0.
    pub fn f_vanishes(&self) -> Option<bool> {
        self.a.map(|a| a.cross_vanish())
    }

    /// f(C) recovered from a cross coefficient and its known cofactor:
    /// a10 = α·X₂·f, a01 = (C^q + αβ^q)·X₁·f, a11 = α·C^{q³}·X₃·f.
    pub fn f_value(&self, ctx: &AppendixContext) -> Option<Elt> {
        let a = self.a?;
        let f = ctx.field();
        let t = ctx.transcribed(self.c);
        let [x1, x2, x3] = t.x_factors();
        let (al, be, c) = (ctx.alpha(), ctx.beta(), self.c);
        let routes = [
            (a.a10, f.mul(al, x2)),
            (a.a01, f.mul(f.add(f.frob(c, 1), f.mul(al, f.frob(be, 1))), x1)),
            (a.a11, f.mul(f.mul(al, f.frob(c, 3)), x3)),
        ];
        routes
            .iter()
            .find(|(_, k)| *k != 0)
            .map(|&(v, k)| f.mul(v, f.inv(k).unwrap()))
            .or(if a.cross_vanish() { Some(0) } else { None })
    }

    /// Dickson determinant of y ↦ a20·y^q + a02·y^{q²} + a00·y^{q³}.
    pub fn g_value(&self, ctx: &AppendixContext) -> Option<Elt> {
        self.a.map(|a| a.square_root_map(ctx).dickson_det())
    }
}

/// V²·L₁ with Y₀ = −U/V; L₁ has Y₀-degree at most 2.
fn substitute_y0(
    ctx: &AppendixContext,
    l1: &YPoly,
    u: &YPoly,
    v: &YPoly,
) -> Result<YPoly> {
    let f = ctx.field();
    let nu = u.scale(f, f.neg(1));
    let one = YPoly::constant(1);
    let pu = [one.clone(), nu.clone(), nu.mul(f, &nu)];
    let pv = [one, v.clone(), v.mul(f, v)];
    let mut out = YPoly::zero();
    for &(mon, c) in l1.terms() {
        let e0 = mon[0] as usize;
        if e0 > 2 {
            return Err(Error::InternalInconsistency("L1 has y-degree above 2".into()));
        }
        let rest = YPoly::monomial([0, mon[1], mon[2], mon[3]], c);
        out = out.add(f, &pu[e0].mul(f, &pv[2 - e0]).mul(f, &rest));
    }
    Ok(out)
}
