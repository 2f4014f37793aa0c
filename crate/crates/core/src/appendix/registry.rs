//! Named evaluation of the appendix polynomials.

use super::transcribed::{h, r0};
use super::ypoly::{XLin, YPoly};
use super::{pw, AppendixContext, Derivation};
use crate::error::{Error, Result};
use crate::gf::{Elt, FieldSpec};

pub const REGISTRY_NAMES: [&str; 34] = [
    "d", "f", "g", "K", "F0", "F1", "F2", "F3", "G1", "G2", "G3", "u", "v", "w", "H1", "H2", "L1",
    "L2", "P", "Q", "U", "V", "M", "a00", "a01", "a02", "a10", "a11", "a20", "r0", "h1", "h2",
    "h3", "h4",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Form {
    Transcribed,
    Derived,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Bindings {
    pub c: Option<Elt>,
    pub x: Option<Elt>,
    pub y: Option<Elt>,
    pub z: Option<Elt>,
}

impl Bindings {
    pub fn c(c: Elt) -> Bindings {
        Bindings { c: Some(c), ..Default::default() }
    }

    pub fn cy(c: Elt, y: Elt) -> Bindings {
        Bindings { c: Some(c), y: Some(y), ..Default::default() }
    }

    pub fn cxy(c: Elt, x: Elt, y: Elt) -> Bindings {
        Bindings { c: Some(c), x: Some(x), y: Some(y), z: None }
    }

    pub fn z(z: Elt) -> Bindings {
        Bindings { z: Some(z), ..Default::default() }
    }
}

fn need(v: Option<Elt>, name: &str) -> Result<Elt> {
    v.ok_or_else(|| Error::MissingBinding(name.into()))
}

fn xlin_eval(f: &FieldSpec, p: &XLin, x: Elt, y: Elt) -> Elt {
    (0..4).fold(0, |acc, j| f.add(acc, f.mul(p[j].eval(f, y), f.frob(x, j as i64))))
}

/// The derived form; see [`registry_eval_form`].
pub fn registry_eval(ctx: &AppendixContext, name: &str, b: &Bindings) -> Result<Elt> {
    registry_eval_form(ctx, name, Form::Derived, b)
}

/// Evaluates a named appendix polynomial with α, β taken from `ctx`.
/// r₀ and h₁..h₄ have no defining combination to rebuild them from, so both
/// forms evaluate the printed expression.
pub fn registry_eval_form(ctx: &AppendixContext, name: &str, form: Form, b: &Bindings) -> Result<Elt> {
    let f = ctx.field();
    match name {
        "r0" => return Ok(r0(f, ctx.beta(), need(b.z, "z")?)),
        "h1" | "h2" | "h3" | "h4" => {
            let i = name[1..].parse().unwrap();
            return Ok(h(f, ctx.beta(), i, need(b.z, "z")?));
        }
        _ if !REGISTRY_NAMES.contains(&name) => {
            return Err(Error::UnknownName(name.into()))
        }
        _ => {}
    }
    let c = need(b.c, "C")?;
    let needs_x = matches!(name, "F0" | "F1" | "F2" | "F3" | "G1" | "G2" | "G3" | "H1" | "H2");
    let needs_y = needs_x || matches!(name, "K" | "u" | "v" | "w" | "L1" | "L2" | "P" | "Q" | "U" | "V" | "M");
    let y = if needs_y { need(b.y, "y")? } else { 0 };
    let x = if needs_x { need(b.x, "x")? } else { 0 };
    match form {
        Form::Derived => derived(ctx, &ctx.derive(c)?, name, x, y),
        Form::Transcribed => transcribed(ctx, c, name, x, y),
    }
}

fn undefined_m() -> Error {
    Error::DivisionNotExact("M is undefined: α²(C²α²+β²)(C^{2q+2}α²+C^{2q}β²+1) = 0".into())
}

fn derived(ctx: &AppendixContext, dv: &Derivation, name: &str, x: Elt, y: Elt) -> Result<Elt> {
    let f = ctx.field();
    let fi = |i: usize| {
        let v = xlin_eval(f, &dv.f0, x, y);
        f.frob(v, i as i64)
    };
    Ok(match name {
        "d" => dv.d,
        "f" => dv.f_value(ctx).ok_or_else(undefined_m)?,
        "g" => dv.g_value(ctx).ok_or_else(undefined_m)?,
        "K" => dv.k.eval(f, y),
        "F0" | "F1" | "F2" | "F3" => fi(name[1..].parse().unwrap()),
        "G1" | "G2" | "G3" => xlin_eval(f, &dv.g[name[1..].parse::<usize>().unwrap() - 1], x, y),
        "u" => dv.u.eval(f, y),
        "v" => dv.v.eval(f, y),
        "w" => dv.w.eval(f, y),
        "H1" => xlin_eval(f, &dv.h1, x, y),
        "H2" => xlin_eval(f, &dv.h2, x, y),
        "L1" => dv.l1.eval(f, y),
        "L2" => dv.l2.eval(f, y),
        "Q" => dv.q.eval(f, y),
        "P" => {
            let s = p_factor(ctx, dv.c);
            f.mul(f.mul(s, s), dv.q.eval(f, y))
        }
        "U" => dv.big_u.eval(f, y),
        "V" => dv.big_v.eval(f, y),
        "M" => dv.m.as_ref().ok_or_else(undefined_m)?.eval(f, y),
        a => dv.a.ok_or_else(undefined_m)?.get(a).ok_or_else(|| Error::UnknownName(a.into()))?,
    })
}

/// C^q + αβ^q
fn p_factor(ctx: &AppendixContext, c: Elt) -> Elt {
    let f = ctx.field();
    f.add(f.frob(c, 1), f.mul(ctx.alpha(), f.frob(ctx.beta(), 1)))
}

/// F₀(x, y) straight from its printed definition.
pub(crate) fn f0_printed(ctx: &AppendixContext, c: Elt, x: Elt, y: Elt) -> Elt {
    let f = ctx.field();
    let c2 = f.mul(c, c);
    let e = f.add(f.mul(c2, f.mul(ctx.alpha(), ctx.alpha())), f.mul(ctx.beta(), ctx.beta()));
    let xi = |i| f.frob(x, i);
    let yi = |i| f.frob(y, i);
    let s = |a: Elt, b: Elt, k: Elt| f.mul(k, f.add(f.mul(x, a), f.mul(b, y)));
    f.add(
        f.add(s(yi(1), xi(1), c2), s(yi(2), xi(2), 1)),
        s(yi(3), xi(3), e),
    )
}

fn transcribed(ctx: &AppendixContext, c: Elt, name: &str, x: Elt, y: Elt) -> Result<Elt> {
    let f = ctx.field();
    let t = ctx.transcribed(c);
    let f0 = || f0_printed(ctx, c, x, y);
    let c2 = f.mul(c, c);
    let k = || {
        let e = f.add(f.mul(c2, f.mul(ctx.alpha(), ctx.alpha())), f.mul(ctx.beta(), ctx.beta()));
        f.add(f.add(f.mul(c2, f.frob(y, 1)), f.frob(y, 2)), f.mul(e, f.frob(y, 3)))
    };
    let mult = t.multipliers();
    let g = |i: usize| {
        let v0 = f0();
        f.add(f.mul(k(), f.frob(v0, i as i64)), f.mul(mult[i - 1].eval(f, y), v0))
    };
    let ev = |p: YPoly| p.eval(f, y);
    Ok(match name {
        "d" => t.d_poly(),
        "f" => t.f_poly(),
        "g" => t.g_poly(),
        "K" => k(),
        "F0" | "F1" | "F2" | "F3" => f.frob(f0(), name[1..].parse().unwrap()),
        "G1" | "G2" | "G3" => g(name[1..].parse().unwrap()),
        "u" => ev(t.u()),
        "v" => ev(t.v()),
        "w" => ev(t.w()),
        "H1" => f.add(f.mul(ev(t.u()), g(1)), f.mul(ev(t.v()), g(2))),
        "H2" => f.add(f.mul(ev(t.w()), g(1)), f.mul(ev(t.v()), g(3))),
        "L1" => ev(t.l1()),
        "L2" => ev(t.l2()),
        "Q" => f.add(ev(t.big_u()), f.mul(y, ev(t.big_v()))),
        "P" => {
            let s = p_factor(ctx, c);
            let s2 = f.mul(s, s);
            let cab = f.add(f.mul(c, ctx.alpha()), ctx.beta());
            let l1 = f.mul(f.mul(f.mul(ctx.alpha(), ctx.alpha()), pw(f, c, [0, 0, 0, 2])), ev(t.l1()));
            let l2 = f.mul(f.mul(cab, cab), ev(t.l2()));
            f.mul(s2, f.add(l1, l2))
        }
        "U" => ev(t.big_u()),
        "V" => ev(t.big_v()),
        "M" => ev(t.m()),
        a => t.a_coeffs().get(a).ok_or_else(|| Error::UnknownName(a.into()))?,
    })
}
