//! Arithmetic in the tower F_p ⊆ F_q ⊆ F_{q^m}.
//!
//! Everything lives in one flat extension F_{p^n}, n = a·m, built from a
//! single modulus over F_p. Elements are `u32` encodings Σ cᵢ pⁱ of their
//! representative polynomials. F_q is the fixed field of z ↦ z^q.

mod moduli;
pub(crate) mod poly;

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::config::config;
use crate::error::{Error, Result};

pub use moduli::MODULI_TABLE_VERSION;

pub type Elt = u32;

const NO_LOG: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subfield {
    /// F_p
    Base,
    /// F_q
    Mid,
}

/// Operand for [`FieldSpec::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Add(Elt),
    Sub(Elt),
    Mul(Elt),
    Div(Elt),
    Pow(i64),
    Neg,
}

enum Arith {
    Table {
        log: Vec<u32>,
        /// g^i for i in 0..2(N-1), so log sums never need a reduction.
        exp: Vec<u32>,
        /// zech[d] = log(1 + g^d); only built for odd p.
        zech: Vec<u32>,
    },
    Poly2 {
        modulus: u64,
        /// Per absolute power j < n: byte-chunk tables of z ↦ z^{2^j}.
        frob: Vec<Vec<u32>>,
    },
    PolyP,
}

struct Inner {
    p: u32,
    a: u32,
    m: u32,
    n: u32,
    q: u64,
    order: u64,
    modulus: Vec<u32>,
    /// modulus as a bit mask when p = 2
    mod_bits: u64,
    generator: Elt,
    ppow: Vec<u64>,
    arith: Arith,
    zeta: Elt,
    fq_basis: Vec<Elt>,
    mid: OnceLock<Vec<Elt>>,
}

/// A validated field tower. Cheap to clone; immutable and shareable.
#[derive(Clone)]
pub struct FieldSpec(Arc<Inner>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p
                && self.0.a == other.0.a
                && self.0.m == other.0.m
                && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

impl std::hash::Hash for FieldSpec {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        (self.0.p, self.0.a, self.0.m).hash(state);
        self.0.modulus.hash(state);
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldSpec({self})")
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs: Vec<String> = self.0.modulus.iter().map(|c| c.to_string()).collect();
        write!(
            f,
            "field p={} a={} m={} modulus=[{}]",
            self.0.p,
            self.0.a,
            self.0.m,
            coeffs.join(",")
        )
    }
}

impl FieldSpec {
    /// Builds F_{p^{am}} with F_q = F_{p^a} as the designated subfield.
    pub fn new(p: u32, a: u32, m: u32, modulus: Option<&[u32]>) -> Result<FieldSpec> {
        Self::with_threshold(p, a, m, modulus, config().table_threshold)
    }

    /// Shorthand for the default modulus.
    pub fn gf(p: u32, a: u32, m: u32) -> Result<FieldSpec> {
        Self::new(p, a, m, None)
    }

    pub fn with_threshold(
        p: u32,
        a: u32,
        m: u32,
        modulus: Option<&[u32]>,
        table_threshold: u64,
    ) -> Result<FieldSpec> {
        if !poly::is_prime(p as u64) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        if a == 0 || m == 0 {
            return Err(Error::InvalidField("a and m must be positive".into()));
        }
        let n = a.checked_mul(m).ok_or(Error::DegreeOutOfRange(u32::MAX))?;
        if n > 32 {
            return Err(Error::DegreeOutOfRange(n));
        }
        let order = (p as u64)
            .checked_pow(n)
            .filter(|&o| o <= 1u64 << 32)
            .ok_or(Error::DegreeOutOfRange(n))?;
        let modulus: Vec<u32> = match modulus {
            Some(c) => {
                if c.len() != n as usize + 1 || c[n as usize] != 1 {
                    return Err(Error::InvalidField(format!(
                        "modulus must be monic of degree {n}"
                    )));
                }
                if c.iter().any(|&x| x >= p) {
                    return Err(Error::InvalidField(format!(
                        "modulus coefficients must lie in [0,{p})"
                    )));
                }
                let f: Vec<u64> = c.iter().map(|&x| x as u64).collect();
                if !poly::is_irreducible(&f, p as u64) {
                    return Err(Error::ReducibleModulus(p));
                }
                c.to_vec()
            }
            None => match moduli::lookup(p, n) {
                Some(c) => c.to_vec(),
                None => poly::find_primitive(p as u64, n)
                    .into_iter()
                    .map(|c| c as u32)
                    .collect(),
            },
        };
        let ppow: Vec<u64> = (0..=n).map(|i| (p as u64).pow(i)).collect();
        let q = (p as u64).pow(a);
        let mut inner = Inner {
            p,
            a,
            m,
            n,
            q,
            order,
            modulus,
            mod_bits: 0,
            generator: 0,
            ppow,
            arith: Arith::PolyP,
            zeta: 1,
            fq_basis: Vec::new(),
            mid: OnceLock::new(),
        };
        if p == 2 {
            let mut bits = 0u64;
            for (i, &c) in inner.modulus.iter().enumerate() {
                bits |= (c as u64) << i;
            }
            inner.mod_bits = bits;
            inner.arith = Arith::Poly2 {
                modulus: bits,
                frob: Vec::new(),
            };
        }
        inner.generator = find_generator(&inner);
        if order <= table_threshold {
            inner.arith = build_tables(&inner);
        } else if p == 2 {
            let frob = build_frob_tables(&inner);
            if let Arith::Poly2 { frob: slot, .. } = &mut inner.arith {
                *slot = frob;
            }
        }
        inner.zeta = slow_pow(&inner, inner.generator, (order - 1) / (q - 1));
        inner.fq_basis = (0..a).map(|j| slow_pow(&inner, inner.zeta, j as u64)).collect();
        Ok(FieldSpec(Arc::new(inner)))
    }
}

fn find_generator(inner: &Inner) -> Elt {
    let order = inner.order;
    if order == 2 {
        return 1;
    }
    let factors = poly::prime_factors(order - 1);
    let is_gen = |g: Elt| factors.iter().all(|&l| slow_pow(inner, g, (order - 1) / l) != 1);
    // x itself when the modulus is primitive
    let x = if inner.n >= 2 { inner.p } else { 0 };
    if x != 0 && is_gen(x) {
        return x;
    }
    (2..order as u32).find(|&g| is_gen(g)).expect("F* is cyclic")
}

fn slow_pow(inner: &Inner, mut b: Elt, mut e: u64) -> Elt {
    let mut r: Elt = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = slow_mul(inner, r, b);
        }
        b = slow_mul(inner, b, b);
        e >>= 1;
    }
    r
}

fn slow_mul(inner: &Inner, a: Elt, b: Elt) -> Elt {
    if inner.p == 2 {
        return clmul_reduce(a, b, inner.mod_bits, inner.n);
    }
    let p = inner.p as u64;
    let n = inner.n as usize;
    let da = digits(inner, a);
    let db = digits(inner, b);
    let mut prod = vec![0u64; 2 * n];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for top in (n..2 * n).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        for (i, &fc) in inner.modulus.iter().enumerate().take(n) {
            let t = c * fc as u64 % p;
            prod[top - n + i] = (prod[top - n + i] + p - t) % p;
        }
        prod[top] = 0;
    }
    undigits(inner, &prod[..n])
}

fn digits(inner: &Inner, mut z: Elt) -> Vec<u64> {
    let p = inner.p;
    (0..inner.n)
        .map(|_| {
            let d = z % p;
            z /= p;
            d as u64
        })
        .collect()
}

fn undigits(inner: &Inner, d: &[u64]) -> Elt {
    d.iter()
        .zip(&inner.ppow)
        .map(|(&c, &w)| c * w)
        .sum::<u64>() as Elt
}

fn digit_add(inner: &Inner, a: Elt, b: Elt) -> Elt {
    let p = inner.p;
    let (mut a, mut b) = (a, b);
    let mut out: u64 = 0;
    for i in 0..inner.n as usize {
        let d = (a % p + b % p) % p;
        a /= p;
        b /= p;
        out += d as u64 * inner.ppow[i];
    }
    out as Elt
}

fn digit_neg(inner: &Inner, a: Elt) -> Elt {
    let p = inner.p;
    let mut a = a;
    let mut out: u64 = 0;
    for i in 0..inner.n as usize {
        let d = (p - a % p) % p;
        a /= p;
        out += d as u64 * inner.ppow[i];
    }
    out as Elt
}

#[inline]
fn clmul_reduce(a: Elt, b: Elt, modulus: u64, n: u32) -> Elt {
    let mut r = 0u64;
    let mut bb = b;
    let aa = a as u64;
    while bb != 0 {
        let i = bb.trailing_zeros();
        r ^= aa << i;
        bb &= bb - 1;
    }
    while r >> n != 0 {
        let top = 63 - r.leading_zeros();
        r ^= modulus << (top - n);
    }
    r as Elt
}

fn build_tables(inner: &Inner) -> Arith {
    let big_n = inner.order as usize;
    let g = inner.generator;
    let mut log = vec![NO_LOG; big_n];
    let mut exp = vec![0u32; 2 * (big_n - 1).max(1)];
    let mut x: Elt = 1;
    for i in 0..big_n - 1 {
        exp[i] = x;
        log[x as usize] = i as u32;
        x = slow_mul(inner, x, g);
    }
    for i in big_n - 1..exp.len() {
        exp[i] = exp[i - (big_n - 1)];
    }
    let zech = if inner.p == 2 {
        Vec::new()
    } else {
        (0..big_n - 1)
            .map(|d| log[digit_add(inner, 1, exp[d]) as usize])
            .collect()
    };
    Arith::Table { log, exp, zech }
}

fn build_frob_tables(inner: &Inner) -> Vec<Vec<u32>> {
    let n = inner.n;
    let chunks = n.div_ceil(8) as usize;
    let mut tabs = Vec::with_capacity(n as usize);
    for j in 0..n {
        let e = 1u64 << j;
        let images: Vec<Elt> = (0..n).map(|b| slow_pow(inner, 1 << b, e)).collect();
        let mut t = vec![0u32; chunks * 256];
        for c in 0..chunks {
            for byte in 1..256usize {
                let low = byte.trailing_zeros() as usize;
                let bit = c * 8 + low;
                let img = if bit < n as usize { images[bit] } else { 0 };
                t[c * 256 + byte] = t[c * 256 + (byte & (byte - 1))] ^ img;
            }
        }
        tabs.push(t);
    }
    tabs
}

impl FieldSpec {
    #[inline]
    pub fn p(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn a(&self) -> u32 {
        self.0.a
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.0.m
    }

    /// Absolute degree n = a·m.
    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.n
    }

    #[inline]
    pub fn q(&self) -> u64 {
        self.0.q
    }

    /// |F_{q^m}|
    #[inline]
    pub fn order(&self) -> u64 {
        self.0.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    #[inline]
    pub fn generator(&self) -> Elt {
        self.0.generator
    }

    pub fn has_tables(&self) -> bool {
        matches!(self.0.arith, Arith::Table { .. })
    }

    #[inline]
    pub fn contains(&self, z: Elt) -> bool {
        (z as u64) < self.0.order
    }

    pub fn elements(&self) -> impl Iterator<Item = Elt> {
        0..=(self.0.order - 1) as Elt
    }

    /// Generator of F_q^*: g^{(q^m-1)/(q-1)}.
    pub fn zeta(&self) -> Elt {
        self.0.zeta
    }

    /// F_p-basis 1, ζ, …, ζ^{a-1} of F_q.
    pub fn fq_basis(&self) -> &[Elt] {
        &self.0.fq_basis
    }

    #[inline]
    pub fn add(&self, x: Elt, y: Elt) -> Elt {
        if self.0.p == 2 {
            return x ^ y;
        }
        match &self.0.arith {
            Arith::Table { log, exp, zech } => {
                if x == 0 {
                    return y;
                }
                if y == 0 {
                    return x;
                }
                let lx = log[x as usize];
                let ly = log[y as usize];
                let nm1 = self.0.order as u32 - 1;
                let d = if ly >= lx { ly - lx } else { ly + nm1 - lx };
                let z = zech[d as usize];
                if z == NO_LOG {
                    0
                } else {
                    exp[(lx + z) as usize]
                }
            }
            _ => digit_add(&self.0, x, y),
        }
    }

    #[inline]
    pub fn neg(&self, x: Elt) -> Elt {
        if self.0.p == 2 || x == 0 {
            return x;
        }
        match &self.0.arith {
            Arith::Table { log, exp, .. } => {
                let half = (self.0.order as u32 - 1) / 2;
                exp[(log[x as usize] + half) as usize]
            }
            _ => digit_neg(&self.0, x),
        }
    }

    #[inline]
    pub fn sub(&self, x: Elt, y: Elt) -> Elt {
        if self.0.p == 2 {
            x ^ y
        } else {
            self.add(x, self.neg(y))
        }
    }

    #[inline]
    pub fn mul(&self, x: Elt, y: Elt) -> Elt {
        if x == 0 || y == 0 {
            return 0;
        }
        match &self.0.arith {
            Arith::Table { log, exp, .. } => exp[(log[x as usize] + log[y as usize]) as usize],
            Arith::Poly2 { modulus, .. } => clmul_reduce(x, y, *modulus, self.0.n),
            Arith::PolyP => slow_mul(&self.0, x, y),
        }
    }

    /// Inverse of a nonzero element; `None` for zero.
    #[inline]
    pub fn inv(&self, x: Elt) -> Option<Elt> {
        if x == 0 {
            return None;
        }
        Some(match &self.0.arith {
            Arith::Table { log, exp, .. } => {
                let nm1 = self.0.order as u32 - 1;
                let l = log[x as usize];
                exp[((nm1 - l) % nm1) as usize]
            }
            _ => self.pow_u(x, self.0.order - 2),
        })
    }

    pub fn div(&self, x: Elt, y: Elt) -> Result<Elt> {
        let yi = self.inv(y).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(x, yi))
    }

    /// x^e for a non-negative exponent (0^0 = 1).
    pub fn pow_u(&self, x: Elt, e: u64) -> Elt {
        if e == 0 {
            return 1;
        }
        if x == 0 {
            return 0;
        }
        match &self.0.arith {
            Arith::Table { log, exp, .. } => {
                let nm1 = self.0.order - 1;
                let l = (log[x as usize] as u64 * (e % nm1)) % nm1;
                exp[l as usize]
            }
            _ => {
                let mut r: Elt = 1;
                let mut b = x;
                let mut e = e;
                while e > 0 {
                    if e & 1 == 1 {
                        r = self.mul(r, b);
                    }
                    e >>= 1;
                    if e > 0 {
                        b = self.mul(b, b);
                    }
                }
                r
            }
        }
    }

    /// x^e; negative exponents need a nonzero base.
    pub fn pow(&self, x: Elt, e: i64) -> Result<Elt> {
        if e >= 0 {
            return Ok(self.pow_u(x, e as u64));
        }
        let xi = self.inv(x).ok_or(Error::DivisionByZero)?;
        Ok(self.pow_u(xi, e.unsigned_abs()))
    }

    /// g^i
    pub fn exp(&self, i: u64) -> Elt {
        match &self.0.arith {
            Arith::Table { exp, .. } => exp[(i % (self.0.order - 1)) as usize],
            _ => self.pow_u(self.0.generator, i),
        }
    }

    /// Discrete log base g; only available in table mode.
    pub fn log(&self, x: Elt) -> Option<u64> {
        match &self.0.arith {
            Arith::Table { log, .. } if x != 0 => Some(log[x as usize] as u64),
            _ => None,
        }
    }

    /// Checked arithmetic on raw encodings, rejecting values outside the field.
    pub fn arith(&self, lhs: Elt, op: Op) -> Result<Elt> {
        let check = |z: Elt| {
            if self.contains(z) {
                Ok(())
            } else {
                Err(Error::FieldMismatch)
            }
        };
        check(lhs)?;
        match op {
            Op::Add(r) => check(r).map(|_| self.add(lhs, r)),
            Op::Sub(r) => check(r).map(|_| self.sub(lhs, r)),
            Op::Mul(r) => check(r).map(|_| self.mul(lhs, r)),
            Op::Div(r) => check(r).and_then(|_| self.div(lhs, r)),
            Op::Pow(e) => self.pow(lhs, e),
            Op::Neg => Ok(self.neg(lhs)),
        }
    }

    /// z^{p^j}
    pub fn abs_frob(&self, z: Elt, j: i64) -> Elt {
        let n = self.0.n as i64;
        let j = j.rem_euclid(n) as u32;
        if j == 0 || z == 0 {
            return z;
        }
        match &self.0.arith {
            Arith::Table { log, exp, .. } => {
                let nm1 = self.0.order - 1;
                let pj = self.0.ppow[j as usize] % nm1;
                exp[((log[z as usize] as u64 * pj) % nm1) as usize]
            }
            Arith::Poly2 { frob, .. } if !frob.is_empty() => {
                let t = &frob[j as usize];
                let mut out = 0u32;
                let mut zz = z;
                let mut c = 0usize;
                while zz != 0 {
                    out ^= t[c * 256 + (zz & 0xff) as usize];
                    zz >>= 8;
                    c += 1;
                }
                out
            }
            _ => self.pow_u(z, self.0.ppow[j as usize]),
        }
    }

    /// z^{q^i}, with i taken modulo m (negative i gives q-th roots).
    #[inline]
    pub fn frob(&self, z: Elt, i: i64) -> Elt {
        let i = i.rem_euclid(self.0.m as i64);
        self.abs_frob(z, i * self.0.a as i64)
    }

    /// Tr_{q^m/q}(z)
    pub fn trace(&self, z: Elt) -> Elt {
        (0..self.0.m as i64).fold(0, |acc, i| self.add(acc, self.frob(z, i)))
    }

    /// N_{q^m/q}(z)
    pub fn norm(&self, z: Elt) -> Elt {
        self.pow_u(z, (self.0.order - 1) / (self.0.q - 1))
    }

    pub fn rel_trace_norm(&self, z: Elt) -> (Elt, Elt) {
        let t = self.trace(z);
        let n = self.norm(z);
        debug_assert!(self.in_fq(t) && self.in_fq(n));
        (t, n)
    }

    /// Tr_{q/p}(z) for z ∈ F_q.
    pub fn fq_abs_trace(&self, z: Elt) -> Elt {
        (0..self.0.a as i64).fold(0, |acc, j| self.add(acc, self.abs_frob(z, j)))
    }

    #[inline]
    pub fn in_fq(&self, z: Elt) -> bool {
        self.frob(z, 1) == z
    }

    /// Ascending enumeration of F_p or F_q inside F_{q^m}.
    pub fn subfield_elements(&self, level: Subfield) -> Vec<Elt> {
        match level {
            Subfield::Base => (0..self.0.p).collect(),
            Subfield::Mid => self.mid_elements().to_vec(),
        }
    }

    /// Cached ascending list of F_q.
    pub fn mid_elements(&self) -> &[Elt] {
        self.0.mid.get_or_init(|| {
            let q = self.0.q;
            let mut v = Vec::with_capacity(q as usize);
            v.push(0);
            let mut z: Elt = 1;
            for _ in 0..q - 1 {
                v.push(z);
                z = self.mul(z, self.0.zeta);
            }
            v.sort_unstable();
            v
        })
    }

    /// Roots of x² + x + c in F_q, or `None` when Tr_{q/2}(c) = 1.
    pub fn artin_schreier_solve(&self, c: Elt) -> Result<Option<(Elt, Elt)>> {
        if self.0.p != 2 {
            return Err(Error::OddCharacteristic(self.0.p));
        }
        if !self.in_fq(c) {
            return Err(Error::InvalidParams(format!("{c} is not in F_q")));
        }
        // x ↦ x² + x is F_2-linear on the whole field; solve there and keep
        // the root only if it already lies in F_q.
        let images: Vec<u32> = (0..self.0.n)
            .map(|b| {
                let x = 1u32 << b;
                self.mul(x, x) ^ x
            })
            .collect();
        let Some(r) = solve_f2(&images, c) else {
            return Ok(None);
        };
        if !self.in_fq(r) {
            return Ok(None);
        }
        let (a, b) = (r, r ^ 1);
        Ok(Some((a.min(b), a.max(b))))
    }

    /// Encoding digit i of z (coefficient of x^i).
    #[inline]
    pub fn digit(&self, z: Elt, i: u32) -> u32 {
        if self.0.p == 2 {
            (z >> i) & 1
        } else {
            ((z as u64 / self.0.ppow[i as usize]) % self.0.p as u64) as u32
        }
    }

    /// p^i as an encoding, i.e. the monomial x^i.
    #[inline]
    pub fn monomial(&self, i: u32) -> Elt {
        self.0.ppow[i as usize] as Elt
    }

    /// Parses the `field p=.. a=.. m=.. modulus=[..]` line.
    pub fn parse_line(line: &str) -> Result<FieldSpec> {
        let mut it = line.split_whitespace();
        if it.next() != Some("field") {
            return Err(Error::Parse(format!("not a field line: {line}")));
        }
        let (mut p, mut a, mut m, mut modulus) = (None, None, None, None);
        for tok in it {
            let (k, v) = tok
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad token {tok}")))?;
            let num = |s: &str| s.parse::<u32>().map_err(|e| Error::Parse(e.to_string()));
            match k {
                "p" => p = Some(num(v)?),
                "a" => a = Some(num(v)?),
                "m" => m = Some(num(v)?),
                "modulus" => {
                    let inner = v
                        .strip_prefix('[')
                        .and_then(|s| s.strip_suffix(']'))
                        .ok_or_else(|| Error::Parse(format!("bad modulus {v}")))?;
                    modulus = Some(
                        inner
                            .split(',')
                            .map(|s| num(s.trim()))
                            .collect::<Result<Vec<u32>>>()?,
                    );
                }
                _ => return Err(Error::Parse(format!("unknown key {k}"))),
            }
        }
        let missing = |k: &str| Error::Parse(format!("field line lacks {k}"));
        FieldSpec::new(
            p.ok_or_else(|| missing("p"))?,
            a.ok_or_else(|| missing("a"))?,
            m.ok_or_else(|| missing("m"))?,
            modulus.as_deref(),
        )
    }
}

/// Finds x with Σ xᵢ·images[i] = target over F_2, if any.
pub(crate) fn solve_f2(images: &[u32], target: u32) -> Option<u32> {
    // basis[b] = (vector with leading bit b, combination mask)
    let mut basis: [(u32, u32); 32] = [(0, 0); 32];
    for (i, &img) in images.iter().enumerate() {
        let mut v = img;
        let mut c = 1u32 << i;
        while v != 0 {
            let b = 31 - v.leading_zeros() as usize;
            if basis[b].0 == 0 {
                basis[b] = (v, c);
                break;
            }
            v ^= basis[b].0;
            c ^= basis[b].1;
        }
    }
    let mut v = target;
    let mut c = 0u32;
    while v != 0 {
        let b = 31 - v.leading_zeros() as usize;
        if basis[b].0 == 0 {
            return None;
        }
        v ^= basis[b].0;
        c ^= basis[b].1;
    }
    Some(c)
}
