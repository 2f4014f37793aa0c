//! Polynomials in the conjugates Y_i = y^{q^i} (i = 0..3) of one variable
//! over F_{q^4}. Treating the conjugates as independent variables makes the
//! divisions of the derivation exact; Frobenius acts on coefficients and
//! shifts the indices cyclically.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::gf::{Elt, FieldSpec};

/// Exponent vector (e_0, e_1, e_2, e_3).
pub type Mon = [u8; 4];

/// Monomial order: lexicographic with Y_3 most significant.
fn order_key(m: &Mon) -> [u8; 4] {
    [m[3], m[2], m[1], m[0]]
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct YPoly {
    /// Sorted by `order_key`, no zero coefficients.
    terms: Vec<(Mon, Elt)>,
}

impl YPoly {
    pub fn zero() -> YPoly {
        YPoly::default()
    }

    pub fn constant(c: Elt) -> YPoly {
        YPoly::from_terms_raw(vec![([0; 4], c)])
    }

    /// c·Y_i
    pub fn var(i: usize, c: Elt) -> YPoly {
        let mut m = [0; 4];
        m[i] = 1;
        YPoly::from_terms_raw(vec![(m, c)])
    }

    pub fn monomial(m: Mon, c: Elt) -> YPoly {
        YPoly::from_terms_raw(vec![(m, c)])
    }

    fn from_terms_raw(mut t: Vec<(Mon, Elt)>) -> YPoly {
        t.retain(|&(_, c)| c != 0);
        t.sort_by_key(|(m, _)| order_key(m));
        YPoly { terms: t }
    }

    /// Sums coefficients of repeated monomials.
    pub fn from_terms(f: &FieldSpec, terms: impl IntoIterator<Item = (Mon, Elt)>) -> YPoly {
        let mut acc: HashMap<Mon, Elt> = HashMap::new();
        for (m, c) in terms {
            let e = acc.entry(m).or_insert(0);
            *e = f.add(*e, c);
        }
        YPoly::from_terms_raw(acc.into_iter().collect())
    }

    pub fn terms(&self) -> &[(Mon, Elt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Mon) -> Elt {
        self.terms
            .binary_search_by_key(&order_key(m), |(k, _)| order_key(k))
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    pub fn leading(&self) -> Option<(Mon, Elt)> {
        self.terms.last().copied()
    }

    pub fn add(&self, f: &FieldSpec, o: &YPoly) -> YPoly {
        let (a, b) = (&self.terms, &o.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let take = if i == a.len() {
                std::cmp::Ordering::Greater
            } else if j == b.len() {
                std::cmp::Ordering::Less
            } else {
                order_key(&a[i].0).cmp(&order_key(&b[j].0))
            };
            match take {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = f.add(a[i].1, b[j].1);
                    if c != 0 {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        YPoly { terms: out }
    }

    pub fn sub(&self, f: &FieldSpec, o: &YPoly) -> YPoly {
        self.add(f, &o.scale(f, f.neg(1)))
    }

    pub fn scale(&self, f: &FieldSpec, c: Elt) -> YPoly {
        if c == 0 {
            return YPoly::zero();
        }
        YPoly {
            terms: self.terms.iter().map(|&(m, x)| (m, f.mul(c, x))).collect(),
        }
    }

    pub fn mul(&self, f: &FieldSpec, o: &YPoly) -> YPoly {
        let mut acc: HashMap<Mon, Elt> = HashMap::with_capacity(self.terms.len() * o.terms.len());
        for &(m1, c1) in &self.terms {
            for &(m2, c2) in &o.terms {
                let m = [m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2], m1[3] + m2[3]];
                let e = acc.entry(m).or_insert(0);
                *e = f.add(*e, f.mul(c1, c2));
            }
        }
        YPoly::from_terms_raw(acc.into_iter().collect())
    }

    /// Applies z ↦ z^{q^i}: coefficients are raised, Y_j becomes Y_{j+i}.
    pub fn frob(&self, f: &FieldSpec, i: usize) -> YPoly {
        let t = self
            .terms
            .iter()
            .map(|&(m, c)| {
                let mut s = [0; 4];
                for j in 0..4 {
                    s[(j + i) % 4] = m[j];
                }
                (s, f.frob(c, i as i64))
            })
            .collect();
        YPoly::from_terms_raw(t)
    }

    /// Exact quotient self / d; fails if any remainder is left.
    pub fn div_exact(&self, f: &FieldSpec, d: &YPoly) -> Result<YPoly> {
        let (lm, lc) = d.leading().ok_or(Error::DivisionByZero)?;
        let li = f.inv(lc).ok_or(Error::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.leading() {
            if (0..4).any(|i| m[i] < lm[i]) {
                return Err(Error::DivisionNotExact(format!(
                    "leading monomial {m:?} not divisible by {lm:?}"
                )));
            }
            let qm = [m[0] - lm[0], m[1] - lm[1], m[2] - lm[2], m[3] - lm[3]];
            let qc = f.mul(c, li);
            quot.push((qm, qc));
            rem = rem.sub(f, &d.mul(f, &YPoly::monomial(qm, qc)));
        }
        Ok(YPoly::from_terms(f, quot))
    }

    /// Splits by the power of Y_0: part[e] collects the terms with e_0 = e,
    /// with Y_0 removed.
    pub fn split_y0(&self) -> Vec<YPoly> {
        let top = self.terms.iter().map(|(m, _)| m[0]).max().unwrap_or(0) as usize;
        let mut parts = vec![Vec::new(); top + 1];
        for &(m, c) in &self.terms {
            parts[m[0] as usize].push(([0, m[1], m[2], m[3]], c));
        }
        parts.into_iter().map(YPoly::from_terms_raw).collect()
    }

    pub fn max_exponent(&self) -> u8 {
        self.terms.iter().flat_map(|(m, _)| m.iter().copied()).max().unwrap_or(0)
    }

    /// Value at y, i.e. with Y_i = y^{q^i}.
    pub fn eval(&self, f: &FieldSpec, y: Elt) -> Elt {
        self.eval_conj(f, &Conj::new(f, y, self.max_exponent()))
    }

    pub fn eval_conj(&self, f: &FieldSpec, c: &Conj) -> Elt {
        let mut acc = 0;
        for &(m, x) in &self.terms {
            let mut t = x;
            for i in 0..4 {
                if m[i] > 0 {
                    t = f.mul(t, c.pow(f, i, m[i]));
                }
            }
            acc = f.add(acc, t);
        }
        acc
    }

    /// Smallest monomial (in the division order) where the two differ.
    pub fn first_difference(&self, o: &YPoly) -> Option<(Mon, Elt, Elt)> {
        let mut mons: Vec<Mon> = self.terms.iter().chain(&o.terms).map(|t| t.0).collect();
        mons.sort_by_key(order_key);
        mons.dedup();
        mons.into_iter()
            .map(|m| (m, self.coeff(&m), o.coeff(&m)))
            .find(|&(_, a, b)| a != b)
    }
}

/// Powers of the four conjugates of a fixed y.
pub struct Conj {
    pows: [Vec<Elt>; 4],
}

impl Conj {
    pub fn new(f: &FieldSpec, y: Elt, max_exp: u8) -> Conj {
        let mut pows: [Vec<Elt>; 4] = Default::default();
        for (i, p) in pows.iter_mut().enumerate() {
            let yi = f.frob(y, i as i64);
            let mut v = vec![1];
            for e in 1..=max_exp.max(1) as usize {
                let prev = v[e - 1];
                v.push(f.mul(prev, yi));
            }
            *p = v;
        }
        Conj { pows }
    }

    #[inline]
    fn pow(&self, f: &FieldSpec, i: usize, e: u8) -> Elt {
        let v = &self.pows[i];
        if (e as usize) < v.len() {
            v[e as usize]
        } else {
            f.pow_u(v[1], e as u64)
        }
    }

    pub fn y(&self, i: usize) -> Elt {
        self.pows[i][1]
    }
}

/// Linearized in x with YPoly coefficients: entry j multiplies x^{q^j}.
pub type XLin = [YPoly; 4];

pub fn xlin_frob(f: &FieldSpec, x: &XLin, i: usize) -> XLin {
    let mut out: XLin = Default::default();
    for j in 0..4 {
        out[(j + i) % 4] = x[j].frob(f, i);
    }
    out
}

/// a·X + b·Z
pub fn xlin_comb(f: &FieldSpec, a: &YPoly, x: &XLin, b: &YPoly, z: &XLin) -> XLin {
    let mut out: XLin = Default::default();
    for j in 0..4 {
        out[j] = a.mul(f, &x[j]).add(f, &b.mul(f, &z[j]));
    }
    out
}
