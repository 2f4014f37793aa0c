//! The appendix polynomials exactly as printed. Obvious typesetting slips
//! that have a single sensible reading (an unbalanced parenthesis, a stray
//! digit, a missing exponent) are read that way; everything else is kept
//! literally so that the comparison with the derived forms shows it.

use super::ypoly::{Mon, YPoly};
use super::{pw, ACoeffs, AppendixContext};
use crate::gf::{Elt, FieldSpec};

fn sum(f: &FieldSpec, xs: &[Elt]) -> Elt {
    xs.iter().fold(0, |acc, &x| f.add(acc, x))
}

fn prod(f: &FieldSpec, xs: &[Elt]) -> Elt {
    xs.iter().fold(1, |acc, &x| f.mul(acc, x))
}

pub struct Transcribed<'a> {
    ctx: &'a AppendixContext,
    c: Elt,
}

impl<'a> Transcribed<'a> {
    pub fn new(ctx: &'a AppendixContext, c: Elt) -> Transcribed<'a> {
        Transcribed { ctx, c }
    }

    fn f(&self) -> &FieldSpec {
        self.ctx.field()
    }

    fn cc(&self, e: [u32; 4]) -> Elt {
        pw(self.f(), self.c, e)
    }

    fn bb(&self, e: [u32; 4]) -> Elt {
        pw(self.f(), self.ctx.beta(), e)
    }

    fn aa(&self, k: u64) -> Elt {
        self.f().pow_u(self.ctx.alpha(), k)
    }

    fn s(&self, xs: &[Elt]) -> Elt {
        sum(self.f(), xs)
    }

    fn p(&self, xs: &[Elt]) -> Elt {
        prod(self.f(), xs)
    }

    fn poly(&self, terms: &[(Mon, Elt)]) -> YPoly {
        YPoly::from_terms(self.f(), terms.iter().copied())
    }

    pub fn f_poly(&self) -> Elt {
        let (c, b, a) = (|e| self.cc(e), |e| self.bb(e), |k| self.aa(k));
        let al = self.ctx.alpha();
        self.s(&[
            self.p(&[a(3), b([0, 0, 0, 1]), c([1, 1, 1, 0])]),
            self.p(&[al, b([0, 0, 1, 0]), c([1, 1, 0, 1])]),
            self.p(&[al, b([1, 0, 0, 0]), c([0, 1, 1, 1])]),
            self.p(&[a(3), b([0, 1, 0, 0]), c([1, 0, 1, 1])]),
            self.p(&[self.s(&[a(3), self.p(&[a(2), b([0, 0, 1, 1])])]), c([1, 1, 0, 0])]),
            self.p(&[a(4), b([0, 1, 0, 1]), c([1, 0, 1, 0])]),
            self.p(&[self.s(&[self.p(&[a(2), b([0, 1, 1, 0])]), al]), c([1, 0, 0, 1])]),
            self.p(&[self.s(&[a(3), self.p(&[a(2), b([1, 1, 0, 0])])]), c([0, 0, 1, 1])]),
            self.p(&[self.s(&[self.p(&[a(2), b([1, 0, 0, 1])]), al]), c([0, 1, 1, 0])]),
            self.p(&[b([1, 0, 1, 0]), c([0, 1, 0, 1])]),
            self.p(&[self.s(&[self.p(&[a(3), b([0, 1, 1, 1])]), self.p(&[a(2), b([0, 0, 0, 1])])]), c([1, 0, 0, 0])]),
            self.p(&[self.s(&[self.p(&[a(2), b([1, 0, 0, 0])]), self.p(&[al, b([1, 0, 1, 1])])]), c([0, 1, 0, 0])]),
            self.p(&[self.s(&[self.p(&[a(3), b([1, 1, 0, 1])]), self.p(&[a(2), b([0, 1, 0, 0])])]), c([0, 0, 1, 0])]),
            self.p(&[self.s(&[self.p(&[a(2), b([0, 0, 1, 0])]), self.p(&[al, b([0, 1, 1, 1])])]), c([0, 0, 0, 1])]),
            self.p(&[a(2), b([1, 1, 1, 1])]),
        ])
    }

    /// The three cofactors X₁, X₂, X₃ shared by the a-coefficients.
    pub fn x_factors(&self) -> [Elt; 3] {
        let (c, b, a) = (|e| self.cc(e), |e| self.bb(e), |k| self.aa(k));
        let al = self.ctx.alpha();
        let x1 = self.s(&[
            self.p(&[c([1, 0, 0, 1]), al]),
            self.p(&[c([1, 0, 0, 0]), a(2), b([0, 0, 0, 1])]),
            self.p(&[c([0, 0, 1, 1]), al]),
            self.p(&[c([0, 0, 0, 1]), b([1, 0, 0, 0])]),
            self.p(&[al, b([1, 0, 0, 1])]),
        ]);
        let x2 = self.s(&[
            self.p(&[c([1, 1, 0, 0]), al]),
            self.p(&[c([1, 0, 0, 1]), al]),
            self.p(&[c([1, 0, 0, 0]), a(2), b([0, 1, 0, 0])]),
            self.p(&[c([0, 1, 0, 0]), b([1, 0, 0, 0])]),
            self.p(&[al, b([1, 1, 0, 0])]),
        ]);
        let x3 = self.s(&[
            self.p(&[c([1, 1, 0, 0]), al]),
            self.p(&[c([0, 1, 1, 0]), al]),
            self.p(&[c([0, 1, 0, 0]), b([0, 0, 1, 0])]),
            self.p(&[c([0, 0, 1, 0]), a(2), b([0, 1, 0, 0])]),
            self.p(&[al, b([0, 1, 1, 0])]),
        ]);
        [x1, x2, x3]
    }

    pub fn a_coeffs(&self) -> ACoeffs {
        let (c, b, a) = (|e| self.cc(e), |e| self.bb(e), |k| self.aa(k));
        let al = self.ctx.alpha();
        let fv = self.f_poly();
        let [x1, x2, x3] = self.x_factors();
        ACoeffs {
            a00: self.p(&[al, self.s(&[c([0, 1, 1, 0]), self.p(&[c([0, 0, 1, 0]), al, b([0, 1, 0, 0])]), al]), x1, x2]),
            a01: self.p(&[self.s(&[c([0, 1, 0, 0]), self.p(&[al, b([0, 1, 0, 0])])]), x1, fv]),
            a02: self.p(&[
                self.s(&[
                    self.p(&[c([0, 1, 0, 1]), a(2)]),
                    c([0, 1, 0, 1]),
                    self.p(&[c([0, 1, 0, 0]), al, b([0, 0, 0, 1])]),
                    self.p(&[c([0, 0, 0, 1]), al, b([0, 1, 0, 0])]),
                    self.p(&[a(2), b([0, 1, 0, 1])]),
                ]),
                x1,
                x3,
            ]),
            a10: self.p(&[al, x2, fv]),
            a11: self.p(&[al, c([0, 0, 0, 1]), x3, fv]),
            a20: self.p(&[a(2), self.s(&[self.p(&[c([0, 0, 1, 1]), al]), self.p(&[c([0, 0, 0, 1]), b([0, 0, 1, 0])]), 1]), x3, x2]),
        }
    }

    pub fn d_poly(&self) -> Elt {
        let f = self.f();
        let (b, a) = (|e| self.bb(e), |k| self.aa(k));
        let (al, be, c) = (self.ctx.alpha(), self.ctx.beta(), self.c);
        let cp = |k| f.pow_u(c, k);
        let a1 = f.add(al, 1);
        let inner = self.s(&[
            self.p(&[f.add(a(4), 1), cp(4)]),
            self.p(&[al, f.mul(a1, a1), f.trace(be), cp(3)]),
            self.p(&[self.s(&[self.p(&[a(4), b([0, 1, 0, 1])]), self.p(&[a(2), f.trace(b([1, 1, 0, 0]))]), b([1, 0, 1, 0])]), cp(2)]),
            self.p(&[
                al,
                self.s(&[
                    self.p(&[a(2), f.add(b([1, 1, 0, 1]), b([0, 1, 1, 1]))]),
                    self.p(&[al, f.trace(be)]),
                    b([1, 1, 1, 0]),
                    b([1, 0, 1, 1]),
                ]),
                c,
            ]),
            self.p(&[a(2), f.add(f.norm(be), 1)]),
        ]);
        f.mul(inner, inner)
    }

    pub fn g_poly(&self) -> Elt {
        let f = self.f();
        let (c, b, a) = (|e| self.cc(e), |e| self.bb(e), |k| self.aa(k));
        let (al, be) = (self.ctx.alpha(), self.ctx.beta());
        let x2 = self.x_factors()[1];
        let g1 = f.norm(x2);
        let a321 = self.s(&[a(3), a(2), al]);
        let g2 = self.s(&[
            self.p(&[f.add(al, 1), c([1, 1, 1, 1])]),
            self.p(&[a321, b([0, 0, 0, 1]), c([1, 1, 1, 0])]),
            self.p(&[al, b([0, 0, 1, 0]), c([1, 1, 0, 1])]),
            self.p(&[self.s(&[a(3), self.p(&[a(2), b([0, 0, 1, 1])])]), c([1, 1, 0, 0])]),
            self.p(&[b([0, 1, 0, 0]), a321, c([1, 0, 1, 1])]),
            self.p(&[self.s(&[a(4), a(3), a(2)]), b([0, 1, 0, 1]), c([1, 0, 1, 0])]),
            self.p(&[f.add(b([0, 1, 1, 0]), 1), a(2), c([1, 0, 0, 1])]),
            self.p(&[a(3), f.add(b([0, 1, 1, 1]), b([0, 0, 0, 1])), c([1, 0, 0, 0])]),
            self.p(&[al, b([1, 0, 0, 0]), c([0, 1, 1, 1])]),
            self.p(&[a(2), f.add(b([1, 0, 0, 1]), 1), c([0, 1, 1, 0])]),
            self.p(&[b([1, 0, 1, 0]), c([0, 1, 0, 1])]),
            self.p(&[self.s(&[self.p(&[a(2), b([1, 0, 0, 0])]), self.p(&[al, b([1, 0, 1, 1])])]), c([0, 1, 0, 0])]),
            self.p(&[self.s(&[a(3), self.p(&[a(2), b([1, 1, 0, 0])])]), c([0, 0, 1, 1])]),
            self.p(&[a(3), f.add(b([1, 1, 0, 1]), b([0, 1, 0, 0])), c([0, 0, 1, 0])]),
            self.p(&[self.s(&[self.p(&[a(2), b([0, 0, 1, 0])]), self.p(&[al, b([0, 1, 1, 1])])]), c([0, 0, 0, 1])]),
            a(3),
            self.p(&[a(2), b([1, 1, 1, 1])]),
            a(2),
        ]);
        let g3 = self.s(&[
            self.p(&[f.add(a(4), a(2)), c([1, 1, 1, 1])]),
            self.p(&[a(3), f.trace(f.mul(b([0, 0, 0, 1]), c([1, 1, 1, 0])))]),
            self.p(&[self.s(&[self.p(&[a(2), b([0, 0, 1, 1])]), al]), c([1, 1, 0, 0])]),
            self.p(&[a(4), b([0, 1, 0, 1]), c([1, 0, 1, 0])]),
            self.p(&[a(2), b([1, 0, 1, 0]), c([0, 1, 0, 1])]),
            self.p(&[self.s(&[self.p(&[a(2), b([0, 1, 1, 0])]), al]), c([1, 0, 0, 1])]),
            self.p(&[self.s(&[self.p(&[a(2), b([1, 0, 0, 1])]), al]), c([0, 1, 1, 0])]),
            self.p(&[self.s(&[self.p(&[a(2), b([1, 1, 0, 0])]), al]), c([0, 0, 1, 1])]),
            self.p(&[self.s(&[self.p(&[a(3), b([0, 1, 1, 1])]), self.p(&[a(2), b([0, 0, 0, 1])])]), c([1, 0, 0, 0])]),
            self.p(&[self.s(&[self.p(&[al, b([1, 0, 1, 1])]), be]), c([0, 1, 0, 0])]),
            self.p(&[self.s(&[self.p(&[a(3), b([1, 1, 0, 1])]), self.p(&[a(2), b([0, 1, 0, 0])])]), c([0, 0, 1, 0])]),
            self.p(&[self.s(&[self.p(&[al, b([1, 1, 1, 0])]), b([0, 0, 1, 0])]), c([0, 0, 0, 1])]),
            self.p(&[a(2), b([1, 1, 1, 1])]),
            a(2),
            1,
        ]);
        self.p(&[g1, g2, g3])
    }

    /// Multipliers of F₀ in G₁, G₂, G₃ as printed.
    pub fn multipliers(&self) -> [YPoly; 3] {
        let c = |e| self.cc(e);
        let b = |e| self.bb(e);
        let a2 = self.aa(2);
        [
            YPoly::var(1, self.s(&[c([0, 2, 0, 0]), self.p(&[a2, b([0, 2, 0, 0])])])),
            YPoly::var(2, 1),
            YPoly::var(3, self.p(&[c([0, 0, 0, 2]), a2])),
        ]
    }

    pub fn u(&self) -> YPoly {
        let (c, b, a) = (|e| self.cc(e), |e| self.bb(e), |k| self.aa(k));
        self.poly(&[
            ([1, 0, 1, 0], c([2, 0, 0, 0])),
            ([0, 1, 1, 0], self.s(&[self.p(&[a(2), c([2, 0, 2, 0])]), self.p(&[b([0, 0, 2, 0]), c([2, 0, 0, 0])])])),
            ([0, 0, 2, 0], self.s(&[self.p(&[a(2), c([0, 0, 2, 0])]), b([0, 0, 2, 0])])),
            (
                [0, 0, 1, 1],
                self.s(&[
                    self.p(&[a(4), c([0, 0, 2, 0])]),
                    self.p(&[a(2), b([0, 0, 2, 0]), c([2, 0, 0, 0])]),
                    self.p(&[a(2), b([2, 0, 0, 0]), c([0, 0, 2, 0])]),
                    b([2, 0, 2, 0]),
                ]),
            ),
        ])
    }

    /// The printed "C^{2+2q}2α²" is read as C^{2q+2}α².
    pub fn v(&self) -> YPoly {
        let (c, b, a) = (|e| self.cc(e), |e| self.bb(e), |k| self.aa(k));
        self.poly(&[
            ([1, 0, 1, 0], self.s(&[c([0, 2, 0, 0]), self.p(&[a(2), b([0, 2, 0, 0])])])),
            (
                [1, 0, 0, 1],
                self.s(&[
                    self.p(&[c([2, 2, 0, 0]), a(2)]),
                    self.p(&[c([2, 0, 0, 0]), a(4), b([0, 2, 0, 0])]),
                    self.p(&[c([0, 2, 0, 0]), b([2, 0, 0, 0])]),
                    self.p(&[a(2), b([2, 2, 0, 0])]),
                ]),
            ),
            ([0, 1, 1, 0], self.p(&[c([2, 2, 0, 0]), a(2)])),
            ([0, 1, 0, 1], self.p(&[c([2, 0, 0, 0]), a(2)])),
            ([0, 0, 2, 0], self.p(&[c([0, 2, 0, 0]), a(2)])),
            (
                [0, 0, 1, 1],
                self.s(&[self.p(&[c([2, 2, 0, 0]), a(4)]), self.p(&[c([0, 2, 0, 0]), a(2), b([2, 0, 0, 0])]), a(2)]),
            ),
            ([0, 0, 0, 2], self.s(&[self.p(&[c([2, 0, 0, 0]), a(4)]), self.p(&[a(2), b([2, 0, 0, 0])])])),
        ])
    }

    pub fn w(&self) -> YPoly {
        let (c, b, a) = (|e| self.cc(e), |e| self.bb(e), |k| self.aa(k));
        let a2 = a(2);
        self.poly(&[
            ([1, 0, 0, 1], self.p(&[a2, c([2, 0, 0, 2])])),
            ([0, 1, 0, 1], self.p(&[a2, c([2, 0, 0, 0])])),
            ([0, 0, 1, 1], a2),
            ([0, 0, 0, 2], self.p(&[a2, self.s(&[self.p(&[c([2, 0, 0, 0]), a2]), b([2, 0, 0, 0])])])),
        ])
    }

    /// The printed "C{2q^2+2}" is read as C^{2q²+2}.
    pub fn l1(&self) -> YPoly {
        let (c, b, a) = (|e| self.cc(e), |e| self.bb(e), |k| self.aa(k));
        let (a2, b2, c2) = (a(2), b([2, 0, 0, 0]), c([2, 0, 0, 0]));
        self.poly(&[
            ([2, 0, 0, 0], self.s(&[self.p(&[c([2, 2, 0, 0]), a2]), self.p(&[c2, a(4), b([0, 2, 0, 0])]), self.p(&[c([0, 2, 0, 0]), b2]), self.p(&[a2, b([2, 2, 0, 0])])])),
            (
                [1, 1, 0, 0],
                self.s(&[
                    self.p(&[c([2, 2, 2, 0]), a(4)]),
                    self.p(&[c([2, 2, 0, 0]), a2, b([0, 0, 2, 0])]),
                    self.p(&[c([2, 0, 2, 0]), a(6), b([0, 2, 0, 0])]),
                    self.p(&[c2, a(4), b([0, 2, 2, 0])]),
                    self.p(&[c2, a2]),
                    self.p(&[c([0, 2, 2, 0]), a2, b2]),
                    self.p(&[c([0, 2, 0, 0]), b([2, 0, 2, 0])]),
                    self.p(&[c([0, 0, 2, 0]), a(4), b([2, 2, 0, 0])]),
                    self.p(&[a2, b([2, 2, 2, 0])]),
                ]),
            ),
            ([1, 0, 1, 0], self.s(&[self.p(&[c([2, 2, 0, 0]), a(4)]), c([2, 0, 2, 0]), self.p(&[c([0, 2, 0, 0]), a2, b2]), self.p(&[c([0, 0, 2, 0]), a2, b([0, 2, 0, 0])])])),
            (
                [1, 0, 0, 1],
                self.s(&[
                    self.p(&[c([2, 2, 2, 0]), a2]),
                    self.p(&[c([2, 0, 2, 0]), a(4), b([0, 2, 0, 0])]),
                    self.p(&[c2, a(4)]),
                    self.p(&[c([0, 2, 2, 0]), b2]),
                    self.p(&[c([0, 0, 2, 0]), a2, b([2, 2, 0, 0])]),
                    self.p(&[a2, b2]),
                ]),
            ),
            ([0, 2, 0, 0], self.s(&[self.p(&[c([2, 2, 0, 0]), a(4)]), self.p(&[c2, a2, b([0, 0, 2, 0])])])),
            ([0, 1, 1, 0], self.s(&[self.p(&[c([2, 2, 2, 0]), a2]), self.p(&[c([0, 0, 2, 0]), a(4)]), self.p(&[a2, b([0, 0, 2, 0])])])),
            (
                [0, 1, 0, 1],
                self.s(&[
                    self.p(&[c([2, 0, 2, 0]), a(6)]),
                    self.p(&[c([2, 0, 2, 0]), a2]),
                    self.p(&[c2, a(4), b([0, 0, 2, 0])]),
                    self.p(&[c([0, 0, 2, 0]), a(4), b2]),
                    self.p(&[a2, b([2, 0, 2, 0])]),
                ]),
            ),
            ([0, 0, 2, 0], self.p(&[c([0, 2, 2, 0]), a2])),
            ([0, 0, 1, 1], self.s(&[self.p(&[c([2, 2, 2, 0]), a(4)]), self.p(&[c([0, 2, 2, 0]), a2, b2]), self.p(&[c([0, 0, 2, 0]), a2])])),
            ([0, 0, 0, 2], self.s(&[self.p(&[c([2, 0, 2, 0]), a(4)]), self.p(&[c([0, 0, 2, 0]), a2, b2])])),
        ])
    }

    /// Read literally, including the two monomials printed as y^{q³+q²}
    /// and the lone y^{q²}.
    pub fn l2(&self) -> YPoly {
        let (c, b, a) = (|e| self.cc(e), |e| self.bb(e), |k| self.aa(k));
        let (a2, b2, c2) = (a(2), b([2, 0, 0, 0]), c([2, 0, 0, 0]));
        self.poly(&[
            ([2, 0, 0, 0], self.s(&[self.p(&[c([0, 0, 2, 2]), a2]), self.p(&[c([0, 0, 0, 2]), a(4), b([0, 2, 0, 0])])])),
            ([1, 1, 0, 0], self.s(&[self.p(&[c([2, 0, 2, 2]), a(4)]), self.p(&[c([0, 2, 0, 0]), a2]), self.p(&[a(4), b([0, 2, 0, 0])])])),
            (
                [1, 0, 1, 0],
                self.s(&[
                    self.p(&[c([0, 2, 0, 2]), a(4)]),
                    c([0, 2, 0, 2]),
                    self.p(&[c([0, 2, 0, 0]), a2, b([0, 0, 0, 2])]),
                    self.p(&[c([0, 0, 0, 2]), a2, b([0, 2, 0, 0])]),
                    self.p(&[a(4), b([0, 2, 0, 2])]),
                ]),
            ),
            (
                [1, 0, 0, 1],
                self.s(&[
                    self.p(&[c([2, 2, 0, 2]), a2]),
                    self.p(&[c([2, 2, 0, 0]), a(4), b([0, 0, 0, 2])]),
                    self.p(&[c([2, 0, 0, 2]), a(4), b([0, 2, 0, 0])]),
                    self.p(&[c2, a(6), b([0, 2, 0, 2])]),
                    self.p(&[c([0, 2, 0, 2]), b2]),
                    self.p(&[c([0, 2, 0, 0]), a2, b([2, 0, 0, 2])]),
                    self.p(&[c([0, 0, 0, 2]), a(4)]),
                    self.p(&[c([0, 0, 0, 2]), a2, b([2, 2, 0, 0])]),
                    self.p(&[a(4), b([2, 2, 0, 2])]),
                ]),
            ),
            ([0, 2, 0, 0], self.p(&[c([2, 2, 0, 0]), a(4)])),
            ([0, 1, 1, 0], self.s(&[self.p(&[c([2, 2, 0, 2]), a2]), self.p(&[c([2, 2, 0, 0]), a(4), b([0, 0, 0, 2])]), self.p(&[c([0, 2, 0, 0]), a(4)])])),
            ([0, 0, 1, 1], self.s(&[self.p(&[c([2, 2, 0, 0]), a(6)]), self.p(&[c([2, 0, 0, 2]), a2]), self.p(&[c2, a(4), b([0, 0, 0, 2])]), self.p(&[c([0, 2, 0, 0]), a(4), b2])])),
            ([0, 0, 1, 0], self.s(&[self.p(&[c([0, 2, 0, 2]), a2]), self.p(&[c([0, 2, 0, 0]), a(4), b([0, 0, 0, 2])])])),
            (
                [0, 0, 1, 1],
                self.s(&[
                    self.p(&[c([2, 2, 0, 2]), a(4)]),
                    self.p(&[c([2, 2, 0, 0]), a(6), b([0, 0, 0, 2])]),
                    self.p(&[c([0, 2, 0, 2]), a2, b2]),
                    self.p(&[c([0, 2, 0, 0]), a(4), b([2, 0, 0, 2])]),
                    self.p(&[c([0, 0, 0, 2]), a2]),
                    self.p(&[a(4), b([0, 0, 0, 2])]),
                ]),
            ),
            ([0, 0, 0, 2], self.s(&[self.p(&[c([2, 0, 0, 2]), a(4)]), self.p(&[c2, a(6), b([0, 0, 0, 2])]), self.p(&[c([0, 0, 0, 2]), a2, b2]), self.p(&[a(4), b([2, 0, 0, 2])])])),
        ])
    }

    /// K = C²y^q + y^{q²} + (C²α² + β²)y^{q³}.
    fn k_poly(&self) -> YPoly {
        let c2 = self.cc([2, 0, 0, 0]);
        let e = self.s(&[self.p(&[c2, self.aa(2)]), self.bb([2, 0, 0, 0])]);
        self.poly(&[([0, 1, 0, 0], c2), ([0, 0, 1, 0], 1), ([0, 0, 0, 1], e)])
    }

    pub fn big_u(&self) -> YPoly {
        let (c, b, a) = (|e| self.cc(e), |e| self.bb(e), |k| self.aa(k));
        let inner = self.poly(&[
            ([0, 1, 0, 0], self.s(&[self.p(&[c([2, 2, 0, 0]), a(4)]), self.p(&[c([0, 2, 0, 0]), a(2), b([2, 0, 0, 0])]), self.p(&[c([0, 0, 2, 2]), a(4)]), self.p(&[c([0, 0, 0, 2]), a(2), b([0, 0, 2, 0])])])),
            (
                [0, 0, 1, 0],
                self.s(&[
                    self.p(&[c([2, 2, 0, 2]), a(2)]),
                    self.p(&[c([2, 2, 0, 0]), a(4), b([0, 0, 0, 2])]),
                    self.p(&[c([0, 2, 2, 2]), a(2)]),
                    self.p(&[c([0, 2, 0, 2]), b([2, 0, 0, 0])]),
                    self.p(&[c([0, 2, 0, 0]), a(2), b([2, 0, 0, 2])]),
                ]),
            ),
            (
                [0, 0, 0, 1],
                self.s(&[
                    self.p(&[c([2, 0, 0, 2]), a(2)]),
                    self.p(&[c([2, 0, 0, 0]), a(4), b([0, 0, 0, 2])]),
                    self.p(&[c([0, 0, 2, 2]), a(2)]),
                    self.p(&[c([0, 0, 0, 2]), b([2, 0, 0, 0])]),
                    self.p(&[a(2), b([2, 0, 0, 2])]),
                ]),
            ),
        ]);
        self.k_poly().mul(self.f(), &inner).scale(self.f(), a(2))
    }

    pub fn big_v(&self) -> YPoly {
        let (c, b, a) = (|e| self.cc(e), |e| self.bb(e), |k| self.aa(k));
        self.poly(&[
            (
                [0, 1, 0, 0],
                self.s(&[
                    self.p(&[c([4, 2, 0, 2]), a(6)]),
                    self.p(&[c([2, 2, 0, 0]), c([0, 0, 2, 2]), a(6)]),
                    self.p(&[c([2, 2, 0, 2]), a(4), b([2, 0, 0, 0])]),
                    self.p(&[c([2, 2, 0, 2]), a(4), b([0, 0, 2, 0])]),
                    self.p(&[c([2, 2, 0, 0]), a(4)]),
                    self.p(&[c([2, 0, 2, 2]), a(8), b([0, 2, 0, 0])]),
                    self.p(&[c([2, 0, 0, 2]), a(6), b([0, 2, 2, 0])]),
                    self.p(&[c([2, 0, 0, 2]), a(4)]),
                    self.p(&[c([2, 0, 0, 0]), a(6), b([0, 2, 0, 0])]),
                    self.p(&[c([0, 2, 2, 2]), a(4), b([2, 0, 0, 0])]),
                    self.p(&[c([0, 2, 0, 2]), a(2), b([2, 0, 2, 0])]),
                    self.p(&[c([0, 2, 0, 0]), a(2), b([2, 0, 0, 0])]),
                    self.p(&[c([0, 0, 2, 2]), a(6), b([2, 2, 0, 0])]),
                    self.p(&[c([0, 0, 0, 2]), a(4), b([2, 2, 2, 0])]),
                    self.p(&[a(4), b([2, 2, 0, 0])]),
                ]),
            ),
            (
                [0, 0, 1, 0],
                self.s(&[
                    self.p(&[c([2, 2, 0, 2]), a(2)]),
                    self.p(&[c([2, 2, 0, 0]), a(4), b([0, 0, 0, 2])]),
                    self.p(&[c([2, 0, 0, 2]), a(4), b([0, 2, 0, 0])]),
                    self.p(&[c([2, 0, 0, 0]), a(6), b([0, 2, 0, 2])]),
                    self.p(&[c([0, 2, 2, 2]), a(2)]),
                    self.p(&[c([0, 2, 0, 2]), b([2, 0, 0, 0])]),
                    self.p(&[c([0, 2, 0, 0]), a(2), b([2, 0, 0, 2])]),
                    self.p(&[c([0, 0, 2, 2]), a(4), b([0, 2, 0, 0])]),
                    self.p(&[c([0, 0, 0, 2]), a(2), b([2, 2, 0, 0])]),
                    self.p(&[a(4), b([2, 2, 0, 2])]),
                ]),
            ),
            (
                [0, 0, 0, 1],
                self.s(&[
                    self.p(&[c([4, 2, 0, 2]), a(4)]),
                    self.p(&[c([4, 2, 0, 0]), a(6), b([0, 0, 0, 2])]),
                    self.p(&[c([4, 0, 0, 2]), a(6), b([0, 2, 0, 0])]),
                    self.p(&[c([4, 0, 0, 0]), a(8), b([0, 2, 0, 2])]),
                    self.p(&[c([2, 2, 2, 2]), a(4)]),
                    self.p(&[c([2, 0, 2, 2]), a(6), b([0, 2, 0, 0])]),
                    self.p(&[c([0, 2, 2, 2]), a(2), b([2, 0, 0, 0])]),
                    self.p(&[c([0, 2, 0, 2]), b([4, 0, 0, 0])]),
                    self.p(&[c([0, 2, 0, 0]), a(2), b([4, 0, 0, 2])]),
                    self.p(&[c([0, 0, 2, 2]), a(4), b([2, 2, 0, 0])]),
                    self.p(&[c([0, 0, 0, 2]), a(2), b([4, 2, 0, 0])]),
                    self.p(&[a(4), b([4, 2, 0, 2])]),
                ]),
            ),
        ])
    }

    /// M(y) assembled from the printed a-coefficients.
    pub fn m(&self) -> YPoly {
        let a = self.a_coeffs();
        let f = self.f();
        YPoly::from_terms(
            f,
            ACoeffs::MONOMIALS.iter().map(|(n, mon)| {
                let x = a.get(n).unwrap();
                (*mon, f.mul(x, x))
            }),
        )
    }
}

/// r₀(z) for β ∈ F_q.
pub fn r0(f: &FieldSpec, beta: Elt, z: Elt) -> Elt {
    let b = |k| f.pow_u(beta, k);
    let z2 = f.mul(z, z);
    prod(
        f,
        &[
            f.sub(f.pow_u(z, 4), z),
            f.sub(z, beta),
            sum(f, &[z2, f.mul(z, b(2)), f.mul(z, beta), 1]),
            sum(f, &[z2, f.mul(z, b(3)), f.mul(z, b(2)), f.mul(z, beta), b(3), b(2), 1]),
            sum(f, &[f.mul(z, b(3)), beta, 1]),
        ],
    )
}

/// h₁..h₄ of the second β-family. "hg_3" in the filter is h₃, h₃'s missing
/// closing parenthesis goes at the end, and "β^{q^+q+1}" in h₄ is β^{q²+q+1}.
pub fn h(f: &FieldSpec, beta: Elt, i: usize, z: Elt) -> Elt {
    let b = |e: [u32; 4]| pw(f, beta, e);
    let zp = |k| f.pow_u(z, k);
    let poly = |cs: &[Elt]| cs.iter().enumerate().fold(0, |acc, (k, &c)| f.add(acc, f.mul(c, zp(k as u64))));
    match i {
        1 => {
            let t = f.add(beta, b([0, 0, 0, 1]));
            prod(f, &[b([1, 1, 0, 0]), z, f.add(z, 1), sum(f, &[zp(2), f.mul(t, z), t])])
        }
        2 => poly(&[
            sum(f, &[b([2, 1, 1, 0]), b([1, 2, 0, 1]), b([1, 1, 1, 0]), b([0, 2, 0, 1])]),
            sum(f, &[b([2, 1, 1, 0]), b([2, 1, 0, 0]), b([1, 2, 1, 0]), b([1, 1, 0, 1]), b([1, 0, 1, 0]), b([0, 1, 0, 1]), b([0, 1, 0, 0]), b([0, 0, 1, 0])]),
            sum(f, &[b([2, 1, 1, 0]), b([1, 2, 0, 1]), b([1, 2, 0, 0]), b([1, 1, 0, 0]), b([0, 2, 0, 1]), b([0, 2, 0, 0]), b([0, 1, 1, 0]), b([0, 1, 0, 1]), b([0, 1, 0, 0]), b([0, 0, 1, 0])]),
            sum(
                f,
                &[
                    b([2, 1, 1, 0]), b([2, 1, 0, 0]), b([1, 2, 1, 0]), b([1, 2, 0, 0]), b([1, 1, 0, 1]), b([1, 0, 1, 0]), beta,
                    b([0, 0, 1, 0]), b([0, 1, 1, 0]), b([0, 1, 0, 0]), b([0, 0, 1, 0]), b([0, 0, 0, 1]), 1,
                ],
            ),
            sum(f, &[b([1, 1, 1, 0]), b([1, 1, 0, 0]), beta, b([0, 0, 1, 0]), b([0, 0, 0, 1])]),
            1,
        ]),
        3 => {
            let inner = poly(&[
                sum(f, &[b([1, 1, 1, 0]), b([1, 0, 2, 0]), b([0, 2, 1, 1]), b([0, 1, 1, 1])]),
                sum(f, &[b([1, 1, 1, 0]), b([1, 0, 1, 0]), b([0, 2, 1, 1]), b([0, 2, 1, 0]), b([0, 1, 2, 1]), b([0, 1, 0, 1]), b([0, 0, 1, 0]), b([0, 0, 0, 1])]),
                sum(f, &[b([1, 1, 1, 0]), b([1, 0, 2, 0]), b([1, 0, 1, 0]), b([0, 2, 1, 1]), b([0, 1, 2, 0]), b([0, 1, 1, 0]), b([0, 0, 2, 0]), b([0, 0, 1, 1]), b([0, 0, 1, 0]), b([0, 0, 0, 1])]),
                sum(
                    f,
                    &[
                        b([1, 1, 1, 0]), beta, b([0, 2, 1, 1]), b([0, 2, 1, 0]), b([0, 1, 2, 1]), b([0, 1, 2, 0]), b([0, 1, 0, 1]),
                        b([0, 1, 0, 0]), b([0, 0, 2, 0]), b([0, 0, 1, 1]), b([0, 0, 1, 0]), b([0, 0, 0, 1]), 1,
                    ],
                ),
                sum(f, &[beta, b([0, 1, 1, 1]), b([0, 1, 1, 0]), b([0, 1, 0, 0]), b([0, 0, 0, 1])]),
                1,
            ]);
            prod(f, &[beta, f.add(z, 1), inner])
        }
        4 => {
            let b1 = b([1, 1, 0, 0]);
            poly(&[
                f.trace(b1),
                f.trace(beta),
                sum(f, &[f.trace(b([1, 1, 1, 0])), b([1, 0, 1, 0]), b([0, 1, 0, 1])]),
                f.trace(f.add(beta, b1)),
            ])
        }
        _ => panic!("h index {i} outside 1..=4"),
    }
}

/// The Δ₁ filter product.
pub fn delta1_filter(f: &FieldSpec, beta: Elt, z: Elt) -> Elt {
    let b = |e: [u32; 4]| pw(f, beta, e);
    let z2 = f.mul(z, z);
    let mut acc = prod(
        f,
        &[
            z,
            f.add(z, 1),
            sum(f, &[f.mul(z, b([1, 0, 1, 0])), beta, b([0, 0, 1, 0])]),
            sum(f, &[z2, f.mul(z, b([0, 1, 1, 0])), f.mul(z, b([0, 0, 1, 0])), b([0, 1, 0, 0]), b([0, 0, 1, 0]), 1]),
        ],
    );
    for i in 1..=4 {
        acc = f.mul(acc, h(f, beta, i, z));
    }
    acc
}
