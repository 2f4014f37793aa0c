//! q-linearized polynomials Σ c_i x^{q^i} over F_{q^m}.

use crate::gf::{Elt, FieldSpec};
use crate::linalg::{FpBasis, Mat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinPoly {
    field: FieldSpec,
    coeffs: Vec<Elt>,
}

impl LinPoly {
    /// Missing coefficients are zero; extra ones are an error of the caller
    /// and get truncated to m.
    pub fn new(field: &FieldSpec, coeffs: &[Elt]) -> LinPoly {
        let m = field.m() as usize;
        let mut c = coeffs.to_vec();
        c.resize(m, 0);
        LinPoly { field: field.clone(), coeffs: c }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elt] {
        &self.coeffs
    }

    pub fn eval(&self, x: Elt) -> Elt {
        let f = &self.field;
        let mut acc = 0;
        let mut xi = x;
        for &c in &self.coeffs {
            acc = f.add(acc, f.mul(c, xi));
            xi = f.frob(xi, 1);
        }
        acc
    }

    /// F_q-dimension of the kernel.
    pub fn kernel_dim(&self) -> usize {
        let f = &self.field;
        let n = f.degree();
        let mut img = FpBasis::new(f, 1);
        for i in 0..n {
            img.insert(&[self.eval(f.monomial(i))]);
        }
        (n as usize - img.rank()) / f.a() as usize
    }

    /// Entry (i, j) is c_{(j-i) mod m}^{q^i}.
    pub fn dickson_matrix(&self) -> Mat {
        let f = &self.field;
        let m = self.coeffs.len();
        let rows: Vec<Vec<Elt>> = (0..m)
            .map(|i| (0..m).map(|j| f.frob(self.coeffs[(j + m - i) % m], i as i64)).collect())
            .collect();
        Mat::from_rows(m, &rows)
    }

    pub fn dickson_det(&self) -> Elt {
        self.dickson_matrix().det(&self.field)
    }

    pub fn is_bijective(&self) -> bool {
        self.kernel_dim() == 0
    }
}
