//! Dense polynomials over a prime field F_p, used for modulus validation
//! and for the slow arithmetic path of large odd-characteristic fields.

pub(crate) type Poly = Vec<u64>;

pub(crate) fn trim(a: &mut Poly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, b, p);
        }
        b = mulm(b, b, p);
        e >>= 1;
    }
    r
}

#[inline]
fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn mul(a: &Poly, b: &Poly, p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulm(x, y, p)) % p;
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn rem(a: &Poly, f: &Poly, p: u64) -> Poly {
    let mut r = a.clone();
    trim(&mut r);
    let df = f.len() - 1;
    let lead_inv = inv_mod(f[df], p);
    while r.len() > df {
        let top = r.len() - 1;
        let c = mulm(r[top], lead_inv, p);
        let shift = top - df;
        for (i, &fc) in f.iter().enumerate() {
            let t = mulm(c, fc, p);
            r[shift + i] = (r[shift + i] + p - t) % p;
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn mul_mod(a: &Poly, b: &Poly, f: &Poly, p: u64) -> Poly {
    rem(&mul(a, b, p), f, p)
}

pub(crate) fn pow_poly_mod(base: &Poly, mut e: u64, f: &Poly, p: u64) -> Poly {
    let mut r: Poly = vec![1];
    let mut b = rem(base, f, p);
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(&r, &b, f, p);
        }
        e >>= 1;
        if e > 0 {
            b = mul_mod(&b, &b, f, p);
        }
    }
    r
}

fn sub(a: &Poly, b: &Poly, p: u64) -> Poly {
    let n = a.len().max(b.len());
    let mut out: Poly = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

fn gcd(a: &Poly, b: &Poly, p: u64) -> Poly {
    let mut x = a.clone();
    let mut y = b.clone();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// Irreducibility over F_p: gcd(x^{p^i} - x, f) = 1 for 0 < i < deg f and
/// x^{p^deg} = x mod f.
pub(crate) fn is_irreducible(f: &Poly, p: u64) -> bool {
    let d = f.len() - 1;
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let x: Poly = vec![0, 1];
    let mut h = x.clone();
    for i in 1..=d {
        h = pow_poly_mod(&h, p, f, p);
        if i < d {
            let g = gcd(&sub(&h, &x, p), f, p);
            if g.len() > 1 {
                return false;
            }
        }
    }
    h == x
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// True when x has multiplicative order p^d - 1 modulo the irreducible f.
pub(crate) fn x_is_primitive(f: &Poly, p: u64) -> bool {
    let d = (f.len() - 1) as u32;
    let order = p.pow(d) - 1;
    let x: Poly = vec![0, 1];
    if d == 1 {
        // x = -f0 is a constant; check its order in F_p^*.
        let c = (p - f[0] % p) % p;
        if c == 0 {
            return false;
        }
        return prime_factors(order)
            .iter()
            .all(|&l| pow_mod(c, order / l, p) != 1);
    }
    prime_factors(order)
        .iter()
        .all(|&l| pow_poly_mod(&x, order / l, f, p) != vec![1])
}

/// Smallest monic primitive polynomial of degree d, ordered by the integer
/// encoding of its lower coefficients.
pub(crate) fn find_primitive(p: u64, d: u32) -> Poly {
    let span = p.pow(d);
    for v in 1..span {
        let mut f: Poly = Vec::with_capacity(d as usize + 1);
        let mut t = v;
        for _ in 0..d {
            f.push(t % p);
            t /= p;
        }
        f.push(1);
        if f[0] == 0 {
            continue;
        }
        if is_irreducible(&f, p) && x_is_primitive(&f, p) {
            return f;
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_irreducibles() {
        assert!(is_irreducible(&vec![1, 1, 0, 0, 1], 2));
        assert!(!is_irreducible(&vec![1, 0, 0, 0, 1], 2));
        assert!(!is_irreducible(&vec![1, 0, 1], 2));
        assert!(is_irreducible(&vec![1, 0, 1], 3));
        // x^4+x^3+x^2+x+1 is irreducible but x has order 5
        let f = vec![1, 1, 1, 1, 1];
        assert!(is_irreducible(&f, 2));
        assert!(!x_is_primitive(&f, 2));
    }

    #[test]
    fn irreducible_count_matches_necklace_formula() {
        // number of monic irreducibles of degree 6 over F_2 is 9
        let count = (0..64u64)
            .filter(|v| {
                let mut f: Poly = (0..6).map(|i| (v >> i) & 1).collect();
                f.push(1);
                is_irreducible(&f, 2)
            })
            .count();
        assert_eq!(count, 9);
        // degree 4 over F_3: (3^4 - 3^2)/4 = 18
        let count = (0..81u64)
            .filter(|v| {
                let mut t = *v;
                let mut f: Poly = Vec::new();
                for _ in 0..4 {
                    f.push(t % 3);
                    t /= 3;
                }
                f.push(1);
                is_irreducible(&f, 3)
            })
            .count();
        assert_eq!(count, 18);
    }

    #[test]
    fn first_primitive() {
        assert_eq!(find_primitive(2, 4), vec![1, 1, 0, 0, 1]);
        assert_eq!(find_primitive(2, 3), vec![1, 1, 0, 1]);
        assert_eq!(find_primitive(3, 1), vec![1, 1]);
    }
}
