//! Lower and upper bounds on s_{q^m/q}(k, ρ) and the table of known values.

use crate::error::{Error, Result};
use crate::gf::poly::prime_factors;

fn check_rho(m: u32, k: u32, rho: u32) -> Result<()> {
    if rho == 0 || rho > k.min(m) {
        return Err(Error::InvalidRho { rho, k, m });
    }
    Ok(())
}

fn div_ceil(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

/// Smallest rank a (ρ-1)-saturating linear set of PG(k-1, q^m) can have.
pub fn lower_bound(q: u64, m: u32, k: u32, rho: u32) -> Result<u64> {
    check_rho(m, k, rho)?;
    let (m, k, r) = (m as u64, k as u64, rho as u64);
    Ok(if q > 2 {
        div_ceil(m * k, r) - m + r
    } else if rho > 1 {
        div_ceil(m * k - 1, r) - m + r
    } else {
        m * (k - 1) + 1
    })
}

pub fn upper_bound(m: u32, k: u32, rho: u32) -> Result<u64> {
    check_rho(m, k, rho)?;
    Ok(m as u64 * (k - rho) as u64 + rho as u64)
}

/// Known value or range of s_{q^m/q}(k, ρ).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnownValue {
    pub lo: u64,
    pub hi: u64,
    /// Every table row that applied.
    pub sources: Vec<&'static str>,
}

impl KnownValue {
    pub fn exact(&self) -> Option<u64> {
        (self.lo == self.hi).then_some(self.lo)
    }
}

/// q = p^e, or `None` if q is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let fs = prime_factors(q);
    if fs.len() != 1 {
        return None;
    }
    let p = fs[0];
    let mut e = 0;
    let mut t = q;
    while t % p == 0 {
        t /= p;
        e += 1;
    }
    Some((p, e))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn smallest_prime_factor(r: u64) -> u64 {
    prime_factors(r).into_iter().min().unwrap_or(u64::MAX)
}

/// gcd(r, (q^{2s}-q^s+1)!) = 1 for some s coprime to r, r odd. The factorial
/// grows with s, so s = 1 is the weakest instance: every prime factor of r
/// must exceed q^2-q+1.
fn factorial_condition(q: u64, r: u64) -> bool {
    r % 2 == 1 && (r == 1 || smallest_prime_factor(r) > q * q - q + 1)
}

/// q odd with q = 2, 3 mod 5, or q = 2^{2h+1} with h ≥ 1.
fn q_form_mod5(q: u64, p: u64, e: u32) -> bool {
    (q % 2 == 1 && matches!(q % 5, 2 | 3)) || (p == 2 && e % 2 == 1 && e >= 3)
}

/// Applies every row of the known-value table and intersects the results.
/// `None` if q is not a prime power, ρ is out of range, or no row applies.
pub fn known_value(q: u64, m: u32, k: u32, rho: u32) -> Option<KnownValue> {
    let (p, e) = prime_power(q)?;
    if m < 2 || check_rho(m, k, rho).is_err() {
        return None;
    }
    let (mm, kk) = (m as u64, k as u64);
    let mut rows: Vec<(u64, u64, &'static str)> = Vec::new();
    let mut exact = |v: u64, tag| rows.push((v, v, tag));

    if k % rho == 0 {
        let t = (k / rho) as u64;
        exact(mm * (t - 1) + rho as u64, "rho-divides-k");
    }
    if m == 2 && rho == 2 {
        exact(kk, "m2-rho2");
    }
    if m == 3 && k == 3 && rho == 2 {
        exact(4, "m3-k3");
    }
    if m % 2 == 0 && k == 3 && rho == 2 {
        let r = mm / 2;
        if r >= 4 && !matches!(r % 6, 3 | 5) {
            exact(r + 2, "m2r-k3-mod6");
        }
        if factorial_condition(q, r) {
            exact(r + 2, "m2r-k3-gcd");
        }
        if r % 2 == 1 && q_form_mod5(q, p, e) {
            exact(r + 2, "m2r-k3-qform");
        }
    }
    if m == 10 && k == 3 && rho == 2 {
        if (p == 2 || p == 3) && gcd(e as u64, 15) == 1 {
            exact(7, "m10-evasive-p23");
        }
        if p == 5 && e % 15 == 1 {
            exact(7, "m10-evasive-p5");
        }
        if q_form_mod5(q, p, e) {
            exact(7, "m10-qform");
        }
    }
    if m % 2 == 0 && m >= 4 && k == m && rho == m - 1 {
        exact(mm + 1, "m2r-k2r");
    }
    if m == 4 && k == 3 && rho == 2 {
        if q == 2 || q == 3 {
            exact(5, "m4-k3-computed");
        } else if p == 2 && q >= 64 {
            exact(5, "m4-k3-even-large");
        } else {
            rows.push((4, 5, "m4-k3-range"));
        }
    }
    // h-scattered constructions: ρ = m-2, k = r(m-2)/2 with r odd.
    if m >= 4 && m % 2 == 0 && rho == m - 2 && (2 * k) % (m - 2) == 0 {
        let r = 2 * k / (m - 2);
        let ok = r % 2 == 1
            && r >= 3
            && (r > 3 || (if q > 2 { m < 12 } else { m < 10 }));
        if ok {
            let top = mm * r as u64 / 2 - 1;
            rows.push((top - 1, top, "hscattered-range"));
        }
    }
    if rho == 2 && (mm * kk) % 2 == 0 {
        let lo = div_ceil(mm * (kk - 2), 2) + 2;
        let hi = mm * (kk - 1) / 2 + 1;
        rows.push((lo, hi, "scattered-range"));
    }
    if m == 5 && k == 3 && rho == 2 && matches!(p, 2 | 3 | 5) {
        rows.push((5, 6, "m5-k3-range"));
    }

    if rows.is_empty() {
        return None;
    }
    let lo = rows.iter().map(|r| r.0).max().unwrap();
    let hi = rows.iter().map(|r| r.1).min().unwrap();
    Some(KnownValue {
        lo,
        hi,
        sources: rows.into_iter().map(|r| r.2).collect(),
    })
}

/// q is a prime power.
pub fn is_prime_power(q: u64) -> bool {
    prime_power(q).is_some()
}
