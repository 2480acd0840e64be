//! Exact multiplicative-dependence decision for two quadratic integers.
//!
//! Both inputs have modulus above 1, so any relation `alpha^p beta^q = 1`
//! has `p` and `q` of opposite sign and may be written `alpha^p = beta^q`
//! with positive exponents. Taking norms gives `N(alpha)^p = N(beta)^q`,
//! which pins `(p, q)` to a multiple of the minimal pair `(u, v)` solving the
//! norm equation. The quotient `alpha^u / beta^v` then has norm 1, hence is a
//! root of unity of the field and its order divides the number of roots of
//! unity `w`. So the pair is dependent exactly when `alpha^(uw) = beta^(vw)`.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{FieldSpec, QuadInt};

/// Largest trial divisor used by [`factorize`].
pub const TRIAL_DIVISION_BOUND: u64 = 1 << 32;

/// Prime factorization by trial division, primes ascending.
///
/// A cofactor left once `p^2` exceeds it is prime. The factorization is
/// incomplete only if divisors run past [`TRIAL_DIVISION_BOUND`] while the
/// cofactor still has room for two large primes.
pub fn factorize(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    factorize_with_bound(n, TRIAL_DIVISION_BOUND)
}

fn factorize_with_bound(n: &BigInt, bound: u64) -> Result<Vec<(BigInt, u32)>> {
    if n < &BigInt::one() {
        return Err(Error::InvalidParams(format!("cannot factor {n}")));
    }
    if let Some(small) = n.to_u64() {
        return factorize_u64(small, bound)
            .map(|f| f.into_iter().map(|(p, e)| (BigInt::from(p), e)).collect())
            .ok_or_else(|| Error::FactorizationIncomplete(n.to_string()));
    }
    let mut rest = n.clone();
    let mut out = Vec::new();
    let mut p: u64 = 2;
    loop {
        let pb = BigInt::from(p);
        if &pb * &pb > rest {
            break;
        }
        if p > bound {
            return Err(Error::FactorizationIncomplete(n.to_string()));
        }
        if (&rest % p).is_zero() {
            let mut e = 0;
            while (&rest % p).is_zero() {
                rest /= p;
                e += 1;
            }
            out.push((pb, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > BigInt::one() {
        out.push((rest, 1));
    }
    Ok(out)
}

fn factorize_u64(n: u64, bound: u64) -> Option<Vec<(u64, u32)>> {
    let mut rest = n;
    let mut out = Vec::new();
    let mut p: u64 = 2;
    while (p as u128) * (p as u128) <= rest as u128 {
        if p > bound {
            return None;
        }
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        out.push((rest, 1));
    }
    Some(out)
}

/// Decides whether `m^u = n^v` for some positive `u, v`; returns the minimal
/// pair when it exists.
pub fn int_mult_dep(m: &BigInt, n: &BigInt) -> Result<Option<(u64, u64)>> {
    let two = BigInt::from(2);
    if m < &two || n < &two {
        return Err(Error::InvalidParams(format!(
            "integers must be at least 2, got {m} and {n}"
        )));
    }
    let fm = factorize(m)?;
    let fn_ = factorize(n)?;
    if fm.len() != fn_.len() || fm.iter().zip(&fn_).any(|(x, y)| x.0 != y.0) {
        return Ok(None);
    }
    let (em0, en0) = (fm[0].1 as u64, fn_[0].1 as u64);
    let proportional = fm
        .iter()
        .zip(&fn_)
        .all(|(x, y)| x.1 as u64 * en0 == y.1 as u64 * em0);
    if !proportional {
        return Ok(None);
    }
    let g = em0.gcd(&en0);
    Ok(Some((en0 / g, em0 / g)))
}

/// Verdict of [`mult_dep`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultDepVerdict {
    pub dependent: bool,
    /// Minimal exponents with `N(alpha)^u = N(beta)^v`, when they exist.
    pub u: Option<u64>,
    pub v: Option<u64>,
    /// Root-of-unity factor with `alpha^(uw) = beta^(vw)`, present iff dependent.
    pub w: Option<u32>,
}

pub fn mult_dep(alpha: &QuadInt, beta: &QuadInt) -> Result<MultDepVerdict> {
    if alpha.field() != beta.field() {
        return Err(Error::FieldMismatch(alpha.field().d(), beta.field().d()));
    }
    let two = BigInt::from(2);
    for x in [alpha, beta] {
        if x.norm() < two {
            return Err(Error::UnitInput(x.to_string()));
        }
    }
    let Some((u, v)) = int_mult_dep(&alpha.norm(), &beta.norm())? else {
        return Ok(MultDepVerdict {
            dependent: false,
            u: None,
            v: None,
            w: None,
        });
    };
    let w = alpha.field().omega_k();
    let exp = |k: u64| -> Result<u32> {
        (k * w as u64)
            .to_u32()
            .ok_or_else(|| Error::InvalidParams(format!("exponent {k} too large")))
    };
    let dependent = alpha.pow(exp(u)?) == beta.pow(exp(v)?);
    Ok(MultDepVerdict {
        dependent,
        u: Some(u),
        v: Some(v),
        w: dependent.then_some(w),
    })
}

/// Dependent pairs among the Gaussian bases `-a +- i`, `1 <= a <= a_max`.
pub fn qi_scan(a_max: u64) -> Result<Vec<(QuadInt, QuadInt)>> {
    let field = FieldSpec::gaussian();
    let bases: Vec<QuadInt> = (1..=a_max as i64)
        .flat_map(|a| [QuadInt::from_i64(field, -a, 1), QuadInt::from_i64(field, -a, -1)])
        .collect();
    let mut out = Vec::new();
    for (i, x) in bases.iter().enumerate() {
        for y in &bases[i + 1..] {
            if mult_dep(x, y)?.dependent {
                out.push((x.clone(), y.clone()));
            }
        }
    }
    Ok(out)
}

/// Triples `(a, x, v)` with `a^2 + 1 = x^v`, `v >= 3`, `x >= 2`, `1 <= a <= a_max`.
pub fn lebesgue_scan(a_max: u64) -> Vec<(u64, u64, u32)> {
    let mut hits = Vec::new();
    for a in 1..=a_max {
        let n = a * a + 1;
        let top = 63 - n.leading_zeros();
        for v in 3..=top {
            let x = n.nth_root(v);
            if x >= 2 && x.checked_pow(v) == Some(n) {
                hits.push((a, x, v));
            }
        }
    }
    hits
}
