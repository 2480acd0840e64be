//! Exact arithmetic in the ring of integers of an imaginary quadratic field.
//!
//! An element is stored as a coordinate pair `(a, b)` over the integral basis
//! `{1, w}` where `w = sqrt(-d)` when `d` is 1 or 2 mod 4 and
//! `w = (1 + sqrt(-d)) / 2` when `d` is 3 mod 4. In both cases `w` satisfies
//! `w^2 = t*w - c` with `(t, c) = (0, d)` or `(1, (1 + d) / 4)`, which is all
//! the multiplication table needs.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An imaginary quadratic field `Q(sqrt(-d))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldSpec {
    d: u64,
    disc: i64,
    half_basis: bool,
    omega_k: u32,
}

impl FieldSpec {
    pub fn new(d: i64) -> Result<Self> {
        if d <= 0 {
            return Err(Error::NotPositive(d));
        }
        let du = d as u64;
        if !is_squarefree(du) {
            return Err(Error::NotSquarefree(du));
        }
        let half_basis = du % 4 == 3;
        let disc = if half_basis { -d } else { -4 * d };
        let omega_k = match du {
            1 => 4,
            3 => 6,
            _ => 2,
        };
        Ok(FieldSpec {
            d: du,
            disc,
            half_basis,
            omega_k,
        })
    }

    /// The Gaussian rationals `Q(i)`.
    pub fn gaussian() -> Self {
        FieldSpec::new(1).expect("1 is squarefree")
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn disc(&self) -> i64 {
        self.disc
    }

    pub fn half_basis(&self) -> bool {
        self.half_basis
    }

    /// Number of roots of unity in the field.
    pub fn omega_k(&self) -> u32 {
        self.omega_k
    }

    /// Coefficients `(t, c)` of the relation `w^2 = t*w - c`.
    pub(crate) fn relation(&self) -> (i64, i64) {
        if self.half_basis {
            (1, ((1 + self.d) / 4) as i64)
        } else {
            (0, self.d as i64)
        }
    }

    pub fn zero(&self) -> QuadInt {
        QuadInt::from_i64(*self, 0, 0)
    }

    pub fn one(&self) -> QuadInt {
        QuadInt::from_i64(*self, 1, 0)
    }

    /// The basis element `w`.
    pub fn w(&self) -> QuadInt {
        QuadInt::from_i64(*self, 0, 1)
    }

    fn check(&self, other: &FieldSpec) -> Result<()> {
        if self.d == other.d {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.d, other.d))
        }
    }
}

/// Builds the field `Q(sqrt(-d))`.
pub fn make_field(d: i64) -> Result<FieldSpec> {
    FieldSpec::new(d)
}

fn is_squarefree(n: u64) -> bool {
    let mut m = n;
    let mut p = 2u64;
    while p.saturating_mul(p) <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

// Coordinate-level ring operations, shared by the arbitrary-precision
// element type and the machine-word expansion path.

pub(crate) fn mul_coords<T>(rel: (i64, i64), x: (&T, &T), y: (&T, &T)) -> (T, T)
where
    T: Clone + Integer + Signed + FromPrimitive,
{
    let (t, c) = rel;
    let c = T::from_i64(c).expect("relation constant fits");
    let bb = x.1.clone() * y.1.clone();
    let re = x.0.clone() * y.0.clone() - c * bb.clone();
    let mut im = x.0.clone() * y.1.clone() + y.0.clone() * x.1.clone();
    if t != 0 {
        im = im + bb;
    }
    (re, im)
}

pub(crate) fn conj_coords<T>(rel: (i64, i64), x: (&T, &T)) -> (T, T)
where
    T: Clone + Integer + Signed + FromPrimitive,
{
    if rel.0 != 0 {
        (x.0.clone() + x.1.clone(), -x.1.clone())
    } else {
        (x.0.clone(), -x.1.clone())
    }
}

pub(crate) fn norm_coords<T>(rel: (i64, i64), x: (&T, &T)) -> T
where
    T: Clone + Integer + Signed + FromPrimitive,
{
    let (t, c) = rel;
    let c = T::from_i64(c).expect("relation constant fits");
    let mut n = x.0.clone() * x.0.clone() + c * x.1.clone() * x.1.clone();
    if t != 0 {
        n = n + x.0.clone() * x.1.clone();
    }
    n
}

/// An element `a + b*w` of the ring of integers of a [`FieldSpec`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadInt {
    field: FieldSpec,
    a: BigInt,
    b: BigInt,
}

impl QuadInt {
    pub fn new(field: FieldSpec, a: BigInt, b: BigInt) -> Self {
        QuadInt { field, a, b }
    }

    pub fn from_i64(field: FieldSpec, a: i64, b: i64) -> Self {
        QuadInt::new(field, BigInt::from(a), BigInt::from(b))
    }

    /// Embeds a rational integer.
    pub fn integer(field: FieldSpec, n: impl Into<BigInt>) -> Self {
        QuadInt::new(field, n.into(), BigInt::zero())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    /// True when the element lies in `Z`.
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Coordinates as machine words, when they fit.
    pub fn to_i64_pair(&self) -> Option<(i64, i64)> {
        Some((self.a.to_i64()?, self.b.to_i64()?))
    }

    pub fn norm(&self) -> BigInt {
        norm_coords(self.field.relation(), (&self.a, &self.b))
    }

    pub fn conj(&self) -> QuadInt {
        let (a, b) = conj_coords(self.field.relation(), (&self.a, &self.b));
        QuadInt::new(self.field, a, b)
    }

    /// `x + conj(x)` as a rational integer.
    pub fn trace(&self) -> BigInt {
        let two = &self.a + &self.a;
        if self.field.half_basis {
            two + &self.b
        } else {
            two
        }
    }

    pub fn try_add(&self, other: &QuadInt) -> Result<QuadInt> {
        self.field.check(&other.field)?;
        Ok(QuadInt::new(self.field, &self.a + &other.a, &self.b + &other.b))
    }

    pub fn try_sub(&self, other: &QuadInt) -> Result<QuadInt> {
        self.field.check(&other.field)?;
        Ok(QuadInt::new(self.field, &self.a - &other.a, &self.b - &other.b))
    }

    pub fn try_mul(&self, other: &QuadInt) -> Result<QuadInt> {
        self.field.check(&other.field)?;
        let (a, b) = mul_coords(
            self.field.relation(),
            (&self.a, &self.b),
            (&other.a, &other.b),
        );
        Ok(QuadInt::new(self.field, a, b))
    }

    /// Returns `q` with `q * y == self`, or `NotDivisible`.
    pub fn exact_div(&self, y: &QuadInt) -> Result<QuadInt> {
        self.field.check(&y.field)?;
        let n = y.norm();
        if n.is_zero() {
            return Err(Error::ZeroInput);
        }
        let yc = y.conj();
        let (p, q) = mul_coords(self.field.relation(), (&self.a, &self.b), (&yc.a, &yc.b));
        let (qa, ra) = p.div_rem(&n);
        let (qb, rb) = q.div_rem(&n);
        if ra.is_zero() && rb.is_zero() {
            Ok(QuadInt::new(self.field, qa, qb))
        } else {
            Err(Error::NotDivisible {
                num: self.to_string(),
                den: y.to_string(),
            })
        }
    }

    pub fn pow(&self, k: u32) -> QuadInt {
        let mut result = self.field.one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Complex embedding with `Im(w) > 0`.
    pub fn embed_complex(&self) -> (f64, f64) {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let sd = (self.field.d as f64).sqrt();
        if self.field.half_basis {
            (a + b / 2.0, b * sd / 2.0)
        } else {
            (a, b * sd)
        }
    }

    /// `|x|`, taken as the square root of the exact norm.
    pub fn modulus(&self) -> f64 {
        self.norm().to_f64().unwrap_or(f64::INFINITY).sqrt()
    }

    /// `log |x|`, accurate even when the norm overflows a double.
    pub fn ln_modulus(&self) -> f64 {
        0.5 * ln_bigint(&self.norm())
    }
}

/// Natural logarithm of a positive big integer; `-inf` for zero.
pub fn ln_bigint(n: &BigInt) -> f64 {
    if n.sign() != Sign::Plus {
        return f64::NEG_INFINITY;
    }
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().expect("finite below 2^1000").ln();
    }
    let shift = bits - 64;
    let top: BigInt = n >> shift;
    top.to_f64().expect("64-bit value").ln() + (shift as f64) * std::f64::consts::LN_2
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&QuadInt> for &QuadInt {
            type Output = QuadInt;
            fn $method(self, rhs: &QuadInt) -> QuadInt {
                self.$checked(rhs).expect("operands from the same field")
            }
        }

        impl $trait<QuadInt> for QuadInt {
            type Output = QuadInt;
            fn $method(self, rhs: QuadInt) -> QuadInt {
                (&self).$checked(&rhs).expect("operands from the same field")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt::new(self.field, -&self.a, -&self.b)
    }
}

impl Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        -&self
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.b.is_negative() { '-' } else { '+' };
        write!(
            f,
            "{}{}{}*w[{}]",
            self.a,
            sign,
            self.b.abs(),
            self.field.d
        )
    }
}

impl FromStr for QuadInt {
    type Err = Error;

    /// Parses the canonical text form `a+b*w[d]`, e.g. `-1+1*w[1]`.
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse(s.to_string());
        let body = s.strip_suffix(']').ok_or_else(err)?;
        let (lhs, d) = body.rsplit_once("*w[").ok_or_else(err)?;
        if d.is_empty() || !d.bytes().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        let d: i64 = d.parse().map_err(|_| err())?;
        let split = lhs
            .char_indices()
            .skip(1)
            .find(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .ok_or_else(err)?;
        let (a, b) = lhs.split_at(split);
        let digits_ok = |t: &str| !t.is_empty() && t.bytes().all(|c| c.is_ascii_digit());
        let a_digits = a.strip_prefix('-').or_else(|| a.strip_prefix('+')).unwrap_or(a);
        if !digits_ok(a_digits) || !digits_ok(&b[1..]) {
            return Err(err());
        }
        let field = FieldSpec::new(d)?;
        let a: BigInt = a.parse().map_err(|_| err())?;
        let b: BigInt = b.parse().map_err(|_| err())?;
        Ok(QuadInt::new(field, a, b))
    }
}

/// A lattice point with its norm, used by the sweeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint {
    pub norm: u64,
    pub a: i64,
    pub b: i64,
}

impl LatticePoint {
    pub fn to_quad(&self, field: FieldSpec) -> QuadInt {
        QuadInt::from_i64(field, self.a, self.b)
    }
}

/// All non-zero lattice points of norm at most `n_max`, sorted by `(norm, a, b)`.
pub fn lattice_points_by_norm(field: FieldSpec, n_max: u64) -> Vec<LatticePoint> {
    if n_max == 0 {
        return Vec::new();
    }
    let (t, c) = field.relation();
    let (t, c) = (t as i128, c as i128);
    let n = n_max as i128;
    let abs_disc = (-field.disc) as f64;
    // norm >= |disc|/4 * b^2
    let b_max = (4.0 * n_max as f64 / abs_disc).sqrt().floor() as i64 + 1;
    let mut out = Vec::new();
    for b in -b_max..=b_max {
        let bi = b as i128;
        // a^2 + t*b*a + c*b^2 - n <= 0
        let disc_a = (t * bi) * (t * bi) - 4 * (c * bi * bi - n);
        if disc_a < 0 {
            continue;
        }
        let root = (disc_a as f64).sqrt();
        let lo = ((-(t * bi) as f64 - root) / 2.0).floor() as i64 - 1;
        let hi = ((-(t * bi) as f64 + root) / 2.0).ceil() as i64 + 1;
        for a in lo..=hi {
            let ai = a as i128;
            let norm = ai * ai + t * ai * bi + c * bi * bi;
            if norm > 0 && norm <= n {
                out.push(LatticePoint {
                    norm: norm as u64,
                    a,
                    b,
                });
            }
        }
    }
    out.sort_unstable();
    out
}

/// All non-zero elements of norm at most `n_max`, ordered by `(norm, a, b)`.
pub fn enumerate_by_norm(field: FieldSpec, n_max: u64) -> Vec<QuadInt> {
    lattice_points_by_norm(field, n_max)
        .into_iter()
        .map(|p| p.to_quad(field))
        .collect()
}
