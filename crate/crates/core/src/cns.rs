//! Canonical number system bases, digit extraction and expansion.
//!
//! A base `alpha` with minimal polynomial `x^2 + E x + F` is accepted when
//! `F >= 2`, `-1 <= E <= F` and `E^2 - 4F` equals the field discriminant
//! (so that `Z[alpha]` is the whole ring of integers). Digits are `0..F`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{conj_coords, FieldSpec, LatticePoint, QuadInt};

/// Steps allowed beyond the logarithmic length estimate before an expansion
/// is declared non-terminating.
pub const GUARD_SLACK: usize = 64;

/// Returns `(E, F)` with `alpha^2 + E alpha + F = 0`.
pub fn minimal_poly(alpha: &QuadInt) -> Result<(BigInt, BigInt)> {
    if alpha.is_rational() {
        return Err(Error::NotQuadratic(alpha.to_string()));
    }
    Ok((-alpha.trace(), alpha.norm()))
}

/// Outcome of the CNS test for a candidate base.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnsCheck {
    pub criterion_ok: bool,
    pub ring_match: bool,
}

impl CnsCheck {
    pub fn is_cns(&self) -> bool {
        self.criterion_ok && self.ring_match
    }
}

pub fn is_cns(alpha: &QuadInt) -> CnsCheck {
    let e = -alpha.trace();
    let f = alpha.norm();
    let disc = BigInt::from(alpha.field().disc());
    let ring_match = &e * &e - BigInt::from(4) * &f == disc;
    let criterion_ok = !alpha.is_rational()
        && f >= BigInt::from(2)
        && e >= BigInt::from(-1)
        && e <= f;
    CnsCheck {
        criterion_ok,
        ring_match,
    }
}

/// A validated canonical number system base.
#[derive(Clone, Debug, PartialEq)]
pub struct CnsBase {
    alpha: QuadInt,
    e: i64,
    f: u64,
    mod_alpha: f64,
    ln_mod_alpha: f64,
    conj_small: Option<(i128, i128)>,
}

impl CnsBase {
    pub fn new(alpha: QuadInt) -> Result<Self> {
        let check = is_cns(&alpha);
        if !check.criterion_ok {
            return Err(Error::NotCns(alpha.to_string()));
        }
        if !check.ring_match {
            return Err(Error::RingMismatch(alpha.to_string()));
        }
        Self::unchecked(alpha)
    }

    /// Builds a base without the CNS test.
    ///
    /// Only requires `alpha` to be quadratic with norm at least 2. Used by
    /// the brute-force oracles that must be able to run expansions over
    /// bases the criterion rejects.
    pub fn unchecked(alpha: QuadInt) -> Result<Self> {
        let (e, f) = minimal_poly(&alpha)?;
        if f < BigInt::from(2) {
            return Err(Error::NotCns(alpha.to_string()));
        }
        let too_large = || Error::BaseTooLarge(alpha.to_string());
        let e = e.to_i64().ok_or_else(too_large)?;
        let f = f.to_u64().filter(|&f| f < 1 << 40).ok_or_else(too_large)?;
        let mod_alpha = (f as f64).sqrt();
        let (t, c) = alpha.field().relation();
        let conj_small = match alpha.to_i64_pair() {
            Some((a, b)) if a.abs() < 1 << 20 && b.abs() < 1 << 20 && c < 1 << 20 => {
                Some(conj_coords((t, c), (&(a as i128), &(b as i128))))
            }
            _ => None,
        };
        Ok(CnsBase {
            alpha,
            e,
            f,
            mod_alpha,
            ln_mod_alpha: mod_alpha.ln(),
            conj_small,
        })
    }

    pub fn alpha(&self) -> &QuadInt {
        &self.alpha
    }

    pub fn field(&self) -> FieldSpec {
        self.alpha.field()
    }

    /// `E` of the minimal polynomial.
    pub fn e(&self) -> i64 {
        self.e
    }

    /// `F = norm(alpha)`, also the size of the digit set.
    pub fn f(&self) -> u64 {
        self.f
    }

    pub fn digit_max(&self) -> u64 {
        self.f - 1
    }

    /// `|N(alpha)| - 1`.
    pub fn eps(&self) -> u64 {
        self.f - 1
    }

    pub fn mod_alpha(&self) -> f64 {
        self.mod_alpha
    }

    pub fn ln_mod_alpha(&self) -> f64 {
        self.ln_mod_alpha
    }

    /// Step budget for expanding an element of modulus `modulus`.
    pub fn step_guard(&self, modulus: f64) -> usize {
        (2.0 * (1.0 + modulus).ln() / self.ln_mod_alpha).ceil() as usize + GUARD_SLACK
    }

    /// One digit extraction: `gamma = digit + alpha * quotient`.
    pub fn digit_step(&self, gamma: &QuadInt) -> Result<(u64, QuadInt)> {
        self.same_field(gamma)?;
        let conj = self.alpha.conj();
        let (digit, a, b) = step_coords(
            self.field().relation(),
            (conj.a().clone(), conj.b().clone()),
            self.f,
            (gamma.a(), gamma.b()),
        )
        .map_err(|fail| self.failure(fail, gamma, 0))?;
        Ok((digit, QuadInt::new(self.field(), a, b)))
    }

    /// Full `alpha`-adic expansion of `gamma`.
    pub fn expand(&self, gamma: &QuadInt) -> Result<DigitString> {
        let digits = self.expand_digits(gamma)?;
        Ok(DigitString {
            base: self.clone(),
            digits,
        })
    }

    /// Digits of the expansion of `gamma`, least significant first.
    pub fn expand_digits(&self, gamma: &QuadInt) -> Result<Vec<u64>> {
        self.same_field(gamma)?;
        let guard = self.step_guard(gamma.modulus());
        if let Some((a, b)) = gamma.to_i64_pair() {
            match self.expand_small(a, b, guard) {
                Some(Ok(digits)) => return Ok(digits),
                Some(Err(fail)) => return Err(self.failure(fail, gamma, guard)),
                None => {}
            }
        }
        let conj = self.alpha.conj();
        expand_coords(
            self.field().relation(),
            (conj.a().clone(), conj.b().clone()),
            self.f,
            (gamma.a().clone(), gamma.b().clone()),
            guard,
        )
        .map_err(|fail| self.failure(fail, gamma, guard))
    }

    /// Digits of the expansion of a lattice point, avoiding big-integer
    /// allocation when the coordinates are small.
    pub fn expand_point(&self, p: &LatticePoint) -> Result<Vec<u64>> {
        let guard = self.step_guard((p.norm as f64).sqrt());
        match self.expand_small(p.a, p.b, guard) {
            Some(Ok(digits)) => Ok(digits),
            Some(Err(fail)) => Err(self.failure(fail, &p.to_quad(self.field()), guard)),
            None => self.expand_digits(&p.to_quad(self.field())),
        }
    }

    fn expand_small(
        &self,
        a: i64,
        b: i64,
        guard: usize,
    ) -> Option<std::result::Result<Vec<u64>, Failure>> {
        let conj = self.conj_small?;
        let (a, b) = (a as i128, b as i128);
        if !a.in_range() || !b.in_range() {
            return None;
        }
        match expand_coords(self.field().relation(), conj, self.f, (a, b), guard) {
            Err(Failure::Overflow) => None,
            other => Some(other),
        }
    }

    /// Horner evaluation of `digits` (least significant first).
    pub fn evaluate_digits(&self, digits: &[u64]) -> Result<QuadInt> {
        let mut acc = self.field().zero();
        for (index, &digit) in digits.iter().enumerate().rev() {
            if digit >= self.f {
                return Err(Error::DigitOutOfRange {
                    digit,
                    index,
                    limit: self.f,
                });
            }
            acc = &(&acc * &self.alpha) + &QuadInt::integer(self.field(), digit);
        }
        Ok(acc)
    }

    fn same_field(&self, gamma: &QuadInt) -> Result<()> {
        if gamma.field() == self.field() {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.field().d(), gamma.field().d()))
        }
    }

    fn failure(&self, fail: Failure, gamma: &QuadInt, steps: usize) -> Error {
        let gamma = gamma.to_string();
        let base = self.alpha.to_string();
        match fail {
            Failure::NoDigit => Error::NoDigit { gamma, base },
            Failure::Ambiguous => Error::AmbiguousDigit { gamma, base },
            Failure::NonTerminating | Failure::Overflow => Error::NonTerminating {
                gamma,
                base,
                steps,
            },
        }
    }
}

/// Validates `alpha` and builds the base.
pub fn make_base(alpha: QuadInt) -> Result<CnsBase> {
    CnsBase::new(alpha)
}

// Coordinates handled on the machine-word path stay below this bound, which
// keeps every intermediate product far inside i128.
const SMALL_LIMIT: i128 = 1 << 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Failure {
    NoDigit,
    Ambiguous,
    NonTerminating,
    Overflow,
}

trait Coord: Clone + Integer + Signed + FromPrimitive {
    fn in_range(&self) -> bool;
}

impl Coord for i128 {
    fn in_range(&self) -> bool {
        self.abs() < SMALL_LIMIT
    }
}

impl Coord for BigInt {
    fn in_range(&self) -> bool {
        true
    }
}

/// Scans `eps = 0..f` for the digits with `alpha | gamma - eps`.
///
/// `(gamma - eps) * conj(alpha)` is affine in `eps`, so each candidate costs
/// one subtraction per coordinate plus the two remainder tests.
fn step_coords<T: Coord>(
    rel: (i64, i64),
    conj: (T, T),
    f: u64,
    gamma: (&T, &T),
) -> std::result::Result<(u64, T, T), Failure> {
    let f_t = T::from_u64(f).expect("digit bound fits");
    let (t, c) = rel;
    let c_t = T::from_i64(c).expect("relation constant fits");
    // gamma * conj(alpha), inlined from the multiplication table
    let bb = gamma.1.clone() * conj.1.clone();
    let mut p = gamma.0.clone() * conj.0.clone() - c_t * bb.clone();
    let mut q = gamma.0.clone() * conj.1.clone() + conj.0.clone() * gamma.1.clone();
    if t != 0 {
        q = q + bb;
    }
    let mut found: Option<(u64, T, T)> = None;
    for eps in 0..f {
        if p.is_multiple_of(&f_t) && q.is_multiple_of(&f_t) {
            if found.is_some() {
                return Err(Failure::Ambiguous);
            }
            found = Some((eps, p.clone() / f_t.clone(), q.clone() / f_t.clone()));
        }
        p = p - conj.0.clone();
        q = q - conj.1.clone();
    }
    found.ok_or(Failure::NoDigit)
}

fn expand_coords<T: Coord>(
    rel: (i64, i64),
    conj: (T, T),
    f: u64,
    gamma: (T, T),
    guard: usize,
) -> std::result::Result<Vec<u64>, Failure> {
    let (mut a, mut b) = gamma;
    let mut digits = Vec::new();
    while !(a.is_zero() && b.is_zero()) {
        if digits.len() >= guard {
            return Err(Failure::NonTerminating);
        }
        if !a.in_range() || !b.in_range() {
            return Err(Failure::Overflow);
        }
        let (digit, qa, qb) = step_coords(rel, conj.clone(), f, (&a, &b))?;
        digits.push(digit);
        a = qa;
        b = qb;
    }
    if digits.is_empty() {
        digits.push(0);
    }
    Ok(digits)
}

/// A finite `alpha`-adic digit sequence, index `i` holding the coefficient of
/// `alpha^i`.
#[derive(Clone, Debug, PartialEq)]
pub struct DigitString {
    base: CnsBase,
    digits: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct DigitStringJson {
    base: String,
    d: u64,
    digits: Vec<u64>,
}

impl DigitString {
    /// Checks digit ranges and the non-zero leading digit.
    pub fn new(base: CnsBase, digits: Vec<u64>) -> Result<Self> {
        if digits.is_empty() {
            return Err(Error::InvalidParams("empty digit string".into()));
        }
        for (index, &digit) in digits.iter().enumerate() {
            if digit >= base.f {
                return Err(Error::DigitOutOfRange {
                    digit,
                    index,
                    limit: base.f,
                });
            }
        }
        if digits.len() > 1 && digits[digits.len() - 1] == 0 {
            return Err(Error::InvalidParams("leading digit is zero".into()));
        }
        Ok(DigitString { base, digits })
    }

    pub fn base(&self) -> &CnsBase {
        &self.base
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    /// Highest exponent `L`.
    pub fn top_exponent(&self) -> usize {
        self.digits.len() - 1
    }

    pub fn evaluate(&self) -> QuadInt {
        self.base
            .evaluate_digits(&self.digits)
            .expect("digits validated on construction")
    }

    /// Non-zero digits as `(exponent, digit)`, highest exponent first.
    pub fn nonzero_terms(&self) -> Vec<(usize, u64)> {
        self.digits
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &d)| d != 0)
            .map(|(i, &d)| (i, d))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&DigitStringJson {
            base: self.base.alpha.to_string(),
            d: self.base.field().d(),
            digits: self.digits.clone(),
        })
        .expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: DigitStringJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let alpha: QuadInt = raw.base.parse()?;
        if alpha.field().d() != raw.d {
            return Err(Error::FieldMismatch(alpha.field().d(), raw.d));
        }
        DigitString::new(CnsBase::new(alpha)?, raw.digits)
    }
}

impl fmt::Display for DigitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.digits.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")_α")
    }
}

pub fn digit_step(gamma: &QuadInt, base: &CnsBase) -> Result<(u64, QuadInt)> {
    base.digit_step(gamma)
}

pub fn expand(gamma: &QuadInt, base: &CnsBase) -> Result<DigitString> {
    base.expand(gamma)
}

pub fn evaluate(ds: &DigitString) -> QuadInt {
    ds.evaluate()
}

/// Aggregate of an exhaustive round-trip check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExhaustiveReport {
    pub count: u64,
    pub all_roundtrip: bool,
    /// Largest number of digits seen.
    pub max_length: usize,
}

impl ExhaustiveReport {
    fn merge(self, other: ExhaustiveReport) -> ExhaustiveReport {
        ExhaustiveReport {
            count: self.count + other.count,
            all_roundtrip: self.all_roundtrip && other.all_roundtrip,
            max_length: self.max_length.max(other.max_length),
        }
    }
}

/// Expands and re-evaluates every element of norm at most `n_max`, and zero.
pub fn verify_exhaustive(base: &CnsBase, n_max: u64) -> Result<ExhaustiveReport> {
    let field = base.field();
    let points = crate::ring::lattice_points_by_norm(field, n_max);
    let mut report = check_one(base, &field.zero())?;
    for p in &points {
        report = report.merge(check_one(base, &p.to_quad(field))?);
    }
    Ok(report)
}

fn check_one(base: &CnsBase, gamma: &QuadInt) -> Result<ExhaustiveReport> {
    let ds = base.expand(gamma)?;
    let digits = ds.digits();
    let in_range = digits.iter().all(|&d| d < base.f);
    let leading_ok = digits.len() == 1 || digits[digits.len() - 1] != 0;
    let ok = in_range && leading_ok && base.evaluate_digits(digits).as_ref() == Ok(gamma);
    Ok(ExhaustiveReport {
        count: 1,
        all_roundtrip: ok,
        max_length: digits.len(),
    })
}

/// All `u + v i` with `|u|, |v| <= a_max` that are CNS bases of `Z[i]`,
/// sorted by `(norm, a, b)`.
pub fn katai_szabo_scan(a_max: u64) -> Vec<QuadInt> {
    let field = FieldSpec::gaussian();
    let m = a_max as i64;
    let mut out = Vec::new();
    for u in -m..=m {
        for v in -m..=m {
            let alpha = QuadInt::from_i64(field, u, v);
            if !alpha.is_zero() && is_cns(&alpha).is_cns() {
                out.push(alpha);
            }
        }
    }
    out.sort_by_key(|x| (x.norm(), x.a().clone(), x.b().clone()));
    out
}
