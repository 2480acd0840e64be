//! Heights and the quantitative bound evaluators.
//!
//! Everything here is a binary64 calculator with natural logarithms. Heights
//! are only computed for non-zero integers of the field, where the absolute
//! logarithmic height reduces to `log(N(x)) / 2`.

use std::f64::consts::E;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{ln_bigint, QuadInt};

/// Tolerance on the height inequalities.
pub const HEIGHT_TOL: f64 = 1e-9;

/// Absolute logarithmic height of a non-zero integer of the field.
pub fn height(gamma: &QuadInt) -> Result<f64> {
    if gamma.is_zero() {
        return Err(Error::ZeroInput);
    }
    Ok(0.5 * ln_bigint(&gamma.norm()))
}

/// `h(d1 * d2) <= h(d1) + h(d2)`, up to [`HEIGHT_TOL`].
pub fn check_height_product(d1: &QuadInt, d2: &QuadInt) -> Result<bool> {
    let lhs = height(&d1.try_mul(d2)?)?;
    Ok(lhs <= height(d1)? + height(d2)? + HEIGHT_TOL)
}

/// Evaluates `f(delta)` for `f` given by ascending coefficients.
pub fn eval_poly(f: &[i64], delta: &QuadInt) -> QuadInt {
    let field = delta.field();
    f.iter().rev().fold(field.zero(), |acc, &c| {
        &(&acc * delta) + &QuadInt::integer(field, c)
    })
}

/// `deg(f) * h(delta) + log(sum |coeff|)`.
pub fn poly_height_bound(f: &[i64], delta: &QuadInt) -> Result<f64> {
    let deg = f
        .iter()
        .rposition(|&c| c != 0)
        .ok_or(Error::ZeroPolynomial)?;
    let l1: BigInt = f.iter().map(|&c| BigInt::from(c.unsigned_abs())).sum();
    let h_delta = if deg == 0 { 0.0 } else { height(delta)? };
    Ok(deg as f64 * h_delta + ln_bigint(&l1))
}

/// Checks `h(f(delta)) <= poly_height_bound(f, delta)`.
pub fn check_poly_height(f: &[i64], delta: &QuadInt) -> Result<bool> {
    let bound = poly_height_bound(f, delta)?;
    let value = eval_poly(f, delta);
    Ok(height(&value)? <= bound + HEIGHT_TOL)
}

/// Inputs to the linear-forms-in-logarithms lower bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatveevParams {
    t: usize,
    d: u32,
    log_a: Vec<f64>,
    b: f64,
}

impl MatveevParams {
    /// `log_a[j]` must be at least `0.16 / d` (it dominates
    /// `max(h, |log delta| / D, 0.16 / D)`), and `b >= 1`.
    pub fn new(d: u32, log_a: Vec<f64>, b: f64) -> Result<Self> {
        if d == 0 || log_a.is_empty() {
            return Err(Error::InvalidParams("need D >= 1 and T >= 1".into()));
        }
        let floor = 0.16 / d as f64;
        if let Some(bad) = log_a.iter().find(|&&x| !(x >= floor) || !x.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "log A' entry {bad} below 0.16/D = {floor}"
            )));
        }
        if !(b >= 1.0) || !b.is_finite() {
            return Err(Error::InvalidParams(format!("B = {b} must be >= 1")));
        }
        Ok(MatveevParams {
            t: log_a.len(),
            d,
            log_a,
            b,
        })
    }

    /// Smallest admissible `log A'` for a number with height `h` and
    /// logarithm of absolute value `abs_log`.
    pub fn admissible_log_a(h: f64, abs_log: f64, d: u32) -> f64 {
        let d = d as f64;
        h.max(abs_log / d).max(0.16 / d)
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn log_a(&self) -> &[f64] {
        &self.log_a
    }

    pub fn b(&self) -> f64 {
        self.b
    }
}

/// Lower bound for `log |Lambda|` when `Lambda != 0`:
/// `-3 * 30^(T+4) * (T+1)^5.5 * D^(T+2) * log(eD) * prod(log A'_j) * log(eTB)`.
pub fn matveev_bound(p: &MatveevParams) -> f64 {
    let t = p.t as f64;
    let d = p.d as f64;
    let constant = 3.0 * 30f64.powi(p.t as i32 + 4) * (t + 1.0).powf(5.5) * d.powi(p.t as i32 + 2);
    let heights: f64 = p.log_a.iter().product();
    -constant * (E * d).ln() * heights * (E * t * p.b).ln()
}

/// Inputs to the small-relation exponent bound for dependent numbers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LvdpParams {
    d: u32,
    omega_k: u32,
    heights: Vec<f64>,
    lambda_d: f64,
}

impl LvdpParams {
    /// `lambda_d` is the field-degree constant; it has no default.
    pub fn new(d: u32, omega_k: u32, heights: Vec<f64>, lambda_d: f64) -> Result<Self> {
        if heights.len() < 2 {
            return Err(Error::InvalidParams("need T >= 2 numbers".into()));
        }
        if d == 0 || omega_k == 0 {
            return Err(Error::InvalidParams("D and omega(K) must be positive".into()));
        }
        if !(lambda_d > 0.0) || !lambda_d.is_finite() {
            return Err(Error::InvalidParams(format!("lambda(D) = {lambda_d} must be > 0")));
        }
        if heights.iter().any(|&h| !(h >= 0.0)) {
            return Err(Error::InvalidParams("heights must be non-negative".into()));
        }
        Ok(LvdpParams {
            d,
            omega_k,
            heights,
            lambda_d,
        })
    }

    pub fn t(&self) -> usize {
        self.heights.len()
    }
}

/// Entry `j` is `(T-1)! * omega(K) * prod_{i != j} (D h_i / lambda(D))`.
pub fn lvdp_exponent_bound(p: &LvdpParams) -> Vec<f64> {
    let t = p.heights.len();
    let fact: f64 = (1..t).map(|k| k as f64).product();
    let scaled: Vec<f64> = p
        .heights
        .iter()
        .map(|&h| p.d as f64 * h / p.lambda_d)
        .collect();
    (0..t)
        .map(|j| {
            let prod: f64 = scaled
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != j)
                .map(|(_, &x)| x)
                .product();
            fact * p.omega_k as f64 * prod
        })
        .collect()
}

/// `log log x / (log log log x + C)`, the lower bound on the combined
/// count of non-zero digits.
///
/// Defined for `x > e^e` with a positive denominator. `x = 16` is inside the
/// domain (`e^e ~ 15.154`) with `log log log 16 ~ 0.0195`.
pub fn theorem_bound(x: f64, c: f64) -> Result<f64> {
    if !(x > E.powf(E)) {
        return Err(Error::DomainError(format!("x = {x} must exceed e^e")));
    }
    let ll = x.ln().ln();
    let denom = ll.ln() + c;
    if !(denom > 0.0) {
        return Err(Error::DomainError(format!(
            "log log log x + C = {denom} must be positive"
        )));
    }
    Ok(ll / denom)
}
