//! Digit statistics and empirical length constants.
//!
//! For a base `alpha` the length `L` of an expansion satisfies
//! `log|g|/log|alpha| + e1 <= L <= log|g|/log|alpha| + e2` for constants
//! depending only on the base. The constants are not known in closed form,
//! so [`kp_empirical_constants`] estimates them as the extremes of the
//! defect `L - log|g|/log|alpha|` over a norm ball.

use serde::{Deserialize, Serialize};

use crate::cns::CnsBase;
use crate::error::{Error, Result};
use crate::ring::{lattice_points_by_norm, LatticePoint, QuadInt};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DigitStats {
    /// Number of non-zero digits.
    pub z: u64,
    /// Sum of digits.
    pub s: u64,
    /// Highest exponent.
    pub l: u64,
    /// `L - log|gamma| / log|alpha|`.
    pub defect: f64,
}

impl DigitStats {
    /// Statistics from a digit vector and `log |gamma|`.
    pub fn from_digits(digits: &[u64], ln_modulus: f64, base: &CnsBase) -> Self {
        let (z, s) = digits
            .iter()
            .filter(|&&d| d != 0)
            .fold((0, 0), |(z, s), &d| (z + 1, s + d));
        let l = digits.len() as u64 - 1;
        DigitStats {
            z,
            s,
            l,
            defect: l as f64 - ln_modulus / base.ln_mod_alpha(),
        }
    }
}

pub fn stats(gamma: &QuadInt, base: &CnsBase) -> Result<DigitStats> {
    if gamma.is_zero() {
        return Err(Error::ZeroInput);
    }
    let digits = base.expand_digits(gamma)?;
    Ok(DigitStats::from_digits(&digits, gamma.ln_modulus(), base))
}

/// Statistics of a non-zero lattice point.
pub fn point_stats(p: &LatticePoint, base: &CnsBase) -> Result<DigitStats> {
    let digits = base.expand_point(p)?;
    Ok(DigitStats::from_digits(
        &digits,
        0.5 * (p.norm as f64).ln(),
        base,
    ))
}

/// Empirical envelope `(e1, e2)` of the length defect.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KpConstants {
    pub e1: f64,
    pub e2: f64,
}

impl KpConstants {
    fn empty() -> Self {
        KpConstants {
            e1: f64::INFINITY,
            e2: f64::NEG_INFINITY,
        }
    }

    fn absorb(&mut self, defect: f64) {
        self.e1 = self.e1.min(defect);
        self.e2 = self.e2.max(defect);
    }

    pub fn width(&self) -> f64 {
        self.e2 - self.e1
    }

    /// Whether `other` lies inside `self` widened by `slack` on each side.
    pub fn contains(&self, other: &KpConstants, slack: f64) -> bool {
        other.e1 >= self.e1 - slack && other.e2 <= self.e2 + slack
    }
}

/// Minimum and maximum defect over all `gamma` with `0 < norm(gamma) <= n_max`.
pub fn kp_empirical_constants(base: &CnsBase, n_max: u64) -> Result<KpConstants> {
    let profile = kp_envelope_profile(base, &[n_max])?;
    Ok(profile[0].1)
}

/// Running envelopes at each checkpoint of a single sweep.
///
/// Checkpoints are processed in ascending order; the result pairs each with
/// the envelope over norms up to it.
pub fn kp_envelope_profile(base: &CnsBase, checkpoints: &[u64]) -> Result<Vec<(u64, KpConstants)>> {
    let mut marks: Vec<u64> = checkpoints.to_vec();
    marks.sort_unstable();
    marks.dedup();
    let Some(&n_max) = marks.last() else {
        return Ok(Vec::new());
    };
    let points = lattice_points_by_norm(base.field(), n_max);
    let mut env = KpConstants::empty();
    let mut out = Vec::with_capacity(marks.len());
    let mut next = 0;
    for p in &points {
        while next < marks.len() && p.norm > marks[next] {
            out.push((marks[next], env));
            next += 1;
        }
        env.absorb(point_stats(p, base)?.defect);
    }
    while next < marks.len() {
        out.push((marks[next], env));
        next += 1;
    }
    Ok(out)
}
