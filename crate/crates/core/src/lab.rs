//! Two-base experiment harness.
//!
//! Reproduces, on concrete elements, the quantities that drive the lower
//! bound on `Z(g; alpha) + Z(g; beta)`: the splitting of an expansion at an
//! index, the linear form `Lambda` built from the two splittings, the interval
//! case analysis on the gaps between exponents, and the sweep that measures
//! the combined digit counts over a norm ball.

use std::io::{self, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::theorem_bound;
use crate::cns::{make_base, CnsBase};
use crate::digitstat::{DigitStats, KpConstants};
use crate::error::{Error, Result};
use crate::multdep::mult_dep;
use crate::ring::{lattice_points_by_norm, ln_bigint, FieldSpec, LatticePoint, QuadInt};

/// Multiplier on the right-hand side of the `|Lambda|` upper bound.
pub const LAMBDA_SLACK: f64 = 2.0;
/// Additive slack on the bound for `max(m_p, l_q)`.
pub const B_BOUND_SLACK: f64 = 1.0;
/// Default `c1` in `theta = c1 * log log |g|`.
pub const DEFAULT_C1: f64 = 2.0;
/// Smallest modulus for which the case analysis is run.
pub const MIN_MODULUS: f64 = 16.0;

/// Non-zero terms `(exponent, digit)` of an expansion, highest exponent first.
pub fn nonzero_terms(gamma: &QuadInt, base: &CnsBase) -> Result<Vec<(usize, u64)>> {
    if gamma.is_zero() {
        return Err(Error::ZeroInput);
    }
    Ok(base.expand(gamma)?.nonzero_terms())
}

/// The splitting `(alpha - 1) g = A1 alpha^(m_p) + A2` at index `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct Split {
    pub a1: QuadInt,
    pub a2: QuadInt,
    pub m_p: usize,
}

impl Split {
    /// `A1 alpha^(m_p) + A2`.
    pub fn recombine(&self, base: &CnsBase) -> QuadInt {
        &(&self.a1 * &base.alpha().pow(self.m_p as u32)) + &self.a2
    }
}

fn sum_terms(terms: &[(usize, u64)], shift: usize, base: &CnsBase) -> QuadInt {
    let field = base.field();
    terms.iter().fold(field.zero(), |acc, &(m, a)| {
        &acc + &(&QuadInt::integer(field, a) * &base.alpha().pow((m - shift) as u32))
    })
}

/// Splitting from precomputed terms; `p` is 1-based.
pub fn split_terms(terms: &[(usize, u64)], base: &CnsBase, p: usize) -> Result<Split> {
    if p == 0 || p > terms.len() {
        return Err(Error::IndexOutOfRange {
            index: p,
            max: terms.len(),
        });
    }
    let alpha_minus_one = base.alpha() - &base.field().one();
    let m_p = terms[p - 1].0;
    let a1 = &alpha_minus_one * &sum_terms(&terms[..p], m_p, base);
    let a2 = &alpha_minus_one * &sum_terms(&terms[p..], 0, base);
    Ok(Split { a1, a2, m_p })
}

pub fn split(gamma: &QuadInt, base: &CnsBase, p: usize) -> Result<Split> {
    split_terms(&nonzero_terms(gamma, base)?, base, p)
}

/// Exact check of `(b-1)(A1 a^(m_p) + A2) = (a-1)(B1 b^(l_q) + B2)`, both
/// sides also compared against `(a-1)(b-1) g`.
pub fn verify_split_identity(
    gamma: &QuadInt,
    base_a: &CnsBase,
    base_b: &CnsBase,
    p: usize,
    q: usize,
) -> Result<bool> {
    let sa = split(gamma, base_a, p)?;
    let sb = split(gamma, base_b, q)?;
    Ok(split_identity_holds(gamma, base_a, base_b, &sa, &sb))
}

fn split_identity_holds(
    gamma: &QuadInt,
    base_a: &CnsBase,
    base_b: &CnsBase,
    sa: &Split,
    sb: &Split,
) -> bool {
    let one = gamma.field().one();
    let am1 = base_a.alpha() - &one;
    let bm1 = base_b.alpha() - &one;
    let lhs = &bm1 * &sa.recombine(base_a);
    let rhs = &am1 * &sb.recombine(base_b);
    let target = &(&am1 * &bm1) * gamma;
    lhs == rhs && lhs == target
}

/// Two bases ordered so that `|alpha| >= |beta|`, with their length
/// constants.
#[derive(Clone, Debug, PartialEq)]
pub struct BasePair {
    pub alpha: CnsBase,
    pub beta: CnsBase,
    pub kp_alpha: KpConstants,
    pub kp_beta: KpConstants,
    /// True when the inputs were given in the other order.
    pub swapped: bool,
}

impl BasePair {
    pub fn new(a: CnsBase, b: CnsBase, kp_a: KpConstants, kp_b: KpConstants) -> Result<Self> {
        if a.field() != b.field() {
            return Err(Error::FieldMismatch(a.field().d(), b.field().d()));
        }
        if a.f() >= b.f() {
            Ok(BasePair {
                alpha: a,
                beta: b,
                kp_alpha: kp_a,
                kp_beta: kp_b,
                swapped: false,
            })
        } else {
            Ok(BasePair {
                alpha: b,
                beta: a,
                kp_alpha: kp_b,
                kp_beta: kp_a,
                swapped: true,
            })
        }
    }

    pub fn constants(&self) -> SplitConstants {
        let one = self.alpha.field().one();
        let c3 = |base: &CnsBase| {
            let m = base.mod_alpha();
            base.eps() as f64 * m * (base.alpha() - &one).modulus() / (m - 1.0)
        };
        SplitConstants {
            c3: c3(&self.alpha),
            c4: self.alpha.mod_alpha().powf(-self.kp_alpha.e2),
            d3: c3(&self.beta),
            d4: self.beta.mod_alpha().powf(-self.kp_beta.e2),
        }
    }
}

/// `c3 = eps_a |alpha (alpha - 1)| / (|alpha| - 1)`, `c4 = |alpha|^(-e2)` and
/// the `beta` analogues `d3`, `d4`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplitConstants {
    pub c3: f64,
    pub c4: f64,
    pub d3: f64,
    pub d4: f64,
}

/// Both splittings of one element together with the constants.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitQuantities {
    pub alpha_split: Split,
    pub beta_split: Split,
    pub constants: SplitConstants,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case")]
pub enum CaseKind {
    AllIntervalsHit,
    /// Interval `s` contains no gap; `p`, `q` are 1-based indices.
    GapFound { s: u32, p: usize, q: usize },
}

/// Outcome of the interval case analysis for one element.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseReport {
    pub theta: f64,
    pub k: u32,
    /// `(log|g| / log|alpha| + e1) / 2`, the quantity `theta^k` is fitted under.
    pub half_length: f64,
    #[serde(flatten)]
    pub case: CaseKind,
    /// Non-zero digit counts `r`, `t` and top exponents `m1`, `l1`.
    pub r: usize,
    pub t: usize,
    pub m1: usize,
    pub l1: usize,
    /// Whether `theta^s <= m1 - m_{p+1}` and the `l` analogue hold (with
    /// `m_{r+1} = l_{t+1} = 0`); always true when no gap was found.
    pub gap_bounds_ok: bool,
    pub swapped: bool,
}

fn interval_bounds(theta: f64, s: u32) -> (f64, f64) {
    let lo = if s == 1 { 0.0 } else { theta.powi(s as i32 - 1) };
    (lo, theta.powi(s as i32))
}

/// Runs the case analysis for `gamma` with `theta = c1 log log |gamma|`.
pub fn case_split(gamma: &QuadInt, pair: &BasePair, c1: f64) -> Result<CaseReport> {
    let ln_mod = gamma.ln_modulus();
    if !(ln_mod > MIN_MODULUS.ln()) {
        return Err(Error::DomainError(format!(
            "|{gamma}| must exceed {MIN_MODULUS}"
        )));
    }
    if !(c1 > 1.0) {
        return Err(Error::DomainError(format!("c1 = {c1} must exceed 1")));
    }
    let terms_a = nonzero_terms(gamma, &pair.alpha)?;
    let terms_b = nonzero_terms(gamma, &pair.beta)?;
    Ok(case_split_terms(ln_mod, &terms_a, &terms_b, pair, c1))
}

fn case_split_terms(
    ln_mod: f64,
    terms_a: &[(usize, u64)],
    terms_b: &[(usize, u64)],
    pair: &BasePair,
    c1: f64,
) -> CaseReport {
    let theta = c1 * ln_mod.ln();
    let half_length = 0.5 * (ln_mod / pair.alpha.ln_mod_alpha() + pair.kp_alpha.e1);
    let mut k = 0u32;
    while theta.powi(k as i32 + 1) <= half_length {
        k += 1;
    }
    let m1 = terms_a[0].0;
    let l1 = terms_b[0].0;
    let gaps_a: Vec<usize> = terms_a.iter().skip(1).map(|&(m, _)| m1 - m).collect();
    let gaps_b: Vec<usize> = terms_b.iter().skip(1).map(|&(l, _)| l1 - l).collect();
    let mut report = CaseReport {
        theta,
        k,
        half_length,
        case: CaseKind::AllIntervalsHit,
        r: terms_a.len(),
        t: terms_b.len(),
        m1,
        l1,
        gap_bounds_ok: true,
        swapped: pair.swapped,
    };
    for s in 1..=k {
        let (lo, hi) = interval_bounds(theta, s);
        let hit = |g: &usize| (*g as f64) > lo && (*g as f64) <= hi;
        if gaps_a.iter().any(hit) || gaps_b.iter().any(hit) {
            continue;
        }
        let below = theta.powi(s as i32 - 1);
        // gaps are increasing, so the indices with gap <= theta^(s-1) form a prefix
        let p = 1 + gaps_a.iter().filter(|&&g| g as f64 <= below).count();
        let q = 1 + gaps_b.iter().filter(|&&g| g as f64 <= below).count();
        let next_gap = |terms: &[(usize, u64)], top: usize, idx: usize| {
            let next = terms.get(idx).map_or(0, |&(m, _)| m);
            (top - next) as f64
        };
        report.gap_bounds_ok =
            hi <= next_gap(terms_a, m1, p) && hi <= next_gap(terms_b, l1, q);
        report.case = CaseKind::GapFound { s, p, q };
        break;
    }
    report
}

/// Result of the `|Lambda|` upper-bound check.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LambdaCheck {
    pub lambda_abs: f64,
    pub rhs: f64,
    pub holds: bool,
    /// `Lambda = 0` exactly.
    pub degenerate: bool,
    pub a2_zero: bool,
    pub b2_zero: bool,
}

/// Computes `Lambda = (b-1) A1 a^(m_p) / ((a-1) B1 b^(l_q)) - 1` from exact
/// quantities and compares `|Lambda|` with
/// `(c3 d3 / (|(a-1)(b-1)| c4 d4) + c3 / (|a-1| c4)) |b|^(-theta^s)`.
pub fn lambda_and_bound_check(
    gamma: &QuadInt,
    pair: &BasePair,
    report: &CaseReport,
) -> Result<LambdaCheck> {
    let CaseKind::GapFound { s, p, q } = report.case else {
        return Err(Error::NotGapCase);
    };
    let q_all = split_quantities(gamma, pair, p, q)?;
    Ok(lambda_check_from(&q_all, pair, report.theta, s))
}

/// Splits `gamma` in both bases of the pair at `(p, q)`.
pub fn split_quantities(
    gamma: &QuadInt,
    pair: &BasePair,
    p: usize,
    q: usize,
) -> Result<SplitQuantities> {
    Ok(SplitQuantities {
        alpha_split: split(gamma, &pair.alpha, p)?,
        beta_split: split(gamma, &pair.beta, q)?,
        constants: pair.constants(),
    })
}

fn lambda_check_from(sq: &SplitQuantities, pair: &BasePair, theta: f64, s: u32) -> LambdaCheck {
    let one = pair.alpha.field().one();
    let am1 = pair.alpha.alpha() - &one;
    let bm1 = pair.beta.alpha() - &one;
    let (sa, sb) = (&sq.alpha_split, &sq.beta_split);
    let num = &(&bm1 * &sa.a1) * &pair.alpha.alpha().pow(sa.m_p as u32);
    let den = &(&am1 * &sb.a1) * &pair.beta.alpha().pow(sb.m_p as u32);
    let diff = &num - &den;
    let degenerate = diff.is_zero();
    let lambda_abs = if degenerate {
        0.0
    } else {
        (0.5 * (ln_bigint(&diff.norm()) - ln_bigint(&den.norm()))).exp()
    };
    let SplitConstants { c3, c4, d3, d4 } = sq.constants;
    let (am1_abs, bm1_abs) = (am1.modulus(), bm1.modulus());
    let coeff = c3 * d3 / (am1_abs * bm1_abs * c4 * d4) + c3 / (am1_abs * c4);
    let rhs = coeff * (-theta.powi(s as i32) * pair.beta.ln_mod_alpha()).exp();
    LambdaCheck {
        lambda_abs,
        rhs,
        holds: lambda_abs <= LAMBDA_SLACK * rhs,
        degenerate,
        a2_zero: sa.a2.is_zero(),
        b2_zero: sb.a2.is_zero(),
    }
}

/// Check of `max(1, m_p, l_q) <= (1/log|beta| + max(e2)/log 16) log|g| + slack`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BBoundCheck {
    pub b: u64,
    pub bound: f64,
    pub holds: bool,
}

pub fn b_bound_check(gamma: &QuadInt, pair: &BasePair, report: &CaseReport) -> Result<BBoundCheck> {
    let CaseKind::GapFound { p, q, .. } = report.case else {
        return Err(Error::NotGapCase);
    };
    let terms_a = nonzero_terms(gamma, &pair.alpha)?;
    let terms_b = nonzero_terms(gamma, &pair.beta)?;
    let index_err = |index, max| Error::IndexOutOfRange { index, max };
    let m_p = terms_a.get(p - 1).ok_or(index_err(p, terms_a.len()))?.0;
    let l_q = terms_b.get(q - 1).ok_or(index_err(q, terms_b.len()))?.0;
    let b = 1.max(m_p).max(l_q) as u64;
    let e2 = pair.kp_alpha.e2.max(pair.kp_beta.e2);
    let bound = (1.0 / pair.beta.ln_mod_alpha() + e2 / MIN_MODULUS.ln()) * gamma.ln_modulus();
    Ok(BBoundCheck {
        b,
        bound,
        holds: b as f64 <= bound + B_BOUND_SLACK,
    })
}

/// One row of the two-base sweep.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub a: i64,
    pub b: i64,
    pub norm: u64,
    pub abs: f64,
    pub za: u64,
    pub sa: u64,
    pub la: u64,
    pub zb: u64,
    pub sb: u64,
    pub lb: u64,
    pub lhs: u64,
    /// `theorem_bound(abs, 0)`, absent where undefined (`abs <= e^e`).
    pub bound_c0: Option<f64>,
}

pub const CSV_HEADER: &str = "a,b,norm,abs,Za,Sa,La,Zb,Sb,Lb,lhs,bound_C0";

impl SweepRecord {
    pub fn compute(p: &LatticePoint, base_a: &CnsBase, base_b: &CnsBase) -> Result<Self> {
        let ln_mod = 0.5 * (p.norm as f64).ln();
        let sa = DigitStats::from_digits(&base_a.expand_point(p)?, ln_mod, base_a);
        let sb = DigitStats::from_digits(&base_b.expand_point(p)?, ln_mod, base_b);
        let abs = (p.norm as f64).sqrt();
        Ok(SweepRecord {
            a: p.a,
            b: p.b,
            norm: p.norm,
            abs,
            za: sa.z,
            sa: sa.s,
            la: sa.l,
            zb: sb.z,
            sb: sb.s,
            lb: sb.l,
            lhs: sa.z + sb.z,
            bound_c0: theorem_bound(abs, 0.0).ok(),
        })
    }

    pub fn gamma(&self, field: FieldSpec) -> QuadInt {
        QuadInt::from_i64(field, self.a, self.b)
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.a,
            self.b,
            self.norm,
            fmt_sig(self.abs, 9),
            self.za,
            self.sa,
            self.la,
            self.zb,
            self.sb,
            self.lb,
            self.lhs,
            self.bound_c0.map(|x| fmt_sig(x, 9)).unwrap_or_default(),
        )
    }
}

/// Formats `x` with `sig` significant digits, like C's `%.{sig}g`.
pub fn fmt_sig(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", sig - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= sig as i32 {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

const SWEEP_CHUNK: usize = 1 << 15;

/// Streams the sweep records over `0 < norm <= n_max` in `(norm, a, b)` order.
///
/// Records are computed chunk by chunk on `threads` workers (the global rayon
/// pool when `None`); the callback always sees them in order, so the output
/// does not depend on the worker count.
pub fn sweep_each<F>(
    base_a: &CnsBase,
    base_b: &CnsBase,
    n_max: u64,
    threads: Option<usize>,
    mut f: F,
) -> Result<()>
where
    F: FnMut(&SweepRecord) -> Result<()>,
{
    if base_a.field() != base_b.field() {
        return Err(Error::FieldMismatch(base_a.field().d(), base_b.field().d()));
    }
    if mult_dep(base_a.alpha(), base_b.alpha())?.dependent {
        return Err(Error::DependentBases(
            base_a.alpha().to_string(),
            base_b.alpha().to_string(),
        ));
    }
    let points = lattice_points_by_norm(base_a.field(), n_max);
    let pool = match threads {
        Some(n) => Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::InvalidParams(e.to_string()))?,
        ),
        None => None,
    };
    for chunk in points.chunks(SWEEP_CHUNK) {
        let work = || {
            chunk
                .par_iter()
                .map(|p| SweepRecord::compute(p, base_a, base_b))
                .collect::<Result<Vec<_>>>()
        };
        let records = match &pool {
            Some(pool) => pool.install(work)?,
            None => work()?,
        };
        for r in &records {
            f(r)?;
        }
    }
    Ok(())
}

/// Collects the full sweep.
pub fn sweep(base_a: &CnsBase, base_b: &CnsBase, n_max: u64) -> Result<Vec<SweepRecord>> {
    let mut out = Vec::new();
    sweep_each(base_a, base_b, n_max, None, |r| {
        out.push(*r);
        Ok(())
    })?;
    Ok(out)
}

/// Writes the sweep as CSV with a header row.
pub fn write_csv<'a, W: Write>(
    mut w: W,
    records: impl IntoIterator<Item = &'a SweepRecord>,
) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in records {
        writeln!(w, "{}", r.csv_row())?;
    }
    Ok(())
}

/// Smallest `C >= 0` making every considered record satisfy the bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalC {
    pub c_emp: f64,
    /// Coordinates of the record attaining the largest candidate.
    pub argmax: (i64, i64),
    pub considered: u64,
}

impl EmpiricalC {
    /// `{"C_emp":…, "n_max":…, "argmax_gamma":"a+b*w[d]"}`.
    pub fn to_json(&self, field: FieldSpec, n_max: u64) -> String {
        #[derive(Serialize)]
        struct Report {
            #[serde(rename = "C_emp")]
            c_emp: f64,
            n_max: u64,
            argmax_gamma: String,
        }
        let argmax = QuadInt::from_i64(field, self.argmax.0, self.argmax.1);
        serde_json::to_string(&Report {
            c_emp: self.c_emp,
            n_max,
            argmax_gamma: argmax.to_string(),
        })
        .expect("plain struct serializes")
    }
}

/// Streaming form of [`empirical_c`].
#[derive(Clone, Debug, Default)]
pub struct EmpiricalCAccumulator {
    best: Option<(f64, (i64, i64))>,
    considered: u64,
}

impl EmpiricalCAccumulator {
    /// The `C` making this one record tight, or `None` when `|g| <= 16`.
    pub fn candidate(r: &SweepRecord) -> Option<f64> {
        if r.abs <= MIN_MODULUS {
            return None;
        }
        let ll = r.abs.ln().ln();
        Some(ll / r.lhs as f64 - ll.ln())
    }

    pub fn push(&mut self, r: &SweepRecord) {
        if let Some(c) = Self::candidate(r) {
            self.considered += 1;
            if self.best.is_none_or(|(b, _)| c > b) {
                self.best = Some((c, (r.a, r.b)));
            }
        }
    }

    pub fn finish(&self) -> Result<EmpiricalC> {
        let (c, argmax) = self.best.ok_or(Error::EmptyInput)?;
        Ok(EmpiricalC {
            c_emp: c.max(0.0),
            argmax,
            considered: self.considered,
        })
    }
}

pub fn empirical_c<'a>(records: impl IntoIterator<Item = &'a SweepRecord>) -> Result<EmpiricalC> {
    let mut acc = EmpiricalCAccumulator::default();
    for r in records {
        acc.push(r);
    }
    acc.finish()
}

/// For `alpha^u = beta^v`, checks that every `alpha^(u m)`, `1 <= m <= m_max`,
/// has a single non-zero digit, equal to 1, in both bases.
pub fn dependent_counterexample_check(
    alpha: &QuadInt,
    beta: &QuadInt,
    u: u32,
    v: u32,
    m_max: u32,
) -> Result<bool> {
    if alpha.pow(u) != beta.pow(v) {
        return Err(Error::NotDependent(alpha.to_string(), beta.to_string()));
    }
    let base_a = make_base(alpha.clone())?;
    let base_b = make_base(beta.clone())?;
    for m in 1..=m_max {
        let g = alpha.pow(u * m);
        for base in [&base_a, &base_b] {
            let terms = base.expand(&g)?.nonzero_terms();
            if terms.len() != 1 || terms[0].1 != 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Degenerate-case helper: whether `(b-1) A1 a^(m_p) = (a-1) B1 b^(l_q)`
/// holds exactly, i.e. `Lambda = 0`.
pub fn lambda_is_zero(sq: &SplitQuantities, pair: &BasePair) -> bool {
    let one = pair.alpha.field().one();
    let am1 = pair.alpha.alpha() - &one;
    let bm1 = pair.beta.alpha() - &one;
    // Lambda = ((a-1) B2 - (b-1) A2) / den, so compare the tails directly.
    let lhs: QuadInt = &am1 * &sq.beta_split.a2;
    let rhs: QuadInt = &bm1 * &sq.alpha_split.a2;
    lhs == rhs
}
