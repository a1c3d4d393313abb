//! Checks the proof chain on enumerated data: the convolution inequality
//! and its fiber bounds, the two-sided ball estimates, the head/tail split
//! of the rearranged inequality under the ε schedule, and the final
//! purely-exponential verdict.
//!
//! Every pass/fail decision here uses exact integers or rationals; where a
//! growth rate enters as an interval, each occurrence picks the endpoint
//! that makes the claim harder to satisfy.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::asymptotics::{extract_asymptotics, rat_pow, GrowthAsymptotics};
use crate::enumerate::{
    enumerate_growth, enumerate_with_index, ElementIndex, EnumerationOptions, GrowthTable,
};
use crate::error::{Error, Result};
use crate::presentation::{GroupPresentation, Oracle};
use crate::series::{fit_rational, RationalGrowthFunction, SeriesCoefficients, SeriesKind};
use crate::thinness::{estimate_delta, TriangleSample};
use crate::word::Word;

/// One instance of the convolution inequality
/// 𝔖(n)·𝔖(m) ≤ Σ_{ℓ=0}^{n+m} 𝔖(ℓ)·𝔅(δ+⌈(n+m−ℓ)/2⌉).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvolutionCheck {
    pub n: usize,
    pub m: usize,
    pub delta: u32,
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub holds: bool,
}

/// Radius a table must reach before the (n, m, δ) inequality can be
/// evaluated from it.
pub fn lemma_radius_needed(delta: u32, n: usize, m: usize) -> usize {
    n + m + delta as usize + (n + m).div_ceil(2)
}

pub fn check_lemma_inequality(
    table: &GrowthTable,
    delta: u32,
    n: usize,
    m: usize,
) -> Result<ConvolutionCheck> {
    let required = lemma_radius_needed(delta, n, m);
    if table.radius() < required {
        return Err(Error::RadiusExceeded { required, have: table.radius() });
    }
    let lhs = table.sphere(n)? * table.sphere(m)?;
    let mut rhs = BigInt::zero();
    for ell in 0..=(n + m) {
        let reach = delta as usize + (n + m - ell).div_ceil(2);
        rhs += table.sphere(ell)? * table.ball(reach)?;
    }
    let holds = lhs <= rhs;
    Ok(ConvolutionCheck { n, m, delta, lhs, rhs, holds })
}

/// One product fiber μ⁻¹(g) for μ: S(n)×S(m) → B(n+m), (h,k) ↦ hk.
#[derive(Clone, Debug)]
pub struct FiberWitness {
    /// Canonical geodesic representative of the product value g.
    pub g: Word,
    /// |g|.
    pub ell: usize,
    /// Number of pairs multiplying to g.
    pub fiber_size: u64,
    /// δ + ⌈(n+m−ℓ)/2⌉, the ball radius that must cover the fiber.
    pub reach: usize,
    /// 𝔅(reach).
    pub bound: BigInt,
    /// Midpoint vertex on the stored geodesic of g: the prefix at
    /// ⌊(ℓ+n−m)/2⌋ (the half-integer case takes the shorter prefix).
    pub center: Option<Word>,
}

/// Aggregate result of a fiber sweep over S(n)×S(m).
#[derive(Clone, Debug)]
pub struct FiberCheck {
    pub n: usize,
    pub m: usize,
    pub delta: u32,
    pub pairs: u64,
    pub fibers: u64,
    /// Every observed ℓ = |hk| landed in [|n−m|, n+m].
    pub ell_in_range: bool,
    /// Fibers exceeding their ball bound (the check fails iff nonempty).
    pub violations: Vec<FiberWitness>,
    /// The fiber with the largest fiber_size/bound ratio.
    pub worst: Option<FiberWitness>,
    /// All fibers, materialized only when there are at most
    /// [`FIBER_WITNESS_CAP`] of them; sorted by (ℓ, g).
    pub witnesses: Vec<FiberWitness>,
}

impl FiberCheck {
    pub fn holds(&self) -> bool {
        self.violations.is_empty() && self.ell_in_range
    }
}

/// Above this many distinct fibers, `witnesses` stays empty and only
/// violations and the worst fiber are materialized.
pub const FIBER_WITNESS_CAP: usize = 4096;

/// Sweeps every pair in S(n)×S(m), tallies the fibers of the product map,
/// and checks |μ⁻¹(g)| ≤ 𝔅(δ+⌈(n+m−ℓ)/2⌉) for every value g, with
/// ℓ = |g| confined to [|n−m|, n+m].
///
/// The table must have been enumerated with element stores; oracles without
/// canonical forms additionally build an element index internally (see
/// [`check_fiber_bounds_indexed`] to share one across sweeps).
pub fn check_fiber_bounds(
    p: &GroupPresentation,
    table: &GrowthTable,
    delta: u32,
    n: usize,
    m: usize,
) -> Result<FiberCheck> {
    if table.elements().is_none() {
        return Err(Error::MissingElementStore);
    }
    let needed = (n + m).max(delta as usize + (n + m).div_ceil(2));
    if table.radius() < needed {
        return Err(Error::RadiusExceeded { required: needed, have: table.radius() });
    }
    let (_, index) = enumerate_with_index(p, n + m, &EnumerationOptions::default())?;
    check_fiber_bounds_indexed(p, &index, table, delta, n, m)
}

/// Fiber sweep against a caller-supplied element index (which must cover
/// radius n+m). Tallies are per canonical element id, so the result is
/// independent of pair enumeration order.
pub fn check_fiber_bounds_indexed(
    p: &GroupPresentation,
    index: &ElementIndex,
    table: &GrowthTable,
    delta: u32,
    n: usize,
    m: usize,
) -> Result<FiberCheck> {
    if index.radius() < n + m {
        return Err(Error::RadiusExceeded { required: n + m, have: index.radius() });
    }
    let needed = (n + m).max(delta as usize + (n + m).div_ceil(2));
    if table.radius() < needed {
        return Err(Error::RadiusExceeded { required: needed, have: table.radius() });
    }

    let mut tally = vec![0u32; index.ball_size()];
    let left: Vec<Word> = index.sphere_elements(n)?.to_vec();
    let right: Vec<Word> = index.sphere_elements(m)?.to_vec();
    let mut pairs = 0u64;
    for h in &left {
        for k in &right {
            let id = index.global_id(p, &h.concat(k))?;
            tally[id] += 1;
            pairs += 1;
        }
    }

    let lo = n.abs_diff(m);
    let hi = n + m;
    let mut ell_in_range = true;
    let mut fibers = 0u64;
    let mut violations = Vec::new();
    let mut worst: Option<FiberWitness> = None;
    // worst-ratio comparison fiber_size/bound done in cross-multiplied
    // exact integers
    let beats = |a: &FiberWitness, b: &FiberWitness| -> bool {
        let left = BigInt::from(a.fiber_size) * &b.bound;
        let right = BigInt::from(b.fiber_size) * &a.bound;
        match left.cmp(&right) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => a.fiber_size > b.fiber_size,
        }
    };
    let mut all: Vec<FiberWitness> = Vec::new();
    let mut total_fibers_small = true;

    for (id, &count) in tally.iter().enumerate() {
        if count == 0 {
            continue;
        }
        fibers += 1;
        let ell = index.radius_of_id(id);
        if ell < lo || ell > hi {
            ell_in_range = false;
        }
        let reach = delta as usize + (hi.saturating_sub(ell)).div_ceil(2);
        let bound = table.ball(reach)?.clone();
        let g = index.element(id).clone();
        let center = (ell + n >= m).then(|| g.prefix(((ell + n) - m).min(g.len() * 2) / 2));
        let witness = FiberWitness {
            g,
            ell,
            fiber_size: count as u64,
            reach,
            bound,
            center,
        };
        if BigInt::from(witness.fiber_size) > witness.bound {
            violations.push(witness.clone());
        }
        match &worst {
            Some(w) if !beats(&witness, w) => {}
            _ => worst = Some(witness.clone()),
        }
        if total_fibers_small {
            all.push(witness);
            if all.len() > FIBER_WITNESS_CAP {
                all.clear();
                total_fibers_small = false;
            }
        }
    }
    all.sort_by(|a, b| a.ell.cmp(&b.ell).then_with(|| a.g.shortlex_cmp(&b.g)));
    violations.sort_by(|a, b| a.ell.cmp(&b.ell).then_with(|| a.g.shortlex_cmp(&b.g)));

    Ok(FiberCheck {
        n,
        m,
        delta,
        pairs,
        fibers,
        ell_in_range,
        violations,
        worst,
        witnesses: all,
    })
}

/// One radius row of the two-sided ball estimate
/// C·nᵅ·λⁿ < 𝔅(n) < (Dλ/(λ−1))·nᵅ·λⁿ.
#[derive(Clone, Debug)]
pub struct BallBoundRow {
    pub n: usize,
    pub lower: BigRational,
    pub ball: BigInt,
    pub upper: BigRational,
    pub holds: bool,
}

/// Outcome of the two-sided ball estimate over the tabulated range.
#[derive(Clone, Debug)]
pub enum BallBounds {
    /// λ_lo ≤ 1: the exponential-growth hypothesis fails and the estimate
    /// says nothing (ℤ and ℤ² land here).
    NotApplicable { lambda_lo: BigRational },
    Checked { rows: Vec<BallBoundRow>, all_hold: bool },
}

impl BallBounds {
    pub fn all_hold(&self) -> Option<bool> {
        match self {
            BallBounds::NotApplicable { .. } => None,
            BallBounds::Checked { all_hold, .. } => Some(*all_hold),
        }
    }
}

/// Checks the strict two-sided ball estimate for every tabulated n ≥ 1,
/// with λ_lo in the lower product and λ_hi (and λ_hi/(λ_lo−1)) in the
/// upper one, so that interval slack can only make the check harder.
pub fn check_ball_bounds(table: &GrowthTable, a: &GrowthAsymptotics) -> BallBounds {
    let (lambda_lo, lambda_hi) = &a.lambda;
    if *lambda_lo <= BigRational::one() {
        return BallBounds::NotApplicable { lambda_lo: lambda_lo.clone() };
    }
    let upper_const = &a.d_hat * lambda_hi / (lambda_lo - BigRational::one());
    let mut rows = Vec::with_capacity(table.radius());
    let mut all_hold = true;
    for n in 1..=table.radius() {
        let ball = table.ball(n).expect("n <= radius").clone();
        let shape = rat_pow(&BigRational::from(BigInt::from(n)), a.alpha as usize);
        let lower = &a.c_hat * &shape * rat_pow(lambda_lo, n);
        let upper = &upper_const * &shape * rat_pow(lambda_hi, n);
        let ball_rat = BigRational::from(ball.clone());
        let holds = lower < ball_rat && ball_rat < upper;
        all_hold &= holds;
        rows.push(BallBoundRow { n, lower, ball, upper, holds });
    }
    BallBounds::Checked { rows, all_hold }
}

/// ⌊n^(1/3)⌋ by binary search, exact for all u64.
fn integer_cbrt(n: u64) -> u64 {
    let (mut lo, mut hi) = (0u64, 2_642_246u64); // 2642246³ > u64::MAX ≥ hi³ fails above this
    while lo < hi {
        let mid = (lo + hi + 1) / 2;
        if (mid as u128).pow(3) <= n as u128 {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

/// The ε schedule ε(n) = 2δ + ⌊∛n⌋: grows unboundedly but so slowly that
/// λ^{−ε(n)} still beats every polynomial factor in n.
pub fn epsilon_default(n: u64, delta: u32) -> u64 {
    debug_assert!(n >= 1 && delta >= 1);
    2 * delta as u64 + integer_cbrt(n)
}

/// Head and tail bounds of the split right-hand side at one n, next to the
/// constant left side they must eventually undercut (only possible when
/// α ≥ 1; for α = 0 the tail provably stays large).
#[derive(Clone, Debug)]
pub struct RhsSplit {
    pub n: u64,
    pub epsilon: u64,
    pub lhs_const: BigRational,
    pub head_bound: BigRational,
    pub tail_bound: BigRational,
}

impl RhsSplit {
    pub fn contradicts(&self) -> bool {
        &self.head_bound + &self.tail_bound < self.lhs_const
    }
}

/// Evaluates the split at one n: lhs_const = C²(λ−1)/(2ᵅD²λ) rounded down
/// (λ_lo), head = 2n(1+δ/n)ᵅλ^{δ−ε(n)} rounded up (λ_lo — the exponent is
/// negative), tail = 2λ^δ·ε(n)·((δ+ε(n))/n)ᵅ rounded up (λ_hi). Returns
/// `None` when λ_lo ≤ 1 (no exponential growth, nothing to split).
pub fn evaluate_rhs_split(
    n: u64,
    delta: u32,
    alpha: u32,
    lambda: &(BigRational, BigRational),
    c_hat: &BigRational,
    d_hat: &BigRational,
) -> Option<RhsSplit> {
    let (lambda_lo, lambda_hi) = lambda;
    if *lambda_lo <= BigRational::one() {
        return None;
    }
    let a = alpha as usize;
    let two = BigRational::from(BigInt::from(2));
    let lhs_const = c_hat * c_hat * (lambda_lo - BigRational::one())
        / (rat_pow(&two, a) * d_hat * d_hat * lambda_lo);

    let epsilon = epsilon_default(n, delta);
    let n_rat = BigRational::from(BigInt::from(n));
    let delta_rat = BigRational::from(BigInt::from(delta));
    let eps_rat = BigRational::from(BigInt::from(epsilon));

    // ε(n) ≥ 2δ makes the λ exponent δ−ε(n) ≤ −δ < 0.
    let drop = (epsilon - delta as u64) as usize;
    let head_bound = &two * &n_rat
        * rat_pow(&((&n_rat + &delta_rat) / &n_rat), a)
        * rat_pow(&(BigRational::one() / lambda_lo), drop);

    let tail_bound = &two
        * rat_pow(lambda_hi, delta as usize)
        * &eps_rat
        * rat_pow(&((&delta_rat + &eps_rat) / &n_rat), a);

    Some(RhsSplit { n, epsilon, lhs_const, head_bound, tail_bound })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PureVerdict {
    VerifiedOnRange,
    FailsOnRange,
    Inconclusive,
}

impl std::fmt::Display for PureVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PureVerdict::VerifiedOnRange => "verified-on-range",
            PureVerdict::FailsOnRange => "fails-on-range",
            PureVerdict::Inconclusive => "inconclusive",
        })
    }
}

/// The purely-exponential check: D_ball = max over tabulated n of
/// max(𝔅(n)/λ_loⁿ, λ_hiⁿ/𝔅(n)), with a verdict about whether that maximum
/// has stopped moving.
#[derive(Clone, Debug)]
pub struct PureExponential {
    pub lambda: (BigRational, BigRational),
    pub d_ball: BigRational,
    pub verdict: PureVerdict,
    /// Number of trailing radii examined for stability.
    pub window: usize,
}

/// Verdict rule, on the running maximum M(n) of the per-radius ratio and
/// its increments over the last w = max(⌈R/3⌉, 2) radii: verified-on-range
/// iff λ_lo > 1 and the increments either all sit below 10⁻⁶·M(R) or decay
/// (the most recent ⌈w/2⌉ increments peak at most 3/4 of the older ones);
/// fails-on-range iff every windowed increment is positive and they do not
/// decay; inconclusive otherwise.
pub fn verify_purely_exponential(
    table: &GrowthTable,
    lambda: &(BigRational, BigRational),
) -> PureExponential {
    let r = table.radius();
    assert!(r >= 2, "stability needs at least radii 0..=2");
    let (lambda_lo, lambda_hi) = lambda;
    assert!(lambda_lo.is_positive());

    let ratio = |n: usize| -> BigRational {
        let ball = BigRational::from(table.ball(n).expect("n <= radius").clone());
        let down = &ball / rat_pow(lambda_lo, n);
        let up = rat_pow(lambda_hi, n) / &ball;
        if down >= up {
            down
        } else {
            up
        }
    };
    let mut running: Vec<BigRational> = Vec::with_capacity(r + 1);
    let mut max = ratio(0);
    running.push(max.clone());
    for n in 1..=r {
        let v = ratio(n);
        if v > max {
            max = v;
        }
        running.push(max.clone());
    }
    let d_ball = running[r].clone();

    let window = r.div_ceil(3).max(2);
    let increments: Vec<BigRational> = (r - window + 1..=r)
        .map(|n| &running[n] - &running[n - 1])
        .collect();
    let newer_len = window.div_ceil(2);
    let (older, newer) = increments.split_at(window - newer_len);
    let peak = |xs: &[BigRational]| xs.iter().cloned().max().unwrap_or_else(BigRational::zero);
    let s_old = peak(older);
    let s_new = peak(newer);

    let rel = &d_ball * BigRational::new(BigInt::one(), BigInt::from(1_000_000));
    let stable = increments.iter().all(|i| *i <= rel);
    let decaying = &s_new * BigRational::from(BigInt::from(4))
        <= &s_old * BigRational::from(BigInt::from(3));
    let all_positive = increments.iter().all(|i| i.is_positive());

    let verdict = if *lambda_lo > BigRational::one() && (stable || decaying) {
        PureVerdict::VerifiedOnRange
    } else if all_positive && s_new >= s_old {
        PureVerdict::FailsOnRange
    } else {
        PureVerdict::Inconclusive
    };

    PureExponential { lambda: lambda.clone(), d_ball, verdict, window }
}

#[derive(Clone, Debug, Serialize)]
pub struct StageError {
    pub stage: &'static str,
    pub message: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReportVerdict {
    Verified,
    FailsOnRange,
    Inconclusive,
}

impl std::fmt::Display for ReportVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ReportVerdict::Verified => "verified",
            ReportVerdict::FailsOnRange => "fails-on-range",
            ReportVerdict::Inconclusive => "inconclusive",
        })
    }
}

/// Everything the pipeline establishes about one group at one radius.
/// Stage failures are embedded rather than thrown, so a report always
/// comes back.
#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub group: String,
    pub radius: usize,
    /// δ as supplied (file or override).
    pub delta_input: u32,
    /// Empirical thinness floor measured on a small ball.
    pub delta_hat: Option<u32>,
    /// max(delta_input, delta_hat): the δ every check below uses.
    pub delta_used: u32,
    pub fit: Option<RationalGrowthFunction>,
    pub asymptotics: Option<GrowthAsymptotics>,
    pub lemma_checks: Vec<ConvolutionCheck>,
    pub lemma_all_hold: bool,
    pub ball_bounds: Option<BallBounds>,
    /// Split rows at the fitted α for n = 10³, 10⁶, 10⁹ (empty when the
    /// growth hypothesis fails).
    pub split_terms: Vec<RhsSplit>,
    /// First ladder n at which head+tail < lhs_const when α is forced to 1
    /// with this group's λ, δ, C, D — the mechanism that excludes every
    /// positive α.
    pub alpha_one_first_contradiction: Option<u64>,
    pub pure_exponential: Option<PureExponential>,
    pub stage_errors: Vec<StageError>,
    pub verdict: ReportVerdict,
}

/// Ladder probed by the contradiction engine and reported in split rows.
pub const PROBE_LADDER: [u64; 9] =
    [10, 100, 1_000, 10_000, 100_000, 1_000_000, 10_000_000, 100_000_000, 1_000_000_000];

/// Radius of the exhaustive thinness floor measurement: small, because its
/// cost is cubic in the ball size (and the small-cancellation oracle needs
/// an index twice as deep).
fn thinness_floor_radius(p: &GroupPresentation) -> usize {
    match p.oracle() {
        Oracle::DehnSmallCancellation(_) => 2,
        _ => 3,
    }
}

/// Runs the whole chain on one group: enumerate, fit, extract asymptotics,
/// sweep the convolution inequality, check ball bounds, evaluate the split
/// and the α ≥ 1 contradiction, and judge pure exponentiality.
///
/// The verdict is `verified` only if every applicable check passes and
/// α = 0; hypothesis failures (λ ≤ 1, growing D_ball) yield
/// `fails-on-range`; missing stages yield `inconclusive`.
pub fn run_theorem_report(
    p: &GroupPresentation,
    radius: usize,
    delta_override: Option<u32>,
) -> TheoremReport {
    let opts = EnumerationOptions::default();
    let delta_input = delta_override.or(p.delta()).unwrap_or(1);
    let mut errors: Vec<StageError> = Vec::new();
    let mut report = TheoremReport {
        group: p.name().to_string(),
        radius,
        delta_input,
        delta_hat: None,
        delta_used: delta_input,
        fit: None,
        asymptotics: None,
        lemma_checks: Vec::new(),
        lemma_all_hold: false,
        ball_bounds: None,
        split_terms: Vec::new(),
        alpha_one_first_contradiction: None,
        pure_exponential: None,
        stage_errors: Vec::new(),
        verdict: ReportVerdict::Inconclusive,
    };

    let table = match enumerate_growth(p, radius, &opts) {
        Ok(t) => t,
        Err(e) => {
            errors.push(StageError { stage: "enumerate", message: e.to_string() });
            report.stage_errors = errors;
            return report;
        }
    };

    match estimate_delta(p, thinness_floor_radius(p).min(radius), TriangleSample::Exhaustive, &opts)
    {
        Ok(t) => {
            report.delta_hat = Some(t.delta_hat);
            report.delta_used = delta_input.max(t.delta_hat);
        }
        Err(e) => errors.push(StageError { stage: "thinness-floor", message: e.to_string() }),
    }

    let fit = SeriesCoefficients::new(SeriesKind::Spherical, table.spheres().to_vec())
        .and_then(|s| fit_rational(&s, radius.saturating_sub(3) / 2));
    match fit {
        Ok(f) => report.fit = Some(f),
        Err(e) => errors.push(StageError { stage: "fit", message: e.to_string() }),
    }

    if let Some(f) = &report.fit {
        match extract_asymptotics(f, &table) {
            Ok(a) => report.asymptotics = Some(a),
            Err(e) => errors.push(StageError { stage: "asymptotics", message: e.to_string() }),
        }
    }

    let delta = report.delta_used;
    let mut all_hold = true;
    let mut sum = 0;
    while lemma_radius_needed(delta, 0, sum) <= radius {
        sum += 1;
    }
    for n in 0..sum {
        for m in 0..sum {
            if lemma_radius_needed(delta, n, m) > radius {
                continue;
            }
            match check_lemma_inequality(&table, delta, n, m) {
                Ok(c) => {
                    all_hold &= c.holds;
                    report.lemma_checks.push(c);
                }
                Err(e) => errors.push(StageError { stage: "lemma", message: e.to_string() }),
            }
        }
    }
    report.lemma_all_hold = all_hold && !report.lemma_checks.is_empty();

    if let Some(a) = &report.asymptotics {
        report.ball_bounds = Some(check_ball_bounds(&table, a));

        for n in [1_000, 1_000_000, 1_000_000_000] {
            if let Some(row) = evaluate_rhs_split(n, delta, a.alpha, &a.lambda, &a.c_hat, &a.d_hat)
            {
                report.split_terms.push(row);
            }
        }
        report.alpha_one_first_contradiction = PROBE_LADDER.iter().copied().find(|&n| {
            evaluate_rhs_split(n, delta, 1, &a.lambda, &a.c_hat, &a.d_hat)
                .is_some_and(|row| row.contradicts())
        });

        if radius >= 2 {
            report.pure_exponential = Some(verify_purely_exponential(&table, &a.lambda));
        }
    }

    report.verdict = judge(&report, &errors);
    report.stage_errors = errors;
    report
}

fn judge(report: &TheoremReport, errors: &[StageError]) -> ReportVerdict {
    let pure = report.pure_exponential.as_ref().map(|p| p.verdict);
    let ball = report.ball_bounds.as_ref().and_then(|b| b.all_hold());
    if pure == Some(PureVerdict::FailsOnRange)
        || ball == Some(false)
        || (!report.lemma_checks.is_empty() && !report.lemma_all_hold)
    {
        return ReportVerdict::FailsOnRange;
    }
    if !errors.is_empty() {
        return ReportVerdict::Inconclusive;
    }
    let alpha_zero = report.asymptotics.as_ref().is_some_and(|a| a.alpha == 0);
    if alpha_zero
        && report.lemma_all_hold
        && ball == Some(true)
        && pure == Some(PureVerdict::VerifiedOnRange)
    {
        ReportVerdict::Verified
    } else {
        ReportVerdict::Inconclusive
    }
}

fn approx(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

impl TheoremReport {
    /// Human-readable summary; one block per pipeline stage.
    pub fn render_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let _ = writeln!(out, "group: {}   radius: {}", self.group, self.radius);
        let _ = writeln!(
            out,
            "delta: input {}, empirical floor {}, used {}",
            self.delta_input,
            self.delta_hat.map_or_else(|| "-".to_string(), |d| d.to_string()),
            self.delta_used
        );
        if let Some(f) = &self.fit {
            let _ = writeln!(
                out,
                "growth function: ({}) / ({})   verified through n = {}",
                f.numerator.display("t"),
                f.denominator.display("t"),
                f.verified_through
            );
        }
        if let Some(a) = &self.asymptotics {
            let _ = writeln!(
                out,
                "lambda in [{}, {}] (~{:.9}), alpha = {}, C = {} (~{:.6}), D = {} (~{:.6})",
                a.lambda.0,
                a.lambda.1,
                approx(&a.lambda.0),
                a.alpha,
                a.c_hat,
                approx(&a.c_hat),
                a.d_hat,
                approx(&a.d_hat)
            );
            for w in &a.warnings {
                let _ = writeln!(out, "  warning: {w}");
            }
        }
        let _ = writeln!(
            out,
            "convolution inequality: {} checks, {}",
            self.lemma_checks.len(),
            if self.lemma_all_hold { "all hold" } else { "VIOLATIONS or empty" }
        );
        match &self.ball_bounds {
            Some(BallBounds::Checked { rows, all_hold }) => {
                let _ = writeln!(
                    out,
                    "ball bounds: {} radii, {}",
                    rows.len(),
                    if *all_hold { "all strict" } else { "VIOLATED" }
                );
            }
            Some(BallBounds::NotApplicable { lambda_lo }) => {
                let _ = writeln!(
                    out,
                    "ball bounds: not applicable (lambda_lo = {} <= 1)",
                    lambda_lo
                );
            }
            None => {}
        }
        for row in &self.split_terms {
            let _ = writeln!(
                out,
                "split at n = {:>10}: eps = {:>4}, head ~{:.3e}, tail ~{:.3e}, lhs ~{:.6}{}",
                row.n,
                row.epsilon,
                approx(&row.head_bound),
                approx(&row.tail_bound),
                approx(&row.lhs_const),
                if row.contradicts() { "  [head+tail < lhs]" } else { "" }
            );
        }
        if let Some(n) = self.alpha_one_first_contradiction {
            let _ = writeln!(out, "forcing alpha = 1 contradicts the fit constants at n = {n}");
        }
        if let Some(p) = &self.pure_exponential {
            let _ = writeln!(
                out,
                "pure exponentiality: D_ball = {} (~{:.9}), window {}, verdict {}",
                p.d_ball,
                approx(&p.d_ball),
                p.window,
                p.verdict
            );
        }
        for e in &self.stage_errors {
            let _ = writeln!(out, "stage {} failed: {}", e.stage, e.message);
        }
        let _ = writeln!(out, "verdict: {}", self.verdict);
        out
    }
}

fn rational_field<S: Serializer>(
    st: &mut S::SerializeStruct,
    name: &'static str,
    r: &BigRational,
) -> std::result::Result<(), S::Error> {
    st.serialize_field(name, &format!("{r}"))
}

impl Serialize for ConvolutionCheck {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("ConvolutionCheck", 6)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("delta", &self.delta)?;
        st.serialize_field("lhs", &self.lhs.to_string())?;
        st.serialize_field("rhs", &self.rhs.to_string())?;
        st.serialize_field("holds", &self.holds)?;
        st.end()
    }
}

impl FiberWitness {
    /// Words render through the alphabet, so JSON export takes it.
    pub fn to_json(&self, alphabet: &crate::alphabet::Alphabet) -> serde_json::Value {
        serde_json::json!({
            "g": self.g.display(alphabet).to_string(),
            "ell": self.ell,
            "fiber_size": self.fiber_size,
            "reach": self.reach,
            "bound": self.bound.to_string(),
            "center": self.center.as_ref().map(|c| c.display(alphabet).to_string()),
        })
    }
}

impl FiberCheck {
    pub fn to_json(&self, alphabet: &crate::alphabet::Alphabet) -> serde_json::Value {
        let render = |ws: &[FiberWitness]| -> Vec<serde_json::Value> {
            ws.iter().map(|w| w.to_json(alphabet)).collect()
        };
        serde_json::json!({
            "schema": "fiber-check/1",
            "n": self.n,
            "m": self.m,
            "delta": self.delta,
            "pairs": self.pairs,
            "fibers": self.fibers,
            "ell_in_range": self.ell_in_range,
            "holds": self.holds(),
            "violations": render(&self.violations),
            "worst": self.worst.as_ref().map(|w| w.to_json(alphabet)),
            "witnesses": render(&self.witnesses),
        })
    }
}

impl Serialize for BallBoundRow {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("BallBoundRow", 5)?;
        st.serialize_field("n", &self.n)?;
        rational_field::<S>(&mut st, "lower", &self.lower)?;
        st.serialize_field("ball", &self.ball.to_string())?;
        rational_field::<S>(&mut st, "upper", &self.upper)?;
        st.serialize_field("holds", &self.holds)?;
        st.end()
    }
}

impl Serialize for BallBounds {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            BallBounds::NotApplicable { lambda_lo } => {
                let mut st = ser.serialize_struct("BallBounds", 2)?;
                st.serialize_field("applicable", &false)?;
                rational_field::<S>(&mut st, "lambda_lo", lambda_lo)?;
                st.end()
            }
            BallBounds::Checked { rows, all_hold } => {
                let mut st = ser.serialize_struct("BallBounds", 3)?;
                st.serialize_field("applicable", &true)?;
                st.serialize_field("all_hold", all_hold)?;
                st.serialize_field("rows", rows)?;
                st.end()
            }
        }
    }
}

impl Serialize for RhsSplit {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("RhsSplit", 6)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("epsilon", &self.epsilon)?;
        rational_field::<S>(&mut st, "lhs_const", &self.lhs_const)?;
        rational_field::<S>(&mut st, "head_bound", &self.head_bound)?;
        rational_field::<S>(&mut st, "tail_bound", &self.tail_bound)?;
        st.serialize_field("contradicts", &self.contradicts())?;
        st.end()
    }
}

impl Serialize for PureExponential {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("PureExponential", 5)?;
        st.serialize_field("lambda_lo", &self.lambda.0.to_string())?;
        st.serialize_field("lambda_hi", &self.lambda.1.to_string())?;
        rational_field::<S>(&mut st, "d_ball", &self.d_ball)?;
        st.serialize_field("window", &self.window)?;
        st.serialize_field("verdict", &self.verdict)?;
        st.end()
    }
}

impl Serialize for TheoremReport {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("TheoremReport", 15)?;
        st.serialize_field("schema", "theorem-report/1")?;
        st.serialize_field("group", &self.group)?;
        st.serialize_field("radius", &self.radius)?;
        st.serialize_field("delta_input", &self.delta_input)?;
        st.serialize_field("delta_hat", &self.delta_hat)?;
        st.serialize_field("delta_used", &self.delta_used)?;
        st.serialize_field("fit", &self.fit)?;
        st.serialize_field("asymptotics", &self.asymptotics)?;
        st.serialize_field("lemma_checks", &self.lemma_checks)?;
        st.serialize_field("lemma_all_hold", &self.lemma_all_hold)?;
        st.serialize_field("ball_bounds", &self.ball_bounds)?;
        st.serialize_field("split_terms", &self.split_terms)?;
        st.serialize_field(
            "alpha_one_first_contradiction",
            &self.alpha_one_first_contradiction,
        )?;
        st.serialize_field("pure_exponential", &self.pure_exponential)?;
        st.serialize_field("stage_errors", &self.stage_errors)?;
        st.serialize_field("verdict", &self.verdict)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::load_builtin;
    use crate::enumerate::enumerate_growth;

    fn table(key: &str, radius: usize, store: bool) -> (GroupPresentation, GrowthTable) {
        let p = load_builtin(key).unwrap();
        let opts = EnumerationOptions { store_elements: store, ..Default::default() };
        let t = enumerate_growth(&p, radius, &opts).unwrap();
        (p, t)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn lemma_instances_match_hand_computation() {
        let (_, t) = table("f2", 4, false);
        let c = check_lemma_inequality(&t, 1, 1, 1).unwrap();
        assert_eq!(c.lhs, BigInt::from(16));
        // 1·𝔅(2) + 4·𝔅(2) + 12·𝔅(1) = 17 + 68 + 60
        assert_eq!(c.rhs, BigInt::from(145));
        assert!(c.holds);

        let (_, t) = table("z", 7, false);
        let c = check_lemma_inequality(&t, 1, 2, 2).unwrap();
        assert_eq!(c.lhs, BigInt::from(4));
        // 𝔅(3) + 2𝔅(3) + 2𝔅(2) + 2𝔅(2) + 2𝔅(1) = 7+14+10+10+6
        assert_eq!(c.rhs, BigInt::from(47));
        assert!(c.holds);

        let c = check_lemma_inequality(&t, 1, 0, 0).unwrap();
        assert_eq!(c.lhs, BigInt::from(1));
        assert!(c.rhs >= BigInt::from(1));
        assert!(c.holds);
    }

    #[test]
    fn lemma_radius_precondition_is_exact() {
        let (_, t) = table("f2", 3, false);
        // n=m=1, δ=1 needs radius 1+1+1+1 = 4.
        match check_lemma_inequality(&t, 1, 1, 1) {
            Err(Error::RadiusExceeded { required: 4, have: 3 }) => {}
            other => panic!("expected radius error, got {other:?}"),
        }
        let (_, t4) = table("f2", 4, false);
        assert!(check_lemma_inequality(&t4, 1, 1, 1).is_ok());
    }

    #[test]
    fn fiber_sweep_free_group() {
        let (p, t) = table("f2", 4, true);
        let c = check_fiber_bounds(&p, &t, 1, 1, 1).unwrap();
        assert_eq!(c.pairs, 16);
        // 12 distinct reduced length-2 products plus the identity.
        assert_eq!(c.fibers, 13);
        assert!(c.ell_in_range);
        assert!(c.violations.is_empty());
        assert!(c.holds());
        // The identity absorbs the 4 cancelling pairs and is the worst
        // fiber: 4 against 𝔅(2) = 17.
        let w = c.worst.unwrap();
        assert_eq!(w.ell, 0);
        assert_eq!(w.fiber_size, 4);
        assert_eq!(w.bound, BigInt::from(17));
        // Singleton fibers like "a b" sit at ℓ = 2 with bound 𝔅(1) = 5.
        let ab = c
            .witnesses
            .iter()
            .find(|f| f.g.display(p.alphabet()).to_string() == "a b")
            .expect("product a·b occurs");
        assert_eq!((ab.ell, ab.fiber_size), (2, 1));
        assert_eq!(ab.bound, BigInt::from(5));
        assert_eq!(ab.reach, 1);
    }

    #[test]
    fn fiber_centers_cover_their_fibers() {
        // The recorded center c must satisfy d(c, h) ≤ reach for every h in
        // the fiber — the containment behind the ball bound. Recompute the
        // fibers pairwise and check against the index metric.
        let (p, t) = table("f2", 4, true);
        let (_, index) = enumerate_with_index(&p, 2, &EnumerationOptions::default()).unwrap();
        let c = check_fiber_bounds(&p, &t, 1, 1, 1).unwrap();
        let s1: Vec<Word> = index.sphere_elements(1).unwrap().to_vec();
        for f in &c.witnesses {
            let center = f.center.as_ref().unwrap();
            for h in &s1 {
                for k in &s1 {
                    if p.equal(&h.concat(k), &f.g) {
                        let d = index.distance(&p, center, h).unwrap();
                        assert!(
                            d <= f.reach,
                            "center {} misses {} in fiber of {} (d = {d} > {})",
                            center.display(p.alphabet()),
                            h.display(p.alphabet()),
                            f.g.display(p.alphabet()),
                            f.reach
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn fiber_sweep_identity_factor() {
        let (p, t) = table("z", 4, true);
        let c = check_fiber_bounds(&p, &t, 1, 0, 2).unwrap();
        assert_eq!(c.pairs, 2);
        assert_eq!(c.fibers, 2);
        assert!(c.holds());
        for f in &c.witnesses {
            assert_eq!(f.fiber_size, 1);
            assert_eq!(f.ell, 2);
            // ℓ = n+m makes the reach exactly δ.
            assert_eq!(f.reach, 1);
        }
    }

    #[test]
    fn fiber_sweep_free_product() {
        let (p, t) = table("c2c3", 7, true);
        let c = check_fiber_bounds(&p, &t, 1, 2, 2).unwrap();
        assert_eq!(c.pairs, 16);
        assert!(c.ell_in_range);
        assert!(c.holds());
        for f in &c.witnesses {
            assert!(f.ell <= 4);
            assert!(BigInt::from(f.fiber_size) <= f.bound);
        }
    }

    #[test]
    fn fiber_sweep_needs_element_store() {
        let (p, t) = table("f2", 4, false);
        assert!(matches!(
            check_fiber_bounds(&p, &t, 1, 1, 1),
            Err(Error::MissingElementStore)
        ));
    }

    #[test]
    fn ball_bounds_free_group_strict() {
        let (_, t) = table("f2", 10, false);
        let a = GrowthAsymptotics {
            lambda: (rat(3, 1), rat(3, 1)),
            alpha: 0,
            c_hat: rat(4, 3),
            d_hat: rat(4, 3),
            warnings: vec![],
        };
        match check_ball_bounds(&t, &a) {
            BallBounds::Checked { rows, all_hold } => {
                assert!(all_hold);
                assert_eq!(rows.len(), 10);
                // (4/3)·3ⁿ < 2·3ⁿ − 1 < 2·3ⁿ, strictly.
                for row in &rows {
                    assert_eq!(row.lower, rat(4, 3) * rat(3, 1).pow(row.n as i32));
                    assert_eq!(row.upper, rat(2, 1) * rat(3, 1).pow(row.n as i32));
                    assert!(row.holds);
                }
            }
            other => panic!("expected checked bounds, got {other:?}"),
        }
    }

    #[test]
    fn ball_bounds_not_applicable_at_rate_one() {
        let (_, t) = table("z", 6, false);
        let a = GrowthAsymptotics {
            lambda: (rat(1, 1), rat(1, 1)),
            alpha: 0,
            c_hat: rat(2, 1),
            d_hat: rat(2, 1),
            warnings: vec![],
        };
        assert!(matches!(check_ball_bounds(&t, &a), BallBounds::NotApplicable { .. }));
    }

    #[test]
    fn epsilon_schedule_values_and_shape() {
        assert_eq!(epsilon_default(1, 1), 3);
        assert_eq!(epsilon_default(1000, 1), 12);
        assert_eq!(epsilon_default(7, 2), 5);
        assert_eq!(epsilon_default(8, 2), 6);
        assert_eq!(epsilon_default(26, 1), 4);
        assert_eq!(epsilon_default(27, 1), 5);
        assert_eq!(epsilon_default(999_999_999, 1), 1001);
        assert_eq!(epsilon_default(1_000_000_000, 1), 1002);
        for delta in [1u32, 2, 5] {
            let mut prev = 0;
            for n in 1..200u64 {
                let e = epsilon_default(n, delta);
                assert!(e >= 2 * delta as u64);
                assert!(e >= prev);
                prev = e;
            }
        }
    }

    #[test]
    fn split_head_matches_hand_value() {
        // α=1, λ=3, δ=1, n=1000: head = 2000·(1001/1000)·3^(1−12) = 2002/3^11.
        let lam = (rat(3, 1), rat(3, 1));
        let row = evaluate_rhs_split(1000, 1, 1, &lam, &rat(4, 3), &rat(4, 3)).unwrap();
        assert_eq!(row.epsilon, 12);
        assert_eq!(row.head_bound, rat(2002, 177_147));
        assert_eq!(row.lhs_const, rat(1, 3));
    }

    #[test]
    fn split_tail_shrinks_with_n_at_positive_alpha() {
        // α=1, λ=3, δ=1: tail(10³) = 2·3·12·13/10³ = 117/125 and
        // tail(10⁶) = 2·3·102·103/10⁶ = 15759/250000; the ratio is ≈ 0.0673.
        let lam = (rat(3, 1), rat(3, 1));
        let t3 = evaluate_rhs_split(1_000, 1, 1, &lam, &rat(4, 3), &rat(4, 3)).unwrap();
        let t6 = evaluate_rhs_split(1_000_000, 1, 1, &lam, &rat(4, 3), &rat(4, 3)).unwrap();
        assert_eq!(t3.tail_bound, rat(117, 125));
        assert_eq!(t6.tail_bound, rat(15_759, 250_000));
        assert!(t6.tail_bound < t3.tail_bound);
    }

    #[test]
    fn split_tail_stays_large_at_alpha_zero() {
        // α=0 kills the (…)ᵅ factor: tail = 2λ^δ·ε(n), which grows. The
        // contradiction must never fire in the α=0 case.
        let lam = (rat(3, 1), rat(3, 1));
        let mut prev = BigRational::zero();
        for n in PROBE_LADDER {
            let row = evaluate_rhs_split(n, 1, 0, &lam, &rat(4, 3), &rat(4, 3)).unwrap();
            assert_eq!(row.tail_bound, rat(6, 1) * rat(row.epsilon as i64, 1));
            assert!(row.tail_bound > prev);
            assert!(!row.contradicts());
            prev = row.tail_bound;
        }
    }

    #[test]
    fn split_not_applicable_without_exponential_growth() {
        let lam = (rat(1, 1), rat(1, 1));
        assert!(evaluate_rhs_split(1000, 1, 1, &lam, &rat(4, 1), &rat(4, 1)).is_none());
    }

    #[test]
    fn epsilon_beats_polynomials_on_the_ladder() {
        // n·(1+δ/n)ᵅ·λ^(−ε(n)) strictly decreases along 10³ → 10⁶ → 10⁹
        // for every α ∈ {0,1,2}, λ ∈ {3/2, 2, 3}, δ ∈ {1, 2}.
        for alpha in [0usize, 1, 2] {
            for lam in [rat(3, 2), rat(2, 1), rat(3, 1)] {
                for delta in [1u32, 2] {
                    let value = |n: u64| -> BigRational {
                        let nr = rat(n as i64, 1);
                        let dr = rat(delta as i64, 1);
                        let eps = epsilon_default(n, delta) as usize;
                        &nr * rat_pow(&((&nr + &dr) / &nr), alpha)
                            * rat_pow(&(BigRational::one() / &lam), eps)
                    };
                    let (a, b, c) = (value(1_000), value(1_000_000), value(1_000_000_000));
                    assert!(a > b && b > c, "not decreasing at alpha={alpha}, delta={delta}");
                }
            }
        }
    }

    #[test]
    fn contradiction_fires_for_free_group_constants() {
        // F₂ constants C = D = 4/3, λ = 3, δ = 1 with α forced to 1:
        // lhs_const = 1/3; at n = 10⁴, ε = 23, tail = 6·23·24/10⁴ = 0.3312
        // and head ≈ 6·10⁻⁷, so head+tail < 1/3 first fires there.
        let lam = (rat(3, 1), rat(3, 1));
        let first = PROBE_LADDER.iter().copied().find(|&n| {
            evaluate_rhs_split(n, 1, 1, &lam, &rat(4, 3), &rat(4, 3))
                .is_some_and(|r| r.contradicts())
        });
        assert_eq!(first, Some(10_000));
    }

    #[test]
    fn pure_exponential_free_group_verified() {
        let (_, t) = table("f2", 12, false);
        let lam = (rat(3, 1), rat(3, 1));
        let rep = verify_purely_exponential(&t, &lam);
        // D_ball = max(2 − 3⁻ⁿ) = 2 − 3⁻¹², exactly.
        assert_eq!(rep.d_ball, rat(2, 1) - rat(1, 531_441));
        assert_eq!(rep.verdict, PureVerdict::VerifiedOnRange);
        assert_eq!(rep.window, 4);
    }

    #[test]
    fn pure_exponential_flat_groups_fail() {
        let (_, t) = table("z", 16, false);
        let rep = verify_purely_exponential(&t, &(rat(1, 1), rat(1, 1)));
        assert_eq!(rep.verdict, PureVerdict::FailsOnRange);
        assert_eq!(rep.d_ball, rat(33, 1));

        let (_, t) = table("z2", 20, false);
        let rep = verify_purely_exponential(&t, &(rat(1, 1), rat(1, 1)));
        assert_eq!(rep.verdict, PureVerdict::FailsOnRange);
    }

    #[test]
    fn report_free_group_verified() {
        let p = load_builtin("f2").unwrap();
        let rep = run_theorem_report(&p, 12, None);
        assert_eq!(rep.verdict, ReportVerdict::Verified);
        assert!(rep.stage_errors.is_empty());
        assert_eq!(rep.delta_used, 1);
        assert_eq!(rep.delta_hat, Some(0));
        let a = rep.asymptotics.as_ref().unwrap();
        assert_eq!(a.alpha, 0);
        assert_eq!(a.lambda.0, rat(3, 1));
        assert!(rep.lemma_all_hold);
        // All (n, m) with n+m+1+⌈(n+m)/2⌉ ≤ 12, i.e. n+m ≤ 7: 36 pairs.
        assert_eq!(rep.lemma_checks.len(), 36);
        assert_eq!(rep.alpha_one_first_contradiction, Some(10_000));
        assert_eq!(rep.pure_exponential.as_ref().unwrap().verdict, PureVerdict::VerifiedOnRange);
    }

    #[test]
    fn report_lattice_fails_with_alpha_one_surfaced() {
        let p = load_builtin("z2").unwrap();
        let rep = run_theorem_report(&p, 40, None);
        assert_eq!(rep.verdict, ReportVerdict::FailsOnRange);
        assert_eq!(rep.asymptotics.as_ref().unwrap().alpha, 1);
        assert!(matches!(rep.ball_bounds, Some(BallBounds::NotApplicable { .. })));
        assert_eq!(
            rep.pure_exponential.as_ref().unwrap().verdict,
            PureVerdict::FailsOnRange
        );
        // Flat lattice: head/tail split vacuous, no contradiction possible.
        assert!(rep.split_terms.is_empty());
        assert_eq!(rep.alpha_one_first_contradiction, None);
    }

    #[test]
    fn report_free_product_verified() {
        let p = load_builtin("c2c3").unwrap();
        let rep = run_theorem_report(&p, 14, None);
        assert_eq!(rep.verdict, ReportVerdict::Verified);
        let a = rep.asymptotics.as_ref().unwrap();
        assert_eq!(a.alpha, 0);
        assert!(&a.lambda.0 * &a.lambda.0 <= rat(2, 1));
        assert!(rat(2, 1) <= &a.lambda.1 * &a.lambda.1);
        assert_eq!(rep.alpha_one_first_contradiction, Some(100_000));
    }

    #[test]
    fn report_embeds_stage_errors_and_stays_inconclusive() {
        // Radius 5 is too short to pin the surface group's growth function:
        // the windowless fit caps the order at 1 and the order-1 candidate
        // misses 𝔖(4), so the fit stage fails and the report says so.
        let p = load_builtin("surface2").unwrap();
        let rep = run_theorem_report(&p, 5, None);
        assert_eq!(rep.verdict, ReportVerdict::Inconclusive);
        assert!(rep.fit.is_none());
        assert!(rep.stage_errors.iter().any(|e| e.stage == "fit"));
        // The lemma sweep still ran on the enumerated table.
        assert!(!rep.lemma_checks.is_empty());
        assert!(rep.lemma_all_hold);
    }

    #[test]
    fn report_renders_and_serializes() {
        let p = load_builtin("z").unwrap();
        let rep = run_theorem_report(&p, 8, None);
        assert_eq!(rep.verdict, ReportVerdict::FailsOnRange);
        let text = rep.render_text();
        assert!(text.contains("verdict: fails-on-range"));
        let json = serde_json::to_string_pretty(&rep).unwrap();
        assert!(json.contains("\"schema\": \"theorem-report/1\""));
        assert!(json.contains("\"verdict\": \"fails-on-range\""));
        let reparsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(reparsed["group"], "z");
    }

    #[test]
    fn verdicts_stable_under_tighter_root_tolerance() {
        // Re-deriving the λ interval at tolerance 10⁻¹² must not flip any
        // catalog verdict decision that depends on it.
        use crate::roots::smallest_positive_root;
        for (key, radius) in [("f2", 10), ("c2c3", 12), ("z", 10), ("z2", 16)] {
            let p = load_builtin(key).unwrap();
            let t = enumerate_growth(&p, radius, &EnumerationOptions::default()).unwrap();
            let s =
                SeriesCoefficients::new(SeriesKind::Spherical, t.spheres().to_vec()).unwrap();
            let f = fit_rational(&s, radius.saturating_sub(3) / 2).unwrap();
            let coarse = extract_asymptotics(&f, &t).unwrap();
            let tight = BigRational::new(BigInt::one(), BigInt::from(10u64.pow(12)));
            let rho = smallest_positive_root(&f.denominator, &tight).unwrap();
            let lam_tight =
                (BigRational::one() / &rho.hi, BigRational::one() / &rho.lo);
            assert_eq!(
                verify_purely_exponential(&t, &coarse.lambda).verdict,
                verify_purely_exponential(&t, &lam_tight).verdict,
                "verdict flipped for {key}"
            );
            let tight_asym = GrowthAsymptotics { lambda: lam_tight, ..coarse.clone() };
            assert_eq!(
                check_ball_bounds(&t, &coarse).all_hold(),
                check_ball_bounds(&t, &tight_asym).all_hold(),
                "ball bounds flipped for {key}"
            );
        }
    }
}
