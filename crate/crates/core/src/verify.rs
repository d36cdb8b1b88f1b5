//! Deterministic sampled verification of the contraction inequalities, with
//! margin statistics and counterexample capture.
//!
//! Every sample draws from its own ChaCha8 substream: the stream number is a
//! hash of the case id and the word position is fixed by the sample index, so
//! results do not depend on how samples are spread over threads.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ball::{self, BallPoint};
use crate::catalog::{self, HoloFunction};
use crate::conformal::poincare_geodesic_point;
use crate::disk::{self, DiskPoint, BOUNDARY_GUARD};
use crate::error::{Error, Result};
use crate::quadrature::gauss_legendre_composite;
use crate::weights::{self, GridSpec, Interval, Weight};

/// Sampled radii never exceed this, so a cap at the guard itself still yields valid points.
const MAX_SAMPLE_RADIUS: f64 = 1.0 - 1.000001 * BOUNDARY_GUARD;

/// Words of keystream reserved per sample.
const WORDS_PER_SAMPLE: u128 = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// Radius `cap·√u`, uniform with respect to area.
    #[default]
    UniformDisk,
    /// Radius `min(1 − 10^(−3u), cap)`, concentrating samples near the circle.
    BoundaryBiased,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleSpec {
    pub count: usize,
    pub seed: u64,
    pub radius_cap: f64,
    pub scheme: Scheme,
}

impl SampleSpec {
    pub fn new(count: usize, seed: u64, radius_cap: f64, scheme: Scheme) -> Result<Self> {
        let s = Self {
            count,
            seed,
            radius_cap,
            scheme,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(Error::InvalidInput("sample count must be at least 1".into()));
        }
        if !(self.radius_cap > 0.0 && self.radius_cap <= 1.0 - BOUNDARY_GUARD) {
            return Err(Error::InvalidInput(format!(
                "radius_cap {} must lie in (0, 1 - {BOUNDARY_GUARD:e}]",
                self.radius_cap
            )));
        }
        Ok(())
    }

    fn stream(&self, case_id: &str) -> Substreams {
        let mut base = ChaCha8Rng::seed_from_u64(self.seed);
        base.set_stream(stream_id(case_id));
        Substreams { base }
    }

    fn radius(&self, u: f64, real_dim: usize) -> f64 {
        let r = match self.scheme {
            Scheme::UniformDisk => self.radius_cap * u.powf(1.0 / real_dim as f64),
            Scheme::BoundaryBiased => (1.0 - 10f64.powf(-3.0 * u)).min(self.radius_cap),
        };
        r.min(MAX_SAMPLE_RADIUS)
    }

    fn disk_point(&self, rng: &mut ChaCha8Rng) -> DiskPoint {
        let r = self.radius(rng.gen::<f64>(), 2);
        let theta = std::f64::consts::TAU * rng.gen::<f64>();
        DiskPoint::new(Complex64::from_polar(r, theta)).expect("radius is capped inside the guard")
    }

    fn ball_point(&self, rng: &mut ChaCha8Rng, n: usize) -> BallPoint {
        let mut v: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let norm = ball::inner(&v, &v).re.sqrt();
        let r = self.radius(rng.gen::<f64>(), 2 * n);
        for c in &mut v {
            *c *= r / norm;
        }
        BallPoint::new(v).expect("radius is capped inside the guard")
    }

    /// The `index`-th pair of disk points of the case `case_id`.
    pub fn disk_pair(&self, case_id: &str, index: usize) -> (DiskPoint, DiskPoint) {
        let mut rng = self.stream(case_id).at(index);
        (self.disk_point(&mut rng), self.disk_point(&mut rng))
    }

    /// The `index`-th pair of points of `𝔹ⁿ` of the case `case_id`.
    pub fn ball_pair(&self, case_id: &str, index: usize, n: usize) -> (BallPoint, BallPoint) {
        let mut rng = self.stream(case_id).at(index);
        (self.ball_point(&mut rng, n), self.ball_point(&mut rng, n))
    }
}

struct Substreams {
    base: ChaCha8Rng,
}

impl Substreams {
    fn at(&self, index: usize) -> ChaCha8Rng {
        let mut rng = self.base.clone();
        rng.set_word_pos(index as u128 * WORDS_PER_SAMPLE);
        rng
    }
}

/// 64-bit FNV-1a; stable across platforms and releases.
fn stream_id(s: &str) -> u64 {
    s.bytes()
        .fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// A sample counts as a violation when `margin < −(absolute + relative·|rhs|)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub absolute: f64,
    pub relative: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            absolute: 1e-9,
            relative: 1e-9,
        }
    }
}

impl Tolerance {
    pub fn absolute(absolute: f64) -> Self {
        Self { absolute, relative: 0.0 }
    }

    pub fn is_violation(&self, margin: f64, rhs: f64) -> bool {
        margin < -(self.absolute + self.relative * rhs.abs()) || margin.is_nan()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// The curvature hypothesis of the theorem does not hold for the chosen weight.
    HypothesisNotMet,
    /// A catalog entry left its declared codomain, or an input was unusable.
    Defect,
}

/// One evaluated sample: `margin = rhs − lhs`. Grid checks leave `w` empty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub index: usize,
    pub z: Vec<Complex64>,
    pub w: Vec<Complex64>,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
}

impl SampleRecord {
    fn new(index: usize, z: Vec<Complex64>, w: Vec<Complex64>, lhs: f64, rhs: f64) -> Self {
        Self {
            index,
            z,
            w,
            lhs,
            rhs,
            margin: rhs - lhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub case_id: String,
    pub check: String,
    pub subject: String,
    pub status: Status,
    pub samples: usize,
    pub min_margin: Option<f64>,
    pub mean_margin: Option<f64>,
    pub argmin: Option<SampleRecord>,
    pub violations: Vec<SampleRecord>,
    pub tolerance: Tolerance,
    pub seed: u64,
    pub observations: BTreeMap<String, f64>,
    pub message: Option<String>,
    #[serde(skip)]
    pub wall_time: Duration,
    /// Every sample, kept for CSV output and left out of the JSON payload.
    #[serde(skip)]
    pub records: Vec<SampleRecord>,
}

impl VerificationReport {
    fn empty(case_id: &str, check: &str, subject: String, status: Status, tol: Tolerance, seed: u64) -> Self {
        Self {
            case_id: case_id.to_string(),
            check: check.to_string(),
            subject,
            status,
            samples: 0,
            min_margin: None,
            mean_margin: None,
            argmin: None,
            violations: Vec::new(),
            tolerance: tol,
            seed,
            observations: BTreeMap::new(),
            message: None,
            wall_time: Duration::ZERO,
            records: Vec::new(),
        }
    }

    fn from_records(
        case_id: &str,
        check: &str,
        subject: String,
        tol: Tolerance,
        seed: u64,
        records: Vec<SampleRecord>,
    ) -> Self {
        let mut r = Self::empty(case_id, check, subject, Status::Pass, tol, seed);
        let mut sum = 0.0;
        let mut best: Option<&SampleRecord> = None;
        for rec in &records {
            sum += rec.margin;
            if best.is_none_or(|b| rec.margin < b.margin) {
                best = Some(rec);
            }
            if tol.is_violation(rec.margin, rec.rhs) {
                r.violations.push(rec.clone());
            }
        }
        r.samples = records.len();
        r.min_margin = best.map(|b| b.margin);
        r.mean_margin = (!records.is_empty()).then(|| sum / records.len() as f64);
        r.argmin = best.cloned();
        if !r.violations.is_empty() {
            r.status = Status::Fail;
        }
        r.records = records;
        r
    }

    fn defect(case_id: &str, check: &str, subject: String, tol: Tolerance, seed: u64, e: &Error) -> Self {
        let mut r = Self::empty(case_id, check, subject, Status::Defect, tol, seed);
        r.message = Some(e.to_string());
        r
    }

    fn observe(&mut self, key: &str, value: f64) {
        self.observations.insert(key.to_string(), value);
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// The structure whose distance bounds the image side of an inequality.
#[derive(Debug, Clone)]
pub enum Target {
    Weight(Weight),
    DiskSigma,
    BallBeta { dim: usize },
}

impl Target {
    fn describe(&self) -> String {
        match self {
            Target::Weight(w) => format!("d_ω with ω = {}", w.name()),
            Target::DiskSigma => "disk σ".into(),
            Target::BallBeta { dim } => format!("ball β (n={dim})"),
        }
    }
}

/// A theorem instance: a source disk, a map `f`, an image structure and a factor
/// multiplying the source distance.
#[derive(Debug, Clone)]
pub struct InequalityCase {
    pub id: String,
    pub function: HoloFunction,
    pub target: Target,
    pub factor: f64,
    pub tolerance: Tolerance,
}

impl InequalityCase {
    pub fn new(id: impl Into<String>, function: HoloFunction, target: Target) -> Self {
        Self {
            id: id.into(),
            function,
            target,
            factor: 1.0,
            tolerance: Tolerance::default(),
        }
    }

    pub fn with_factor(mut self, factor: f64) -> Self {
        self.factor = factor;
        self
    }

    pub fn with_tolerance(mut self, tolerance: Tolerance) -> Self {
        self.tolerance = tolerance;
        self
    }

    fn subject(&self) -> String {
        let factor = if self.factor == 1.0 {
            String::new()
        } else {
            format!(", factor {}", self.factor)
        };
        format!("f = {} ({}), {}{}", self.function.id, self.function.codomain.name(), self.target.describe(), factor)
    }

    fn weight(&self) -> Result<&Weight> {
        match &self.target {
            Target::Weight(w) => Ok(w),
            other => Err(Error::InvalidInput(format!(
                "case {} needs a weight target, got {}",
                self.id,
                other.describe()
            ))),
        }
    }

    fn require_bounded(&self) -> Result<()> {
        if self.function.codomain.is_bounded_by_one() {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "case {}: {} has codomain {}, a disk-valued map is required",
                self.id,
                self.function.id,
                self.function.codomain.name()
            )))
        }
    }

    /// Whether `Re f` lands in the interval of the weight target.
    pub fn compatible(&self) -> Result<()> {
        match &self.target {
            Target::Weight(w) => {
                let image = self.function.codomain.re_interval();
                if interval_within(image, w.domain()) {
                    Ok(())
                } else {
                    Err(Error::InvalidInput(format!(
                        "case {}: Re {} ranges over {image}, outside the weight interval {}",
                        self.id,
                        self.function.id,
                        w.domain()
                    )))
                }
            }
            Target::DiskSigma | Target::BallBeta { .. } => self.require_bounded(),
        }
    }
}

pub fn interval_within(inner: Interval, outer: Interval) -> bool {
    outer.lo() <= inner.lo() && inner.hi() <= outer.hi()
}

/// Runs `eval` for every index in parallel; the first error in index order wins.
fn collect_samples<F>(count: usize, eval: F) -> Result<Vec<SampleRecord>>
where
    F: Fn(usize) -> Result<SampleRecord> + Sync,
{
    (0..count).into_par_iter().map(&eval).collect::<Vec<_>>().into_iter().collect()
}

fn finish(
    case: &InequalityCase,
    check: &str,
    seed: u64,
    started: Instant,
    outcome: Result<Vec<SampleRecord>>,
) -> VerificationReport {
    let mut r = match outcome {
        Ok(records) => VerificationReport::from_records(&case.id, check, case.subject(), case.tolerance, seed, records),
        Err(e) => VerificationReport::defect(&case.id, check, case.subject(), case.tolerance, seed, &e),
    };
    r.wall_time = started.elapsed();
    r
}

/// Checks `k_ω ≤ −1` on the default grid; `None` means the hypothesis holds.
fn curvature_gate(case: &InequalityCase, check: &str, seed: u64) -> Result<Option<VerificationReport>> {
    let w = case.weight()?;
    let bound = weights::verify_curvature_bound(w, &GridSpec::default())?;
    if bound.passes {
        return Ok(None);
    }
    let mut r = VerificationReport::empty(&case.id, check, case.subject(), Status::HypothesisNotMet, case.tolerance, seed);
    r.message = Some(format!(
        "k_ω reaches {} at t = {}, above the required bound -1",
        bound.max_k, bound.argmax
    ));
    r.observe("max_k", bound.max_k);
    r.observe("argmax_k", bound.argmax);
    Ok(Some(r))
}

/// `d_ω(Re f(z), Re f(w)) ≤ factor·σ(z, w)` over sampled pairs.
fn re_distance_records(case: &InequalityCase, s: &SampleSpec) -> Result<Vec<SampleRecord>> {
    let w = case.weight()?;
    let f = &case.function;
    collect_samples(s.count, |i| {
        let (z, v) = s.disk_pair(&case.id, i);
        let a = catalog::eval_re(f, z)?;
        let b = catalog::eval_re(f, v)?;
        let lhs = weights::omega_distance(w, a, b)?;
        let rhs = case.factor * disk::hyperbolic_sigma(z, v);
        Ok(SampleRecord::new(i, vec![z.value()], vec![v.value()], lhs, rhs))
    })
}

/// `d_ω(Re f(z), Re f(w)) ≤ σ(z, w)` for a weight with `k_ω ≤ −1`.
pub fn verify_re_contraction(case: &InequalityCase, s: &SampleSpec) -> Result<VerificationReport> {
    const CHECK: &str = "re_contraction";
    case.compatible()?;
    let started = Instant::now();
    if let Some(r) = curvature_gate(case, CHECK, s.seed)? {
        return Ok(r);
    }
    Ok(finish(case, CHECK, s.seed, started, re_distance_records(case, s)))
}

/// `ω(Re f(z))·|f′(z)|·(1 − |z|²)/2`, the norm of the differential of `Re f`
/// from the Poincaré metric to `ω(t)|dt|`.
fn gradient_quantity(w: &Weight, f: &HoloFunction, z: DiskPoint) -> Result<f64> {
    let re = catalog::eval_re(f, z)?;
    Ok(w.eval(re) * f.deriv(z).norm() * (1.0 - z.value().norm_sqr()) / 2.0)
}

/// Pointwise bound `ω(Re f)·|f′|·(1 − |z|²)/2 ≤ 1` on `grid`.
pub fn verify_pointwise_gradient(case: &InequalityCase, grid: &[DiskPoint]) -> Result<VerificationReport> {
    const CHECK: &str = "pointwise_gradient";
    case.compatible()?;
    let started = Instant::now();
    if let Some(r) = curvature_gate(case, CHECK, 0)? {
        return Ok(r);
    }
    let w = case.weight()?;
    let outcome = collect_samples(grid.len(), |i| {
        let z = grid[i];
        let g = gradient_quantity(w, &case.function, z)?;
        Ok(SampleRecord::new(i, vec![z.value()], Vec::new(), g, case.factor))
    });
    let mut r = finish(case, CHECK, 0, started, outcome);
    if let Some(best) = &r.argmin {
        r.observe("max_lhs", best.lhs);
    }
    Ok(r)
}

/// `σ(|f(z)|, |f(w)|) ≤ σ(z, w)`; with a ball target the moduli are read as
/// points of the slice `𝔻 × {0}` of `𝔹ⁿ` and measured with `β`.
pub fn verify_modulus_contraction(case: &InequalityCase, s: &SampleSpec) -> Result<VerificationReport> {
    const CHECK: &str = "modulus_contraction";
    case.compatible()?;
    let started = Instant::now();
    let f = &case.function;
    let outcome = collect_samples(s.count, |i| {
        let (z, v) = s.disk_pair(&case.id, i);
        let a = catalog::eval_abs(f, z)?;
        let b = catalog::eval_abs(f, v)?;
        let lhs = match case.target {
            Target::BallBeta { dim } => {
                let embed = |m: f64| {
                    let mut c = vec![Complex64::new(0.0, 0.0); dim];
                    c[0] = Complex64::new(m, 0.0);
                    BallPoint::new(c)
                };
                ball::bergman_beta(&embed(a)?, &embed(b)?)?
            }
            _ => disk::sigma_real(a, b)?,
        };
        let rhs = case.factor * disk::hyperbolic_sigma(z, v);
        Ok(SampleRecord::new(i, vec![z.value()], vec![v.value()], lhs, rhs))
    });
    Ok(finish(case, CHECK, s.seed, started, outcome))
}

/// Below this modulus `f(z)` is treated as a zero of `f`.
pub const ZERO_THRESHOLD: f64 = 1e-12;

/// `|f′(z)|(1 − |z|²) ≤ 1 − |f(z)|²` on `grid`. Zeros of `f`, where `|f|` is
/// not differentiable and only the upper gradient applies, are tallied apart.
pub fn verify_pavlovic(case: &InequalityCase, grid: &[DiskPoint]) -> Result<VerificationReport> {
    const CHECK: &str = "pavlovic";
    case.require_bounded()?;
    let started = Instant::now();
    let f = &case.function;
    let outcome = collect_samples(grid.len(), |i| {
        let z = grid[i];
        let m = catalog::eval_abs(f, z)?;
        let lhs = f.deriv(z).norm() * (1.0 - z.value().norm_sqr());
        Ok(SampleRecord::new(i, vec![z.value()], Vec::new(), lhs, 1.0 - m * m))
    });
    let mut r = finish(case, CHECK, 0, started, outcome);
    if r.status == Status::Defect {
        return Ok(r);
    }
    let mut zero = (0usize, f64::INFINITY);
    let mut nonzero = (0usize, f64::INFINITY);
    let mut max_abs: f64 = 0.0;
    for rec in &r.records {
        let branch = if f.kind.eval(rec.z[0]).norm() <= ZERO_THRESHOLD {
            &mut zero
        } else {
            &mut nonzero
        };
        branch.0 += 1;
        branch.1 = branch.1.min(rec.margin);
        max_abs = max_abs.max(rec.margin.abs());
    }
    r.observe("zero_branch_points", zero.0 as f64);
    r.observe("nonzero_branch_points", nonzero.0 as f64);
    if zero.0 > 0 {
        r.observe("zero_branch_min_margin", zero.1);
    }
    if nonzero.0 > 0 {
        r.observe("nonzero_branch_min_margin", nonzero.1);
    }
    r.observe("max_abs_margin", max_abs);
    Ok(r)
}

/// `σ(U(z), U(w)) ≤ factor·σ(z, w)` for `U = Re f` valued in `(−1, 1)`, with
/// the empirical supremum of `σ(U(z), U(w))/σ(z, w)` over pairs with `z ≠ w`.
pub fn verify_kv_factor(case: &InequalityCase, s: &SampleSpec) -> Result<VerificationReport> {
    const CHECK: &str = "kv_factor";
    case.compatible()?;
    let started = Instant::now();
    let mut r = finish(case, CHECK, s.seed, started, re_distance_records(case, s));
    let sup = r
        .records
        .iter()
        .filter(|rec| rec.rhs > 0.0)
        .map(|rec| case.factor * rec.lhs / rec.rhs)
        .fold(f64::NEG_INFINITY, f64::max);
    if sup.is_finite() {
        r.observe("sup_ratio", sup);
    }
    r.observe("factor", case.factor);
    Ok(r)
}

/// `σ(f(z), f(w)) ≤ σ(z, w)` for disk-valued `f`.
pub fn verify_schwarz_pick(case: &InequalityCase, s: &SampleSpec) -> Result<VerificationReport> {
    const CHECK: &str = "schwarz_pick";
    case.require_bounded()?;
    let started = Instant::now();
    let f = &case.function;
    let outcome = collect_samples(s.count, |i| {
        let (z, v) = s.disk_pair(&case.id, i);
        let fz = DiskPoint::new(f.eval(z))?;
        let fv = DiskPoint::new(f.eval(v))?;
        let lhs = disk::hyperbolic_sigma(fz, fv);
        let rhs = case.factor * disk::hyperbolic_sigma(z, v);
        Ok(SampleRecord::new(i, vec![z.value()], vec![v.value()], lhs, rhs))
    });
    let mut r = finish(case, CHECK, s.seed, started, outcome);
    let max_abs = r.records.iter().map(|rec| rec.margin.abs()).fold(0.0, f64::max);
    if r.status != Status::Defect {
        r.observe("max_abs_margin", max_abs);
    }
    Ok(r)
}

/// Replays the chain `d_ω(Re f(z), Re f(w)) ≤ ∫_γ ω(Re f)|d(f∘γ)| ≤ ℓ(γ) = σ(z, w)`
/// along the disk geodesic `γ`. The report's margins are `σ − ∫`; the first link
/// is tallied in the observations with the same tolerance.
pub fn verify_proof_chain(case: &InequalityCase, s: &SampleSpec, panels: usize) -> Result<VerificationReport> {
    const CHECK: &str = "proof_chain";
    case.compatible()?;
    let started = Instant::now();
    if let Some(r) = curvature_gate(case, CHECK, s.seed)? {
        return Ok(r);
    }
    let w = case.weight()?;
    let f = &case.function;
    let outcome = collect_samples(s.count, |i| {
        let (z, v) = s.disk_pair(&case.id, i);
        let sigma = disk::hyperbolic_sigma(z, v);
        let failure = std::cell::RefCell::new(None);
        let integral = gauss_legendre_composite(
            |t| {
                let p = DiskPoint::new(poincare_geodesic_point(z.value(), v.value(), t))
                    .and_then(|p| gradient_quantity(w, f, p));
                p.unwrap_or_else(|e| {
                    failure.borrow_mut().get_or_insert(e);
                    f64::NAN
                })
            },
            0.0,
            sigma,
            panels,
        );
        if let Some(e) = failure.into_inner() {
            return Err(e);
        }
        let d = weights::omega_distance(w, catalog::eval_re(f, z)?, catalog::eval_re(f, v)?)?;
        // The image distance rides along in `w[1]` so the first link can be tallied.
        Ok(SampleRecord::new(i, vec![z.value()], vec![v.value(), Complex64::new(d, 0.0)], integral, sigma))
    });
    let mut r = finish(case, CHECK, s.seed, started, outcome);
    if r.status == Status::Defect {
        return Ok(r);
    }
    let mut min_gap = f64::INFINITY;
    let mut lower_violations = 0usize;
    for rec in &mut r.records {
        let d = rec.w.pop().expect("image distance was recorded").re;
        let gap = rec.lhs - d;
        min_gap = min_gap.min(gap);
        if case.tolerance.is_violation(gap, rec.lhs) {
            lower_violations += 1;
        }
    }
    for rec in r.violations.iter_mut().chain(r.argmin.iter_mut()) {
        rec.w.truncate(1);
    }
    r.observe("min_lower_gap", min_gap);
    r.observe("lower_chain_violations", lower_violations as f64);
    if lower_violations > 0 {
        r.status = Status::Fail;
    }
    Ok(r)
}

/// `ρ(|z|, |w|) ≤ ρ(z, w)`, `σ(|z|, |w|) ≤ σ(z, w)` on the disk and
/// `β(|z|, |w|) ≤ β(z, w)` on `𝔹ⁿ` for each `n` in `dims`, one report each.
pub fn verify_abs_inequalities(id: &str, s: &SampleSpec, dims: &[usize], tol: Tolerance) -> Result<Vec<VerificationReport>> {
    let run = |sub: &str, subject: String, eval: &(dyn Fn(usize, &str) -> Result<SampleRecord> + Sync)| {
        let case_id = format!("{id}/{sub}");
        let started = Instant::now();
        let outcome = collect_samples(s.count, |i| eval(i, &case_id));
        let mut r = match outcome {
            Ok(records) => VerificationReport::from_records(&case_id, "abs_inequalities", subject, tol, s.seed, records),
            Err(e) => VerificationReport::defect(&case_id, "abs_inequalities", subject, tol, s.seed, &e),
        };
        r.wall_time = started.elapsed();
        r
    };
    let mut out = Vec::new();
    out.push(run("disk_rho", "disk ρ".into(), &|i, cid| {
        let (z, w) = s.disk_pair(cid, i);
        let lhs = disk::pseudo_hyperbolic(z.modulus_point(), w.modulus_point());
        Ok(SampleRecord::new(i, vec![z.value()], vec![w.value()], lhs, disk::pseudo_hyperbolic(z, w)))
    }));
    out.push(run("disk_sigma", "disk σ".into(), &|i, cid| {
        let (z, w) = s.disk_pair(cid, i);
        let lhs = disk::hyperbolic_sigma(z.modulus_point(), w.modulus_point());
        Ok(SampleRecord::new(i, vec![z.value()], vec![w.value()], lhs, disk::hyperbolic_sigma(z, w)))
    }));
    for &n in dims {
        if !(1..=8).contains(&n) {
            return Err(Error::InvalidInput(format!("ball dimension {n} outside 1..=8")));
        }
        let mut r = run(&format!("ball_beta_n{n}"), format!("ball β (n={n})"), &|i, cid| {
            let (z, w) = s.ball_pair(cid, i, n);
            let lhs = disk::sigma_real(z.norm(), w.norm())?;
            let rhs = ball::bergman_beta(&z, &w)?;
            Ok(SampleRecord::new(i, z.coords().to_vec(), w.coords().to_vec(), lhs, rhs))
        });
        if n == 1 && r.status != Status::Defect {
            let mut mismatch: f64 = 0.0;
            for rec in &r.records {
                let (z, w) = (DiskPoint::new(rec.z[0])?, DiskPoint::new(rec.w[0])?);
                mismatch = mismatch.max((disk::hyperbolic_sigma(z, w) - rec.rhs).abs());
            }
            r.observe("max_disk_mismatch", mismatch);
        }
        out.push(r);
    }
    Ok(out)
}

/// Pointwise `factor·w2 ≤ w1` on a grid, with `min w1/w2` recorded.
pub fn verify_weight_comparison(id: &str, w1: &Weight, w2: &Weight, factor: f64, grid: &GridSpec, tol: Tolerance) -> Result<VerificationReport> {
    let started = Instant::now();
    if w1.domain() != w2.domain() {
        return Err(Error::InvalidInput(format!(
            "case {id}: weights live on different intervals {} and {}",
            w1.domain(),
            w2.domain()
        )));
    }
    let pts = grid.points(w1.domain())?;
    let records = collect_samples(pts.len(), |i| {
        let t = pts[i];
        Ok(SampleRecord::new(i, vec![Complex64::new(t, 0.0)], Vec::new(), factor * w2.eval(t), w1.eval(t)))
    })?;
    let subject = format!("{factor}·[{}] ≤ {}", w2.name(), w1.name());
    let mut r = VerificationReport::from_records(id, "weight_comparison", subject, tol, 0, records);
    let min_ratio = r
        .records
        .iter()
        .map(|rec| factor * rec.rhs / rec.lhs)
        .fold(f64::INFINITY, f64::min);
    r.observe("min_ratio", min_ratio);
    r.wall_time = started.elapsed();
    Ok(r)
}
