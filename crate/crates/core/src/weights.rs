//! Weights on intervals: positive densities `ω` on `J = (lo, hi) ≠ ℝ`, the
//! interval distance `d_ω(a, b) = |∫_a^b ω|`, the curvature quantity
//! `k_ω = (ω′² − ωω″)/ω⁴`, and the three closed-form families with `k_ω ≡ −k²`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{self, Tolerance};

pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Open interval `(lo, hi)`; either end may be infinite but not both.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "IntervalRepr", into = "IntervalRepr")]
pub struct Interval {
    lo: f64,
    hi: f64,
}

/// JSON form: `null` stands for an infinite end.
#[derive(Serialize, Deserialize)]
struct IntervalRepr {
    lo: Option<f64>,
    hi: Option<f64>,
}

impl TryFrom<IntervalRepr> for Interval {
    type Error = Error;
    fn try_from(r: IntervalRepr) -> Result<Self> {
        Interval::new(r.lo.unwrap_or(f64::NEG_INFINITY), r.hi.unwrap_or(f64::INFINITY))
    }
}

impl From<Interval> for IntervalRepr {
    fn from(i: Interval) -> Self {
        IntervalRepr {
            lo: i.lo.is_finite().then_some(i.lo),
            hi: i.hi.is_finite().then_some(i.hi),
        }
    }
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo >= hi {
            return Err(Error::InvalidInput(format!("empty interval ({lo}, {hi})")));
        }
        if lo == f64::NEG_INFINITY && hi == f64::INFINITY {
            return Err(Error::InvalidInput("the interval may not be the whole real line".into()));
        }
        if lo == f64::INFINITY || hi == f64::NEG_INFINITY {
            return Err(Error::InvalidInput(format!("degenerate interval ({lo}, {hi})")));
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn contains(&self, t: f64) -> bool {
        self.lo < t && t < self.hi
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    /// A fixed interior point: the midpoint, or one unit inside the finite end.
    pub fn interior_point(&self) -> f64 {
        match (self.lo.is_finite(), self.hi.is_finite()) {
            (true, true) => 0.5 * (self.lo + self.hi),
            (true, false) => self.lo + 1.0,
            _ => self.hi - 1.0,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

/// A positive density on an interval with optional analytic derivatives and
/// antiderivative. Missing derivatives fall back to central differences.
#[derive(Clone)]
pub struct Weight {
    name: String,
    domain: Interval,
    density: RealFn,
    d1: Option<RealFn>,
    d2: Option<RealFn>,
    log_d2: Option<RealFn>,
    antiderivative: Option<RealFn>,
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Weight")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .field("analytic_derivatives", &self.has_analytic_derivatives())
            .field("antiderivative", &self.antiderivative.is_some())
            .finish()
    }
}

impl Weight {
    pub fn new(
        name: impl Into<String>,
        domain: Interval,
        density: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            domain,
            density: Arc::new(density),
            d1: None,
            d2: None,
            log_d2: None,
            antiderivative: None,
        }
    }

    pub fn with_derivatives(
        mut self,
        d1: impl Fn(f64) -> f64 + Send + Sync + 'static,
        d2: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        self.d1 = Some(Arc::new(d1));
        self.d2 = Some(Arc::new(d2));
        self
    }

    /// Supplies `(ln ω)″`, which gives `k_ω = −(ln ω)″/ω²` without the
    /// cancellation in `ω′² − ωω″` where `ω` is small.
    pub fn with_log_second_derivative(mut self, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.log_d2 = Some(Arc::new(f));
        self
    }

    pub fn with_antiderivative(mut self, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.antiderivative = Some(Arc::new(f));
        self
    }

    /// Drops analytic derivatives and antiderivative, forcing every numeric fallback.
    pub fn density_only(&self) -> Self {
        Self {
            name: format!("{} (density only)", self.name),
            domain: self.domain,
            density: self.density.clone(),
            d1: None,
            d2: None,
            log_d2: None,
            antiderivative: None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn has_analytic_derivatives(&self) -> bool {
        self.d1.is_some() && self.d2.is_some()
    }

    pub fn has_antiderivative(&self) -> bool {
        self.antiderivative.is_some()
    }

    #[inline]
    pub fn eval(&self, t: f64) -> f64 {
        (self.density)(t)
    }

    pub fn derivative(&self, t: f64) -> Result<f64> {
        match &self.d1 {
            Some(d1) => Ok(d1(t)),
            None => self.fd_first(t),
        }
    }

    pub fn second_derivative(&self, t: f64) -> Result<f64> {
        match &self.d2 {
            Some(d2) => Ok(d2(t)),
            None => self.fd_second(t),
        }
    }

    fn stencil(&self, t: f64, h: f64) -> Result<()> {
        if self.domain.contains(t - h) && self.domain.contains(t + h) {
            Ok(())
        } else {
            Err(Error::StencilOutsideDomain { t, step: h })
        }
    }

    /// `factor·max(1, |t|)`, capped by `factor` times the distance to a finite
    /// end and rounded so that `t ± h` are exact.
    fn fd_step(&self, t: f64, factor: f64) -> f64 {
        let scale = t.abs().max(1.0).min(t - self.domain.lo).min(self.domain.hi - t);
        (t + factor * scale) - t
    }

    /// Central first difference, step `cbrt(ε)` times the local scale.
    pub fn fd_first(&self, t: f64) -> Result<f64> {
        let h = self.fd_step(t, f64::EPSILON.cbrt());
        self.stencil(t, h)?;
        Ok((self.eval(t + h) - self.eval(t - h)) / (2.0 * h))
    }

    /// Central second difference, step `ε^{1/4}` times the local scale.
    pub fn fd_second(&self, t: f64) -> Result<f64> {
        let h = self.fd_step(t, f64::EPSILON.powf(0.25));
        self.stencil(t, h)?;
        Ok((self.eval(t + h) - 2.0 * self.eval(t) + self.eval(t - h)) / (h * h))
    }

    /// Largest relative disagreement between the analytic derivatives and their
    /// finite-difference estimates over `grid`. `None` when no analytic pair is set.
    pub fn check_derivatives(&self, grid: &GridSpec) -> Result<Option<f64>> {
        let (Some(d1), Some(d2)) = (&self.d1, &self.d2) else {
            return Ok(None);
        };
        let mut worst: f64 = 0.0;
        for t in grid.points(self.domain)? {
            let a1 = d1(t);
            let a2 = d2(t);
            let n1 = self.fd_first(t)?;
            let n2 = self.fd_second(t)?;
            let scale1 = a1.abs().max(self.eval(t) * 1e-3).max(f64::MIN_POSITIVE);
            let scale2 = a2.abs().max(self.eval(t) * 1e-3).max(f64::MIN_POSITIVE);
            worst = worst.max((a1 - n1).abs() / scale1).max((a2 - n2).abs() / scale2);
        }
        Ok(Some(worst))
    }

    fn require_inside(&self, t: f64) -> Result<()> {
        if t.is_finite() && self.domain.contains(t) {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "{t} is not a finite interior point of {} for weight {}",
                self.domain, self.name
            )))
        }
    }
}

/// `d_ω(a, b) = |∫_a^b ω|`. Uses the antiderivative when present, adaptive
/// Gauss–Kronrod (abs 1e−12 / rel 1e−10) otherwise.
pub fn omega_distance(w: &Weight, a: f64, b: f64) -> Result<f64> {
    w.require_inside(a)?;
    w.require_inside(b)?;
    if a == b {
        return Ok(0.0);
    }
    match &w.antiderivative {
        Some(f) => Ok((f(b) - f(a)).abs()),
        None => Ok(omega_distance_quadrature(w, a, b)?.value.abs()),
    }
}

/// `∫_a^b ω` by adaptive quadrature regardless of any closed form.
pub fn omega_distance_quadrature(w: &Weight, a: f64, b: f64) -> Result<quadrature::Integral> {
    w.require_inside(a)?;
    w.require_inside(b)?;
    let density = w.density.clone();
    quadrature::integrate(move |t| density(t), a, b, Tolerance::default())
}

/// `k_ω(t) = (ω′² − ωω″)/ω⁴`, evaluated as `−(ln ω)″/ω²` when the weight
/// carries `(ln ω)″`.
pub fn curvature_k(w: &Weight, t: f64) -> Result<f64> {
    w.require_inside(t)?;
    let v = w.eval(t);
    if let Some(l2) = &w.log_d2 {
        return Ok(-l2(t) / (v * v));
    }
    let d1 = w.derivative(t)?;
    let d2 = w.second_derivative(t)?;
    Ok(curvature_from_jets(v, d1, d2))
}

/// `k_ω(t)` from finite differences even when analytic derivatives exist.
pub fn curvature_k_numeric(w: &Weight, t: f64) -> Result<f64> {
    w.require_inside(t)?;
    Ok(curvature_from_jets(w.eval(t), w.fd_first(t)?, w.fd_second(t)?))
}

#[inline]
fn curvature_from_jets(v: f64, d1: f64, d2: f64) -> f64 {
    let v2 = v * v;
    (d1 * d1 - v * d2) / (v2 * v2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Sin,
    Sinh,
    Linear,
}

/// One member of the positive solutions of `k_ω ≡ −k²`:
/// `C1/(k|sin(C1 t + C2)|)`, `C1/(k|sh(C1 t + C2)|)` or `1/(k|t + C|)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightFamily {
    pub kind: FamilyKind,
    #[serde(default = "one")]
    pub k: f64,
    #[serde(default = "one")]
    pub c1: f64,
    #[serde(default)]
    pub c2: f64,
    #[serde(default)]
    pub c: f64,
    pub interval: Interval,
}

fn one() -> f64 {
    1.0
}

impl WeightFamily {
    /// `(π/2)/cos(πt/2)` on `(−1, 1)`: the hyperbolic metric of the strip `(−1, 1) × ℝ`.
    pub fn strip() -> Self {
        Self {
            kind: FamilyKind::Sin,
            k: 1.0,
            c1: FRAC_PI_2,
            c2: -FRAC_PI_2,
            c: 0.0,
            interval: Interval { lo: -1.0, hi: 1.0 },
        }
    }

    /// `1/t` on `(0, ∞)`: the hyperbolic metric of the right half-plane.
    pub fn half_plane() -> Self {
        Self {
            kind: FamilyKind::Linear,
            k: 1.0,
            c1: 1.0,
            c2: 0.0,
            c: 0.0,
            interval: Interval {
                lo: 0.0,
                hi: f64::INFINITY,
            },
        }
    }

    /// `1/sh(t)` on `(0, ∞)`.
    pub fn sinh_unit() -> Self {
        Self {
            kind: FamilyKind::Sinh,
            k: 1.0,
            c1: 1.0,
            c2: 0.0,
            c: 0.0,
            interval: Interval {
                lo: 0.0,
                hi: f64::INFINITY,
            },
        }
    }

    /// Argument of the trigonometric / hyperbolic / linear denominator.
    #[inline]
    pub(crate) fn argument(&self, t: f64) -> f64 {
        match self.kind {
            FamilyKind::Sin | FamilyKind::Sinh => self.c1 * t + self.c2,
            FamilyKind::Linear => t + self.c,
        }
    }

    /// Denominator without the absolute value or the `k` factor.
    #[inline]
    pub(crate) fn raw_denominator(&self, t: f64) -> f64 {
        let u = self.argument(t);
        match self.kind {
            FamilyKind::Sin => u.sin(),
            FamilyKind::Sinh => u.sinh(),
            FamilyKind::Linear => u,
        }
    }

    fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        if !(self.k.is_finite() && self.k >= 1.0) {
            problems.push(format!("k must be ≥ 1, got {}", self.k));
        }
        if matches!(self.kind, FamilyKind::Sin | FamilyKind::Sinh) && !(self.c1.is_finite() && self.c1 > 0.0) {
            problems.push(format!("C1 must be > 0, got {}", self.c1));
        }
        if !self.c2.is_finite() || !self.c.is_finite() {
            problems.push("C2 and C must be finite".to_string());
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidInput(problems.join("; ")))
        }
    }

    /// The denominator must keep one sign on the open interval.
    fn check_single_signed(&self) -> Result<()> {
        let (lo, hi) = (self.interval.lo, self.interval.hi);
        let vanishes = Error::DenominatorVanishes { lo, hi };
        match self.kind {
            FamilyKind::Linear => {
                if self.interval.contains(-self.c) {
                    return Err(vanishes);
                }
            }
            FamilyKind::Sinh => {
                if self.interval.contains(-self.c2 / self.c1) {
                    return Err(vanishes);
                }
            }
            FamilyKind::Sin => {
                if !self.interval.is_bounded() {
                    return Err(vanishes);
                }
                let u_lo = self.argument(lo);
                let u_hi = self.argument(hi);
                let next_zero = ((u_lo / PI + 1e-9).floor() + 1.0) * PI;
                if next_zero < u_hi - 1e-9 * u_hi.abs().max(1.0) {
                    return Err(vanishes);
                }
            }
        }
        Ok(())
    }

    /// The closed-form `λ = log(2k²ω²)`, i.e. `log(2C1²/sin²u)`, `log(2C1²/sh²u)`
    /// or `log(2/(t + C)²)`; independent of `k`.
    pub fn lambda(&self, t: f64) -> Result<f64> {
        if !self.interval.contains(t) {
            return Err(Error::InvalidInput(format!("t = {t} is outside {}", self.interval)));
        }
        let d = self.raw_denominator(t);
        if d == 0.0 || !d.is_finite() {
            return Err(Error::Singularity(t));
        }
        let scale = match self.kind {
            FamilyKind::Linear => 1.0,
            _ => self.c1,
        };
        Ok(std::f64::consts::LN_2 + 2.0 * scale.ln() - 2.0 * d.abs().ln())
    }

    /// Closed-form `λ′`.
    pub fn dlambda(&self, t: f64) -> Result<f64> {
        self.lambda(t)?;
        let u = self.argument(t);
        Ok(match self.kind {
            FamilyKind::Sin => -2.0 * self.c1 * u.cos() / u.sin(),
            FamilyKind::Sinh => -2.0 * self.c1 * u.cosh() / u.sinh(),
            FamilyKind::Linear => -2.0 / u,
        })
    }
}

/// Builds the weight of a family member with analytic derivatives and antiderivative.
pub fn family_weight(f: &WeightFamily) -> Result<Weight> {
    f.validate()?;
    f.check_single_signed()?;
    let fam = *f;
    let sign = fam.raw_denominator(fam.interval.interior_point()).signum();
    let k = fam.k;
    let name = match fam.kind {
        FamilyKind::Sin => format!("C1/(k|sin(C1 t + C2)|) [k={k}, C1={}, C2={}]", fam.c1, fam.c2),
        FamilyKind::Sinh => format!("C1/(k|sh(C1 t + C2)|) [k={k}, C1={}, C2={}]", fam.c1, fam.c2),
        FamilyKind::Linear => format!("1/(k|t + C|) [k={k}, C={}]", fam.c),
    };
    let weight = match fam.kind {
        FamilyKind::Sin => {
            let (c1, c2) = (fam.c1, fam.c2);
            let amp = sign * c1 / k;
            Weight::new(name, fam.interval, move |t| amp / (c1 * t + c2).sin())
                .with_derivatives(
                    move |t| {
                        let u = c1 * t + c2;
                        let csc = 1.0 / u.sin();
                        -amp * c1 * csc * u.cos() * csc
                    },
                    move |t| {
                        let u = c1 * t + c2;
                        let csc = 1.0 / u.sin();
                        let cot = u.cos() * csc;
                        amp * c1 * c1 * csc * (cot * cot + csc * csc)
                    },
                )
                .with_log_second_derivative(move |t| {
                    let s = (c1 * t + c2).sin();
                    c1 * c1 / (s * s)
                })
                .with_antiderivative(move |t| amp / c1 * (0.5 * (c1 * t + c2)).tan().abs().ln())
        }
        FamilyKind::Sinh => {
            let (c1, c2) = (fam.c1, fam.c2);
            let amp = sign * c1 / k;
            Weight::new(name, fam.interval, move |t| amp / (c1 * t + c2).sinh())
                .with_derivatives(
                    move |t| {
                        let u = c1 * t + c2;
                        let csch = 1.0 / u.sinh();
                        -amp * c1 * csch * u.cosh() * csch
                    },
                    move |t| {
                        let u = c1 * t + c2;
                        let csch = 1.0 / u.sinh();
                        let coth = u.cosh() * csch;
                        amp * c1 * c1 * csch * (coth * coth + csch * csch)
                    },
                )
                .with_log_second_derivative(move |t| {
                    let s = (c1 * t + c2).sinh();
                    c1 * c1 / (s * s)
                })
                .with_antiderivative(move |t| amp / c1 * (0.5 * (c1 * t + c2)).tanh().abs().ln())
        }
        FamilyKind::Linear => {
            let c = fam.c;
            let amp = sign / k;
            Weight::new(name, fam.interval, move |t| amp / (t + c))
                .with_derivatives(
                    move |t| -amp / ((t + c) * (t + c)),
                    move |t| 2.0 * amp / ((t + c) * (t + c) * (t + c)),
                )
                .with_log_second_derivative(move |t| 1.0 / ((t + c) * (t + c)))
                .with_antiderivative(move |t| amp * (t + c).abs().ln())
        }
    };
    Ok(weight)
}

/// `(π/2)/cos(πt/2)` on `(−1, 1)`.
pub fn strip_weight() -> Weight {
    family_weight(&WeightFamily::strip()).expect("strip family is valid")
}

/// `1/t` on `(0, ∞)`.
pub fn half_plane_weight() -> Weight {
    family_weight(&WeightFamily::half_plane()).expect("half-plane family is valid")
}

/// `2/(1 − t²)` on `(−1, 1)`: the hyperbolic disk metric restricted to the
/// diameter. Its `k` is `−(1 + t²)/2`, so it does not satisfy `k ≤ −1`.
pub fn hyperbolic_interval_weight() -> Weight {
    let domain = Interval { lo: -1.0, hi: 1.0 };
    Weight::new("2/(1 - t^2)", domain, |t| 2.0 / (1.0 - t * t))
        .with_derivatives(
            |t| {
                let q = 1.0 - t * t;
                4.0 * t / (q * q)
            },
            |t| {
                let q = 1.0 - t * t;
                (4.0 + 12.0 * t * t) / (q * q * q)
            },
        )
        .with_antiderivative(|t| 2.0 * t.atanh())
}

/// Serializable selection of a weight, used by configs and the command line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightSpec {
    Strip,
    HalfPlane,
    HyperbolicInterval,
    Family(WeightFamily),
}

impl WeightSpec {
    pub fn build(&self) -> Result<Weight> {
        match self {
            WeightSpec::Strip => Ok(strip_weight()),
            WeightSpec::HalfPlane => Ok(half_plane_weight()),
            WeightSpec::HyperbolicInterval => Ok(hyperbolic_interval_weight()),
            WeightSpec::Family(f) => family_weight(f),
        }
    }
}

/// Evaluation grid. Without an explicit range the interval is shrunk by
/// `1e−6·span` at finite ends; an infinite end is reached through
/// `s ↦ s/(1 − s)` for `s ≤ 0.99`, i.e. up to 99 units from the finite end.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub points: usize,
    #[serde(default)]
    pub range: Option<(f64, f64)>,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            points: 1001,
            range: None,
        }
    }
}

impl GridSpec {
    pub fn with_range(points: usize, lo: f64, hi: f64) -> Self {
        Self {
            points,
            range: Some((lo, hi)),
        }
    }

    pub fn points(&self, domain: Interval) -> Result<Vec<f64>> {
        if self.points == 0 {
            return Err(Error::InvalidInput("grid needs at least one point".into()));
        }
        let lin = |lo: f64, hi: f64, n: usize| -> Vec<f64> {
            if n == 1 {
                return vec![0.5 * (lo + hi)];
            }
            let step = (hi - lo) / (n - 1) as f64;
            (0..n).map(|i| if i == n - 1 { hi } else { lo + step * i as f64 }).collect()
        };
        let pts = match self.range {
            Some((lo, hi)) => {
                if !(domain.contains(lo) && domain.contains(hi) && lo <= hi) {
                    return Err(Error::InvalidInput(format!("grid range [{lo}, {hi}] is not inside {domain}")));
                }
                lin(lo, hi, self.points)
            }
            None => {
                const SHRINK: f64 = 1e-6;
                const TAIL: f64 = 0.99;
                match (domain.lo.is_finite(), domain.hi.is_finite()) {
                    (true, true) => {
                        let pad = SHRINK * (domain.hi - domain.lo);
                        lin(domain.lo + pad, domain.hi - pad, self.points)
                    }
                    (true, false) => lin(SHRINK, TAIL, self.points)
                        .into_iter()
                        .map(|s| domain.lo + s / (1.0 - s))
                        .collect(),
                    _ => lin(SHRINK, TAIL, self.points)
                        .into_iter()
                        .rev()
                        .map(|s| domain.hi - s / (1.0 - s))
                        .collect(),
                }
            }
        };
        Ok(pts)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub max_k: f64,
    pub argmax: f64,
    pub tolerance: f64,
    pub analytic: bool,
    pub points: usize,
    pub passes: bool,
}

/// Tolerance on `max k_ω ≤ −1` with analytic derivatives.
pub const CURVATURE_TOL_ANALYTIC: f64 = 1e-8;
/// Tolerance on `max k_ω ≤ −1` with the finite-difference fallback.
pub const CURVATURE_TOL_NUMERIC: f64 = 1e-5;

/// Maximum of `k_ω` over the grid and whether it stays `≤ −1 + tol`.
pub fn verify_curvature_bound(w: &Weight, grid: &GridSpec) -> Result<BoundReport> {
    let analytic = w.has_analytic_derivatives();
    let tolerance = if analytic {
        CURVATURE_TOL_ANALYTIC
    } else {
        CURVATURE_TOL_NUMERIC
    };
    let pts = grid.points(w.domain)?;
    let mut max_k = f64::NEG_INFINITY;
    let mut argmax = f64::NAN;
    for &t in &pts {
        let k = curvature_k(w, t)?;
        if k > max_k || k.is_nan() {
            max_k = k;
            argmax = t;
        }
    }
    Ok(BoundReport {
        max_k,
        argmax,
        tolerance,
        analytic,
        points: pts.len(),
        passes: max_k <= -1.0 + tolerance,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub factor: f64,
    pub min_ratio: f64,
    pub argmin: f64,
    pub points: usize,
    pub passes: bool,
}

/// Checks `c·w2 ≤ w1` pointwise and reports `min w1/w2`.
pub fn compare_weights(w1: &Weight, w2: &Weight, c: f64, grid: &GridSpec) -> Result<ComparisonReport> {
    if w1.domain != w2.domain {
        return Err(Error::InvalidInput(format!(
            "weights live on different intervals {} and {}",
            w1.domain, w2.domain
        )));
    }
    let pts = grid.points(w1.domain)?;
    let mut min_ratio = f64::INFINITY;
    let mut argmin = f64::NAN;
    let mut passes = true;
    for &t in &pts {
        let (a, b) = (w1.eval(t), w2.eval(t));
        let ratio = a / b;
        if ratio < min_ratio {
            min_ratio = ratio;
            argmin = t;
        }
        if c * b > a * (1.0 + 4.0 * f64::EPSILON) {
            passes = false;
        }
    }
    Ok(ComparisonReport {
        factor: c,
        min_ratio,
        argmin,
        points: pts.len(),
        passes,
    })
}
