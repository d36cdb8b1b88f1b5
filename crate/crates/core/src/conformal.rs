//! Conformal planar surfaces `h(z)|dz|`: the Poincaré disk (`h = 2/(1 − |z|²)`),
//! the right half-plane (`h = 1/Re z`) and vertical strips `J × ℝ` carrying
//! `h(z) = ω(Re z)`. Provides Gauss curvature `−Δ log h / h²`, path lengths of
//! polylines and distances, closed-form where one is known and otherwise by
//! minimizing polyline length.

use std::collections::VecDeque;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::disk::{self, DiskPoint};
use crate::error::{Error, Result};
use crate::quadrature::{self, gl8_unit, Tolerance};
use crate::weights::{curvature_k, Weight, WeightSpec};

#[derive(Debug, Clone)]
pub enum PlanarDomain {
    PoincareDisk,
    HalfPlane,
    Strip(Weight),
}

/// Serializable domain selection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DomainSpec {
    Disk,
    HalfPlane,
    Strip(WeightSpec),
}

impl DomainSpec {
    pub fn build(&self) -> Result<PlanarDomain> {
        Ok(match self {
            DomainSpec::Disk => PlanarDomain::PoincareDisk,
            DomainSpec::HalfPlane => PlanarDomain::HalfPlane,
            DomainSpec::Strip(w) => PlanarDomain::Strip(w.build()?),
        })
    }
}

impl PlanarDomain {
    pub fn describe(&self) -> String {
        match self {
            PlanarDomain::PoincareDisk => "Poincaré disk, h = 2/(1 - |z|^2)".into(),
            PlanarDomain::HalfPlane => "right half-plane, h = 1/Re z".into(),
            PlanarDomain::Strip(w) => format!("strip {} x R, h = {}", w.domain(), w.name()),
        }
    }

    pub fn contains(&self, z: Complex64) -> bool {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return false;
        }
        match self {
            PlanarDomain::PoincareDisk => z.norm() < 1.0 - disk::BOUNDARY_GUARD,
            PlanarDomain::HalfPlane => z.re > 0.0,
            PlanarDomain::Strip(w) => w.domain().contains(z.re),
        }
    }

    fn require(&self, z: Complex64) -> Result<()> {
        if self.contains(z) {
            Ok(())
        } else {
            Err(Error::OutsideDomain {
                point: z,
                domain: self.describe(),
            })
        }
    }

    #[inline]
    fn h(&self, z: Complex64) -> f64 {
        match self {
            PlanarDomain::PoincareDisk => 2.0 / (1.0 - z.norm_sqr()),
            PlanarDomain::HalfPlane => 1.0 / z.re,
            PlanarDomain::Strip(w) => w.eval(z.re),
        }
    }

    /// `(∂h/∂x, ∂h/∂y)` packed as a complex number.
    fn grad_h(&self, z: Complex64) -> Complex64 {
        match self {
            PlanarDomain::PoincareDisk => {
                let q = 1.0 - z.norm_sqr();
                z * (4.0 / (q * q))
            }
            PlanarDomain::HalfPlane => Complex64::new(-1.0 / (z.re * z.re), 0.0),
            PlanarDomain::Strip(w) => Complex64::new(w.derivative(z.re).unwrap_or(f64::NAN), 0.0),
        }
    }
}

/// Conformal density `h(z)`.
pub fn density(d: &PlanarDomain, z: Complex64) -> Result<f64> {
    d.require(z)?;
    Ok(d.h(z))
}

/// Gauss curvature `−Δ log h / h²` in closed form; for strips this is `k_ω(Re z)`.
pub fn gauss_curvature(d: &PlanarDomain, z: Complex64) -> Result<f64> {
    d.require(z)?;
    match d {
        PlanarDomain::PoincareDisk | PlanarDomain::HalfPlane => Ok(-1.0),
        PlanarDomain::Strip(w) => curvature_k(w, z.re),
    }
}

/// Gauss curvature from a five-point Laplacian of `log h`.
pub fn gauss_curvature_numeric(d: &PlanarDomain, z: Complex64) -> Result<f64> {
    d.require(z)?;
    let step = f64::EPSILON.powf(0.25) * z.norm().max(1.0);
    let offsets = [
        Complex64::new(step, 0.0),
        Complex64::new(-step, 0.0),
        Complex64::new(0.0, step),
        Complex64::new(0.0, -step),
    ];
    let mut around = 0.0;
    for o in offsets {
        let p = z + o;
        if !d.contains(p) {
            return Err(Error::StencilOutsideDomain { t: z.re, step });
        }
        around += d.h(p).ln();
    }
    let lap = (around - 4.0 * d.h(z).ln()) / (step * step);
    let h = d.h(z);
    Ok(-lap / (h * h))
}

/// A polyline with at least two nodes and no repeated consecutive nodes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathPolyline {
    nodes: Vec<Complex64>,
}

impl PathPolyline {
    pub fn new(nodes: Vec<Complex64>) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(Error::InvalidInput("a path needs at least two nodes".into()));
        }
        if !nodes.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::InvalidInput("non-finite path node".into()));
        }
        if nodes.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("consecutive path nodes coincide".into()));
        }
        Ok(Self { nodes })
    }

    /// Straight segment from `a` to `b` split into `segments` equal pieces.
    pub fn straight(a: Complex64, b: Complex64, segments: usize) -> Result<Self> {
        let n = segments.max(1);
        Self::new((0..=n).map(|i| a + (b - a) * (i as f64 / n as f64)).collect())
    }

    pub fn nodes(&self) -> &[Complex64] {
        &self.nodes
    }

    /// Inserts the midpoint of every segment.
    pub fn refined(&self) -> Self {
        let mut nodes = Vec::with_capacity(2 * self.nodes.len() - 1);
        for w in self.nodes.windows(2) {
            nodes.push(w[0]);
            nodes.push(0.5 * (w[0] + w[1]));
        }
        nodes.push(*self.nodes.last().expect("non-empty"));
        Self { nodes }
    }
}

const MEMBERSHIP_SAMPLES: usize = 16;
const LENGTH_TOL: f64 = 1e-12;

fn check_segment(d: &PlanarDomain, a: Complex64, b: Complex64) -> Result<()> {
    for i in 0..MEMBERSHIP_SAMPLES {
        let s = i as f64 / (MEMBERSHIP_SAMPLES - 1) as f64;
        d.require(a + (b - a) * s)?;
    }
    Ok(())
}

fn segment_length(d: &PlanarDomain, a: Complex64, b: Complex64) -> f64 {
    let delta = b - a;
    let (v, _) = quadrature::gauss_legendre_doubling(|s| d.h(a + delta * s), 0.0, 1.0, LENGTH_TOL, 1 << 12);
    v * delta.norm()
}

/// `ℓ(γ) = ∫ h(γ)|γ′|` summed over segments with doubling Gauss–Legendre.
pub fn path_length(d: &PlanarDomain, p: &PathPolyline) -> Result<f64> {
    let mut total = 0.0;
    for w in p.nodes.windows(2) {
        check_segment(d, w[0], w[1])?;
        total += segment_length(d, w[0], w[1]);
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceMethod {
    ClosedForm,
    Variational,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub path: PathPolyline,
    pub iterations: usize,
    pub gradient_norm: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceResult {
    pub value: f64,
    pub method: DistanceMethod,
    pub certificate: Option<Certificate>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VariationalOptions {
    pub interior_nodes: usize,
    pub max_iterations: usize,
    /// Stop once the ∞-norm of the length gradient drops below this.
    pub gradient_tol: f64,
    pub memory: usize,
}

impl Default for VariationalOptions {
    fn default() -> Self {
        Self {
            interior_nodes: 65,
            max_iterations: 500,
            gradient_tol: 1e-6,
            memory: 10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct DistanceOptions {
    pub force_variational: bool,
    pub variational: VariationalOptions,
}

/// `d(z, w) = inf ℓ(γ)` with default options.
pub fn distance(d: &PlanarDomain, z: Complex64, w: Complex64) -> Result<DistanceResult> {
    distance_with(d, z, w, &DistanceOptions::default())
}

pub fn distance_with(d: &PlanarDomain, z: Complex64, w: Complex64, opts: &DistanceOptions) -> Result<DistanceResult> {
    d.require(z)?;
    d.require(w)?;
    if z == w {
        return Ok(DistanceResult {
            value: 0.0,
            method: DistanceMethod::ClosedForm,
            certificate: None,
        });
    }
    let closed = match d {
        PlanarDomain::PoincareDisk => Some(disk::hyperbolic_sigma(DiskPoint::new(z)?, DiskPoint::new(w)?)),
        PlanarDomain::HalfPlane => Some(half_plane_distance(z, w)),
        PlanarDomain::Strip(_) => None,
    };
    match closed {
        Some(value) if !opts.force_variational => Ok(DistanceResult {
            value,
            method: DistanceMethod::ClosedForm,
            certificate: None,
        }),
        _ => variational_distance(d, z, w, &opts.variational),
    }
}

/// `2 atanh(|z − w|/|z + w̄|)` for the metric `|dz|/Re z`.
pub fn half_plane_distance(z: Complex64, w: Complex64) -> f64 {
    let denom = (z + w.conj()).norm_sqr();
    let rho = ((z - w).norm_sqr() / denom).sqrt();
    disk::sigma_from_rho(rho, 4.0 * z.re * w.re / denom)
}

/// Cayley map `(1 − z)/(1 + z)` of the disk onto the right half-plane.
pub fn cayley(z: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    (one - z) / (one + z)
}

/// Point at hyperbolic distance `s` from `z` on the disk geodesic toward `w`.
pub fn poincare_geodesic_point(z: Complex64, w: Complex64, s: f64) -> Complex64 {
    let u = disk::phi(z, w);
    let r = u.norm();
    if r == 0.0 {
        return z;
    }
    disk::phi(z, u / r * (0.5 * s).tanh())
}

/// Discrete path energy `(n + 1)·Σ ℓᵢ²` over the polyline segments, whose
/// minimum is the squared length of an equally spaced minimizing polyline.
struct EnergyFunctional<'a> {
    domain: &'a PlanarDomain,
    start: Complex64,
    end: Complex64,
    rule: [(f64, f64); 8],
}

impl EnergyFunctional<'_> {
    fn node(&self, x: &[f64], i: usize, n: usize) -> Complex64 {
        if i == 0 {
            self.start
        } else if i == n + 1 {
            self.end
        } else {
            Complex64::new(x[2 * (i - 1)], x[2 * (i - 1) + 1])
        }
    }

    /// Energy and its gradient with respect to the interior nodes; `None` when
    /// any quadrature node leaves the domain.
    fn value_and_grad(&self, x: &[f64], grad: &mut [f64]) -> Option<f64> {
        let n = x.len() / 2;
        let segments = (n + 1) as f64;
        grad.iter_mut().for_each(|g| *g = 0.0);
        let mut total = 0.0;
        for seg in 0..=n {
            let p = self.node(x, seg, n);
            let q = self.node(x, seg + 1, n);
            let delta = q - p;
            let len = delta.norm();
            let unit = if len > 0.0 { delta / len } else { Complex64::new(0.0, 0.0) };
            let mut ell = 0.0;
            let mut gp = Complex64::new(0.0, 0.0);
            let mut gq = Complex64::new(0.0, 0.0);
            for &(s, wgt) in &self.rule {
                let pt = p + delta * s;
                if !self.domain.contains(pt) {
                    return None;
                }
                let h = self.domain.h(pt);
                let gh = self.domain.grad_h(pt);
                ell += wgt * h * len;
                gp += wgt * (gh * ((1.0 - s) * len) - unit * h);
                gq += wgt * (gh * (s * len) + unit * h);
            }
            total += segments * ell * ell;
            let scale = 2.0 * segments * ell;
            if seg > 0 {
                grad[2 * (seg - 1)] += scale * gp.re;
                grad[2 * (seg - 1) + 1] += scale * gp.im;
            }
            if seg < n {
                grad[2 * seg] += scale * gq.re;
                grad[2 * seg + 1] += scale * gq.im;
            }
        }
        total.is_finite().then_some(total)
    }
}

/// Energy gradient in length units: `∇E/(2√E)` is the length gradient at a
/// constant-speed polyline.
fn length_gradient_norm(g: &[f64], energy: f64) -> f64 {
    inf_norm(g) / (2.0 * energy.sqrt())
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn inf_norm(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// Minimizes the polyline energy between `z` and `w` with L-BFGS and Armijo
/// backtracking, starting from the straight segment, and reports the length of
/// the result.
pub fn variational_distance(d: &PlanarDomain, z: Complex64, w: Complex64, opts: &VariationalOptions) -> Result<DistanceResult> {
    d.require(z)?;
    d.require(w)?;
    if z == w {
        return Ok(DistanceResult {
            value: 0.0,
            method: DistanceMethod::Variational,
            certificate: None,
        });
    }
    let initial = PathPolyline::straight(z, w, opts.interior_nodes + 1)?;
    for s in initial.nodes.windows(2) {
        check_segment(d, s[0], s[1])?;
    }
    let functional = EnergyFunctional {
        domain: d,
        start: z,
        end: w,
        rule: gl8_unit(),
    };
    let n = opts.interior_nodes;
    let mut x: Vec<f64> = initial.nodes[1..=n].iter().flat_map(|c| [c.re, c.im]).collect();
    let mut g = vec![0.0; 2 * n];
    let mut f = functional.value_and_grad(&x, &mut g).ok_or_else(|| Error::OutsideDomain {
        point: z,
        domain: d.describe(),
    })?;
    let mut history: VecDeque<(Vec<f64>, Vec<f64>, f64)> = VecDeque::with_capacity(opts.memory);
    let mut iterations = 0;
    let mut trial = vec![0.0; 2 * n];
    let mut g_trial = vec![0.0; 2 * n];

    while iterations < opts.max_iterations && length_gradient_norm(&g, f) >= opts.gradient_tol {
        // Two-loop recursion.
        let mut dir: Vec<f64> = g.iter().map(|v| -v).collect();
        let mut alphas = Vec::with_capacity(history.len());
        for (s, y, rho) in history.iter().rev() {
            let a = rho * dot(s, &dir);
            dir.iter_mut().zip(y).for_each(|(di, yi)| *di -= a * yi);
            alphas.push(a);
        }
        if let Some((s, y, _)) = history.back() {
            let gamma = dot(s, y) / dot(y, y);
            dir.iter_mut().for_each(|di| *di *= gamma);
        }
        for ((s, y, rho), a) in history.iter().zip(alphas.iter().rev()) {
            let b = rho * dot(y, &dir);
            dir.iter_mut().zip(s).for_each(|(di, si)| *di += (a - b) * si);
        }
        let mut slope = dot(&g, &dir);
        if slope >= 0.0 {
            history.clear();
            dir = g.iter().map(|v| -v).collect();
            slope = -dot(&g, &g);
        }

        let mut step = 1.0;
        let mut accepted = None;
        for _ in 0..60 {
            trial.iter_mut().zip(&x).zip(&dir).for_each(|((t, xi), di)| *t = xi + step * di);
            if let Some(ft) = functional.value_and_grad(&trial, &mut g_trial) {
                if ft <= f + 1e-4 * step * slope {
                    accepted = Some(ft);
                    break;
                }
            }
            step *= 0.5;
        }
        let Some(f_new) = accepted else {
            // No decrease representable in floating point.
            break;
        };
        iterations += 1;
        let s: Vec<f64> = trial.iter().zip(&x).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = g_trial.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &y);
        if sy > 1e-16 * dot(&y, &y).sqrt() * dot(&s, &s).sqrt() {
            if history.len() == opts.memory {
                history.pop_front();
            }
            history.push_back((s, y, 1.0 / sy));
        }
        std::mem::swap(&mut x, &mut trial);
        std::mem::swap(&mut g, &mut g_trial);
        f = f_new;
    }

    let nodes: Vec<Complex64> = std::iter::once(z)
        .chain(x.chunks(2).map(|c| Complex64::new(c[0], c[1])))
        .chain(std::iter::once(w))
        .collect();
    let gradient_norm = length_gradient_norm(&g, f);
    let path = PathPolyline::new(dedup(nodes))?;
    let value = path_length(d, &path)?;
    Ok(DistanceResult {
        value,
        method: DistanceMethod::Variational,
        certificate: Some(Certificate {
            path,
            iterations,
            gradient_norm,
            converged: gradient_norm < opts.gradient_tol,
        }),
    })
}

fn dedup(mut nodes: Vec<Complex64>) -> Vec<Complex64> {
    nodes.dedup();
    nodes
}

/// `d(ζ, ζ + ε·dir)/ε`, which tends to `h(ζ)` as `ε → 0`.
pub fn secant_ratio(d: &PlanarDomain, zeta: Complex64, direction: Complex64, offset: f64) -> Result<f64> {
    let unit = direction / direction.norm();
    let eta = zeta + unit * offset;
    Ok(distance(d, zeta, eta)?.value / offset)
}

/// Reparameterizes each segment by metric arc length and returns the largest
/// deviation of `H(γ′, γ′) = h(γ)²|γ′|²` from 1 at the arc-length midpoints.
pub fn unit_tangent_norm_check(d: &PlanarDomain, p: &PathPolyline) -> Result<f64> {
    let tol = Tolerance {
        absolute: 1e-15,
        relative: 1e-14,
        max_intervals: 4000,
    };
    let mut worst: f64 = 0.0;
    for seg in p.nodes.windows(2) {
        let (a, b) = (seg[0], seg[1]);
        check_segment(d, a, b)?;
        let delta = b - a;
        let speed = |s: f64| d.h(a + delta * s) * delta.norm();
        let arc = |s: f64| quadrature::integrate(speed, 0.0, s, tol).map(|r| r.value);
        let total = arc(1.0)?;
        if total < 1e-12 {
            continue;
        }
        // Newton on S(s) = target with S′ = h|δ|, bracketed in [0, 1].
        let invert = |target: f64| -> Result<f64> {
            let mut s = target / total;
            for _ in 0..50 {
                let step = (arc(s)? - target) / speed(s);
                s = (s - step).clamp(0.0, 1.0);
                if step.abs() < 1e-16 {
                    break;
                }
            }
            Ok(s)
        };
        let mid = 0.5 * total;
        let s_mid = invert(mid)?;
        let central = |eps: f64| -> Result<f64> { Ok((invert(mid + eps)? - invert(mid - eps)?) / (2.0 * eps)) };
        // Richardson-extrapolated central difference of s(σ).
        let eps = 1e-3 * total;
        let ds = (4.0 * central(0.5 * eps)? - central(eps)?) / 3.0;
        let tangent = delta.norm() * ds;
        let h = d.h(a + delta * s_mid);
        worst = worst.max((h * h * tangent * tangent - 1.0).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::{hyperbolic_interval_weight, omega_distance, strip_weight};
    use std::f64::consts::{E, FRAC_PI_2};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn strip() -> PlanarDomain {
        PlanarDomain::Strip(strip_weight())
    }

    #[test]
    fn density_examples() {
        assert_eq!(density(&PlanarDomain::PoincareDisk, c(0.0, 0.0)).unwrap(), 2.0);
        let v = density(&strip(), c(0.5, 7.0)).unwrap();
        assert!((v - 2.221_441_469_079_183).abs() < 1e-14);
        assert_eq!(density(&strip(), c(0.5, -3.0)).unwrap(), v);
        assert_eq!(density(&PlanarDomain::HalfPlane, c(1.0, 1.0)).unwrap(), 1.0);
        assert!(density(&PlanarDomain::HalfPlane, c(-1.0, 0.0)).is_err());
        assert!(density(&strip(), c(1.0, 0.0)).is_err());
    }

    #[test]
    fn curvature_examples() {
        for z in [c(0.0, 0.0), c(0.3, -0.5), c(-0.8, 0.1)] {
            assert_eq!(gauss_curvature(&PlanarDomain::PoincareDisk, z).unwrap(), -1.0);
            let num = gauss_curvature_numeric(&PlanarDomain::PoincareDisk, z).unwrap();
            assert!((num + 1.0).abs() < 1e-5, "{num}");
        }
        for z in [c(1.0, 0.0), c(0.5, 3.0)] {
            assert_eq!(gauss_curvature(&PlanarDomain::HalfPlane, z).unwrap(), -1.0);
            let num = gauss_curvature_numeric(&PlanarDomain::HalfPlane, z).unwrap();
            assert!((num + 1.0).abs() < 1e-5, "{num}");
        }
        let tilde = PlanarDomain::Strip(hyperbolic_interval_weight());
        assert!((gauss_curvature(&tilde, c(0.0, 0.0)).unwrap() + 0.5).abs() < 1e-14);
        assert!((gauss_curvature_numeric(&tilde, c(0.0, 2.0)).unwrap() + 0.5).abs() < 1e-5);
        let num = gauss_curvature_numeric(&strip(), c(0.4, 1.0)).unwrap();
        assert!((num + 1.0).abs() < 1e-5);
    }

    #[test]
    fn length_examples() {
        let p = PathPolyline::straight(c(0.0, 0.0), c(0.5, 0.0), 1).unwrap();
        assert!((path_length(&PlanarDomain::PoincareDisk, &p).unwrap() - 3f64.ln()).abs() < 1e-12);
        let x = 0.3;
        let p = PathPolyline::straight(c(x, 0.0), c(x, 1.0), 1).unwrap();
        let expect = FRAC_PI_2 / (FRAC_PI_2 * x).cos();
        assert!((path_length(&strip(), &p).unwrap() - expect).abs() < 1e-12);
        let p = PathPolyline::straight(c(0.0, 0.0), c(0.5, 0.0), 3).unwrap();
        let d = omega_distance(&strip_weight(), 0.0, 0.5).unwrap();
        assert!((path_length(&strip(), &p).unwrap() - d).abs() < 1e-12);
    }

    #[test]
    fn length_rejects_exiting_segments() {
        // Endpoints inside, the chord through the origin of the half-plane is not.
        let p = PathPolyline::new(vec![c(0.001, 1.0), c(0.001, -1.0), c(-0.5, 0.0), c(1.0, 0.0)]);
        assert!(path_length(&PlanarDomain::HalfPlane, &p.unwrap()).is_err());
        assert!(PathPolyline::new(vec![c(0.0, 0.0)]).is_err());
        assert!(PathPolyline::new(vec![c(0.1, 0.0), c(0.1, 0.0)]).is_err());
    }

    #[test]
    fn refinement_does_not_grow_length() {
        let p = PathPolyline::new(vec![c(-0.5, 0.2), c(0.1, 0.6), c(0.7, -0.1)]).unwrap();
        let d = PlanarDomain::PoincareDisk;
        let l0 = path_length(&d, &p).unwrap();
        let l1 = path_length(&d, &p.refined()).unwrap();
        assert!((l1 - l0).abs() < 1e-10);
    }

    #[test]
    fn distance_examples() {
        let r = distance(&PlanarDomain::PoincareDisk, c(0.0, 0.0), c(0.5, 0.0)).unwrap();
        assert_eq!(r.method, DistanceMethod::ClosedForm);
        assert!((r.value - 3f64.ln()).abs() < 1e-15);
        let r = distance(&PlanarDomain::HalfPlane, c(1.0, 0.0), c(E, 0.0)).unwrap();
        assert!((r.value - 1.0).abs() < 1e-15);
        let r = distance(&strip(), c(0.0, 0.0), c(0.5, 0.0)).unwrap();
        assert_eq!(r.method, DistanceMethod::Variational);
        let expect = omega_distance(&strip_weight(), 0.0, 0.5).unwrap();
        assert!((r.value - expect).abs() < 1e-3 * expect);
        for d in [PlanarDomain::PoincareDisk, PlanarDomain::HalfPlane, strip()] {
            assert_eq!(distance(&d, c(0.4, 0.2), c(0.4, 0.2)).unwrap().value, 0.0);
        }
    }

    #[test]
    fn horizontal_segments_are_strip_geodesics() {
        let d = strip();
        for (a, b, y) in [(-0.7, 0.5, 0.0), (-0.2, 0.9, 0.7), (0.1, 0.3, -2.5)] {
            let r = distance(&d, c(a, y), c(b, y)).unwrap();
            let interval = omega_distance(&strip_weight(), a, b).unwrap();
            assert!((r.value - interval).abs() < 1e-6 * interval, "{} vs {interval}", r.value);
        }
    }

    #[test]
    fn half_plane_closed_form_matches_variational() {
        // The chord error decays like N⁻²; 257 nodes bring it below 1e-6.
        let forced = DistanceOptions {
            force_variational: true,
            variational: VariationalOptions {
                interior_nodes: 257,
                max_iterations: 5000,
                ..VariationalOptions::default()
            },
        };
        for (z, w) in [(c(1.0, 0.0), c(2.0, 1.0)), (c(0.5, -0.3), c(0.8, 0.6)), (c(3.0, 0.0), c(0.7, 0.2))] {
            let exact = half_plane_distance(z, w);
            let v = distance_with(&PlanarDomain::HalfPlane, z, w, &forced).unwrap().value;
            assert!((v - exact).abs() < 1e-6 * exact, "{v} vs {exact}");
        }
    }

    #[test]
    fn strip_distance_dominates_interval_distance() {
        let d = strip();
        let (z, w) = (c(-0.6, 0.3), c(0.4, 1.2));
        let r = distance(&d, z, w).unwrap();
        let lower = omega_distance(&strip_weight(), z.re, w.re).unwrap();
        assert!(r.value >= lower - 1e-9);
        let straight = path_length(&d, &PathPolyline::straight(z, w, 1).unwrap()).unwrap();
        assert!(r.value <= straight + 1e-9);
    }

    #[test]
    fn forced_variational_matches_disk_closed_form() {
        let opts = DistanceOptions {
            force_variational: true,
            ..Default::default()
        };
        let (z, w) = (c(-0.3, 0.5), c(0.6, -0.2));
        let v = distance_with(&PlanarDomain::PoincareDisk, z, w, &opts).unwrap();
        let exact = distance(&PlanarDomain::PoincareDisk, z, w).unwrap().value;
        assert!((v.value - exact).abs() < 1e-3 * exact, "{} vs {exact}", v.value);
        assert!(v.value >= exact - 1e-9);
    }

    #[test]
    fn cayley_is_an_isometry() {
        for (z, w) in [(c(0.1, 0.2), c(-0.5, 0.3)), (c(0.0, 0.0), c(0.9, 0.0)), (c(0.3, -0.7), c(0.2, 0.6))] {
            let a = distance(&PlanarDomain::PoincareDisk, z, w).unwrap().value;
            let b = distance(&PlanarDomain::HalfPlane, cayley(z), cayley(w)).unwrap().value;
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn strip_distance_matches_the_exponential_map() {
        // z ↦ exp(iπz/2) is an isometry from the strip metric onto the half-plane metric.
        let to_half_plane = |z: Complex64| (c(0.0, FRAC_PI_2) * z).exp();
        let d = PlanarDomain::Strip(strip_weight());
        for (a, b) in [(c(-0.5, 0.0), c(0.6, 1.5)), (c(0.0, 0.0), c(0.5, 0.5)), (c(0.1, 0.2), c(0.3, -0.4))] {
            let r = distance(&d, a, b).unwrap();
            let exact = half_plane_distance(to_half_plane(a), to_half_plane(b));
            assert!((r.value - exact).abs() < 1e-4 * exact, "{a} {b}: {} vs {exact}", r.value);
            assert!(r.certificate.unwrap().converged);
        }
    }

    #[test]
    fn secant_ratios_approach_density() {
        for (d, zeta) in [(PlanarDomain::PoincareDisk, c(0.3, 0.4)), (PlanarDomain::HalfPlane, c(0.7, 0.2)), (strip(), c(0.5, 0.0))] {
            let h = density(&d, zeta).unwrap();
            let errs: Vec<f64> = [1e-3, 1e-4, 1e-5]
                .iter()
                .map(|&eps| (secant_ratio(&d, zeta, c(1.0, 1.0), eps).unwrap() - h).abs() / h)
                .collect();
            assert!(errs[0] > errs[1] && errs[1] > errs[2], "{errs:?}");
            assert!(errs[2] < 1e-2);
        }
    }

    #[test]
    fn geodesic_points() {
        let (z, w) = (c(0.2, -0.1), c(-0.4, 0.5));
        let total = distance(&PlanarDomain::PoincareDisk, z, w).unwrap().value;
        assert!((poincare_geodesic_point(z, w, 0.0) - z).norm() < 1e-15);
        assert!((poincare_geodesic_point(z, w, total) - w).norm() < 1e-12);
        let mid = poincare_geodesic_point(z, w, 0.5 * total);
        let dz = distance(&PlanarDomain::PoincareDisk, z, mid).unwrap().value;
        assert!((dz - 0.5 * total).abs() < 1e-12);
    }

    #[test]
    fn unit_tangent_examples() {
        let p = PathPolyline::straight(c(-0.6, 0.0), c(0.6, 0.0), 4).unwrap();
        assert!(unit_tangent_norm_check(&PlanarDomain::PoincareDisk, &p).unwrap() < 1e-8);
        let p = PathPolyline::straight(c(0.5, -1.0), c(0.5, 2.0), 3).unwrap();
        assert!(unit_tangent_norm_check(&PlanarDomain::HalfPlane, &p).unwrap() < 1e-8);
        let p = PathPolyline::new(vec![c(0.1, 0.1), c(0.1, 0.1 + 1e-14)]).unwrap();
        assert!(unit_tangent_norm_check(&PlanarDomain::PoincareDisk, &p).unwrap() < 1e-8);
    }
}
