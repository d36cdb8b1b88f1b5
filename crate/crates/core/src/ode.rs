//! The Liouville equation `λ″ = e^λ`, which `k_ω ≡ −k²` becomes under
//! `λ = log(2k²ω²)`. Integrated with an adaptive Dormand–Prince 5(4) pair and
//! cubic Hermite dense output, and reconciled with the closed-form families.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weights::{Interval, Weight, WeightFamily};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LiouvilleState {
    pub t: f64,
    pub lambda: f64,
    pub dlambda: f64,
}

impl LiouvilleState {
    /// State on the closed-form solution of a family at `t`.
    pub fn from_family(f: &WeightFamily, t: f64) -> Result<Self> {
        Ok(Self {
            t,
            lambda: f.lambda(t)?,
            dlambda: f.dlambda(t)?,
        })
    }

    /// `λ′²/2 − e^λ`, conserved along exact solutions.
    pub fn energy(&self) -> f64 {
        0.5 * self.dlambda * self.dlambda - self.lambda.exp()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    /// Local error allowed per unit step.
    pub tol: f64,
    pub max_step: f64,
    /// Integration stops once `λ` exceeds this value.
    pub blow_up_cap: f64,
    pub max_steps: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_step: 0.05,
            blow_up_cap: 50.0,
            max_steps: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepControl {
    pub tol: f64,
    pub max_step: f64,
    pub accepted: usize,
    pub rejected: usize,
}

/// Accepted states in strictly increasing `t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    samples: Vec<LiouvilleState>,
    control: StepControl,
    /// `t` at which `λ` crossed the cap, if it did.
    blow_up: Option<f64>,
}

impl Trajectory {
    pub fn samples(&self) -> &[LiouvilleState] {
        &self.samples
    }

    pub fn control(&self) -> StepControl {
        self.control
    }

    pub fn blow_up(&self) -> Option<f64> {
        self.blow_up
    }

    pub fn t_min(&self) -> f64 {
        self.samples[0].t
    }

    pub fn t_max(&self) -> f64 {
        self.samples[self.samples.len() - 1].t
    }

    /// Cubic Hermite interpolation of `λ` (slopes `λ′`) and of `λ′` (slopes `e^λ`).
    pub fn eval(&self, t: f64) -> Option<LiouvilleState> {
        if !(self.t_min() <= t && t <= self.t_max()) {
            return None;
        }
        let idx = self.samples.partition_point(|s| s.t <= t);
        if idx == self.samples.len() {
            return Some(self.samples[idx - 1]);
        }
        let (a, b) = (self.samples[idx - 1], self.samples[idx]);
        let h = b.t - a.t;
        let s = (t - a.t) / h;
        let lambda = hermite(s, h, a.lambda, a.dlambda, b.lambda, b.dlambda);
        let dlambda = hermite(s, h, a.dlambda, a.lambda.exp(), b.dlambda, b.lambda.exp());
        Some(LiouvilleState { t, lambda, dlambda })
    }

    /// Largest `|E(t) − E(t₀)|` over accepted states.
    pub fn energy_drift(&self) -> f64 {
        let e0 = self.samples[0].energy();
        self.samples.iter().map(|s| (s.energy() - e0).abs()).fold(0.0, f64::max)
    }

    /// Largest `|λ_num − λ_exact|` over the accepted states and the midpoints
    /// between them (the latter through the dense output).
    pub fn sup_error_against(&self, f: &WeightFamily) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for s in &self.samples {
            worst = worst.max((s.lambda - f.lambda(s.t)?).abs());
        }
        for pair in self.samples.windows(2) {
            let mid = 0.5 * (pair[0].t + pair[1].t);
            let v = self.eval(mid).expect("midpoint is inside the trajectory");
            worst = worst.max((v.lambda - f.lambda(mid)?).abs());
        }
        Ok(worst)
    }
}

fn hermite(s: f64, h: f64, y0: f64, m0: f64, y1: f64, m1: f64) -> f64 {
    let s2 = s * s;
    let s3 = s2 * s;
    let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    let h10 = s3 - 2.0 * s2 + s;
    let h01 = -2.0 * s3 + 3.0 * s2;
    let h11 = s3 - s2;
    h00 * y0 + h10 * h * m0 + h01 * y1 + h11 * h * m1
}

#[inline]
fn rhs(y: [f64; 2]) -> [f64; 2] {
    [y[1], y[0].exp()]
}

// Dormand–Prince 5(4) tableau; the system is autonomous so the nodes are unused.
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
// Fifth-order minus fourth-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// One Dormand–Prince step; returns the fifth-order state and the error estimate.
fn dp_step(y: [f64; 2], h: f64) -> ([f64; 2], [f64; 2]) {
    let mut k = [[0.0; 2]; 7];
    k[0] = rhs(y);
    for i in 1..7 {
        let mut yi = y;
        for (j, kj) in k.iter().enumerate().take(i) {
            yi[0] += h * A[i][j] * kj[0];
            yi[1] += h * A[i][j] * kj[1];
        }
        k[i] = rhs(yi);
    }
    // The last stage is evaluated at the fifth-order solution (FSAL).
    let mut y5 = y;
    for (j, kj) in k.iter().enumerate().take(6) {
        y5[0] += h * A[6][j] * kj[0];
        y5[1] += h * A[6][j] * kj[1];
    }
    let mut err = [0.0; 2];
    for (j, kj) in k.iter().enumerate() {
        err[0] += h * E[j] * kj[0];
        err[1] += h * E[j] * kj[1];
    }
    (y5, err)
}

/// Integrates `λ″ = e^λ` from `initial` to `t_end` (either direction) with the
/// default options and the given per-unit-step tolerance.
pub fn solve_liouville(initial: LiouvilleState, t_end: f64, tol: f64) -> Result<Trajectory> {
    solve_liouville_with(
        initial,
        t_end,
        &SolverOptions {
            tol,
            ..SolverOptions::default()
        },
    )
}

pub fn solve_liouville_with(initial: LiouvilleState, t_end: f64, opts: &SolverOptions) -> Result<Trajectory> {
    if !(opts.tol > 0.0 && opts.max_step > 0.0) {
        return Err(Error::InvalidInput(format!(
            "tolerance and maximum step must be positive (tol = {}, max_step = {})",
            opts.tol, opts.max_step
        )));
    }
    if ![initial.t, initial.lambda, initial.dlambda, t_end].iter().all(|v| v.is_finite()) {
        return Err(Error::InvalidInput("initial state and t_end must be finite".into()));
    }
    if t_end == initial.t {
        return Err(Error::InvalidInput("t_end equals the initial time".into()));
    }
    let dir = (t_end - initial.t).signum();
    let span = (t_end - initial.t).abs();
    let mut samples = vec![initial];
    let mut control = StepControl {
        tol: opts.tol,
        max_step: opts.max_step,
        accepted: 0,
        rejected: 0,
    };
    let mut blow_up = None;
    let mut t = initial.t;
    let mut y = [initial.lambda, initial.dlambda];
    let mut h = span.min(opts.max_step);

    while (t_end - t) * dir > 0.0 {
        if control.accepted + control.rejected >= opts.max_steps {
            return Err(Error::InvalidInput(format!(
                "step budget of {} exhausted at t = {t}",
                opts.max_steps
            )));
        }
        let remaining = (t_end - t).abs();
        let last = h >= remaining;
        let step = if last { remaining } else { h };
        let (y5, err) = dp_step(y, dir * step);
        let err_norm = err[0].abs().max(err[1].abs()) / (opts.tol * step);
        if !(err_norm.is_finite() && y5[0].is_finite()) || err_norm > 1.0 {
            control.rejected += 1;
            let factor = if err_norm.is_finite() {
                (0.9 * err_norm.powf(-0.25)).clamp(0.1, 0.9)
            } else {
                0.1
            };
            h = step * factor;
            if h < 1e-14 * t.abs().max(1.0) {
                blow_up = Some(t);
                break;
            }
            continue;
        }
        t = if last { t_end } else { t + dir * step };
        y = y5;
        control.accepted += 1;
        samples.push(LiouvilleState {
            t,
            lambda: y[0],
            dlambda: y[1],
        });
        if y[0] > opts.blow_up_cap {
            blow_up = Some(t);
            break;
        }
        let factor = if err_norm == 0.0 {
            5.0
        } else {
            (0.9 * err_norm.powf(-0.25)).clamp(0.2, 5.0)
        };
        h = (step * factor).min(opts.max_step);
    }
    if dir < 0.0 {
        samples.reverse();
    }
    Ok(Trajectory {
        samples,
        control,
        blow_up,
    })
}

/// `ω = exp(λ/2)/(k√2)`, the inverse of `λ = log(2k²ω²)`.
#[inline]
pub fn weight_from_lambda(lambda: f64, k: f64) -> f64 {
    (0.5 * lambda).exp() / (k * std::f64::consts::SQRT_2)
}

/// The weight carried by a trajectory; derivatives are left to the
/// finite-difference fallback applied to the dense output.
pub fn lambda_to_weight(traj: &Trajectory, k: f64) -> Result<Weight> {
    if !(k.is_finite() && k >= 1.0) {
        return Err(Error::InvalidInput(format!("k must be ≥ 1, got {k}")));
    }
    if traj.control.accepted < 4 {
        return Err(Error::TrajectoryTooShort(traj.control.accepted));
    }
    let domain = Interval::new(traj.t_min(), traj.t_max())?;
    let traj = Arc::new(traj.clone());
    Ok(Weight::new(format!("exp(λ/2)/(k√2) [k={k}]"), domain, move |t| {
        traj.eval(t).map_or(f64::NAN, |s| weight_from_lambda(s.lambda, k))
    }))
}

/// Closed-form `λ(t)` for a family member.
pub fn closed_form_lambda(f: &WeightFamily, t: f64) -> Result<f64> {
    f.lambda(t)
}
