//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always reach the output; exits non-zero on any failure.

use std::f64::consts::{FRAC_PI_4, PI};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use schwarz::catalog::{self, polar_grid, Codomain, HoloFunction};
use schwarz::conformal::{self, cayley, half_plane_distance, DistanceOptions, PlanarDomain};
use schwarz::disk::{self, DiskPoint};
use schwarz::ode::{solve_liouville, LiouvilleState};
use schwarz::suite::{run_suite, SuiteConfig};
use schwarz::verify::{self, InequalityCase, SampleSpec, Scheme, Status, Target, Tolerance};
use schwarz::weights::{
    self, curvature_k, curvature_k_numeric, family_weight, half_plane_weight, hyperbolic_interval_weight, strip_weight,
    FamilyKind, GridSpec, Interval, Weight, WeightFamily,
};
use schwarz::{Complex64, Result};

const SEED: u64 = 20_240_917;

type Criterion = (&'static str, fn() -> Result<Outcome>);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Result<Outcome> {
    Ok(Outcome { pass, detail })
}

fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(SEED);
    r.set_stream(stream);
    r
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

/// Closed-form distances agree with adaptive quadrature of the density.
fn closed_form_consistency() -> Result<Outcome> {
    let started = Instant::now();
    let mut r = rng(1);
    let cases: [(WeightFamily, f64, f64); 3] = [
        (WeightFamily::strip(), -0.999, 0.999),
        (WeightFamily::sinh_unit(), 1e-3, 20.0),
        (WeightFamily::half_plane(), 1e-3, 100.0),
    ];
    let mut worst: f64 = 0.0;
    for (family, lo, hi) in cases {
        let w = family_weight(&family)?;
        for _ in 0..50 {
            let a = r.gen_range(lo..hi);
            let b = r.gen_range(lo..hi);
            let closed = weights::omega_distance(&w, a, b)?;
            let quad = weights::omega_distance_quadrature(&w, a, b)?.value.abs();
            worst = worst.max((closed - quad).abs());
        }
    }
    let elapsed = started.elapsed();
    outcome(
        worst < 1e-9 && elapsed < Duration::from_secs(5),
        format!("max |antiderivative - quadrature| = {worst:.3e} over 150 pairs in {}", secs(elapsed)),
    )
}

fn random_family(r: &mut ChaCha8Rng) -> WeightFamily {
    let k = r.gen_range(1.0..3.0);
    let c1 = r.gen_range(0.5..2.0);
    let c2 = r.gen_range(-2.0..2.0);
    let c = r.gen_range(-2.0..2.0);
    let right = r.gen_bool(0.5);
    let half_line = |edge: f64| {
        if right {
            Interval::new(edge, f64::INFINITY)
        } else {
            Interval::new(f64::NEG_INFINITY, edge)
        }
        .expect("half-line is a valid interval")
    };
    match r.gen_range(0..3) {
        0 => WeightFamily {
            kind: FamilyKind::Sin,
            k,
            c1,
            c2,
            c: 0.0,
            interval: Interval::new(-c2 / c1, (PI - c2) / c1).expect("one arch of the sine"),
        },
        1 => WeightFamily {
            kind: FamilyKind::Sinh,
            k,
            c1,
            c2,
            c: 0.0,
            interval: half_line(-c2 / c1),
        },
        _ => WeightFamily {
            kind: FamilyKind::Linear,
            k,
            c1: 1.0,
            c2: 0.0,
            c,
            interval: half_line(-c),
        },
    }
}

/// Window where finite differences of `ω` are well conditioned.
fn fd_range(f: &WeightFamily) -> (f64, f64) {
    let (lo, hi) = (f.interval.lo(), f.interval.hi());
    let scale = match f.kind {
        FamilyKind::Linear => 1.0,
        _ => 1.0 / f.c1,
    };
    if f.interval.is_bounded() {
        let pad = 0.05 * (hi - lo);
        (lo + pad, hi - pad)
    } else if lo.is_finite() {
        (lo + 0.05 * scale, lo + 2.0 * scale)
    } else {
        (hi - 2.0 * scale, hi - 0.05 * scale)
    }
}

/// `k_ω ≡ −k²` on each family, analytically and by finite differences, plus
/// the non-example `2/(1 − t²)`.
fn curvature_identity() -> Result<Outcome> {
    let mut r = rng(2);
    let (mut analytic, mut numeric): (f64, f64) = (0.0, 0.0);
    for _ in 0..20 {
        let f = random_family(&mut r);
        let w = family_weight(&f)?;
        let k2 = f.k * f.k;
        for t in GridSpec::default().points(f.interval)? {
            analytic = analytic.max((curvature_k(&w, t)? + k2).abs());
        }
        let (lo, hi) = fd_range(&f);
        for t in GridSpec::with_range(1001, lo, hi).points(f.interval)? {
            numeric = numeric.max((curvature_k_numeric(&w, t)? + k2).abs());
        }
    }
    let k0 = curvature_k(&hyperbolic_interval_weight(), 0.0)?;
    outcome(
        analytic < 1e-8 && numeric < 1e-5 && (k0 + 0.5).abs() < 1e-8,
        format!("max |k + k^2| analytic {analytic:.3e}, finite-difference {numeric:.3e}; k(0) of 2/(1-t^2) = {k0}"),
    )
}

/// The Liouville integrator reproduces the closed forms on unit windows.
fn liouville_ode() -> Result<Outcome> {
    let windows = [
        (WeightFamily::strip(), -0.5, 0.5),
        (WeightFamily::sinh_unit(), 0.5, 1.5),
        (WeightFamily::half_plane(), 0.5, 1.5),
    ];
    let (mut err, mut drift): (f64, f64) = (0.0, 0.0);
    for (f, a, b) in windows {
        let traj = solve_liouville(LiouvilleState::from_family(&f, a)?, b, 1e-10)?;
        err = err.max(traj.sup_error_against(&f)?);
        drift = drift.max(traj.energy_drift());
    }
    outcome(
        err < 1e-6 && drift < 1e-8,
        format!("sup |lambda_num - lambda_exact| = {err:.3e}, energy drift = {drift:.3e}"),
    )
}

/// Variational distances against closed forms, Cayley transport and the
/// infinitesimal limit of secants.
fn distance_engine() -> Result<Outcome> {
    let s = SampleSpec::new(100, SEED, 0.95, Scheme::UniformDisk)?;
    let forced = DistanceOptions {
        force_variational: true,
        ..DistanceOptions::default()
    };
    let (mut variational, mut transport): (f64, f64) = (0.0, 0.0);
    for i in 0..s.count {
        let (z, w) = s.disk_pair("acceptance/distance", i);
        let exact = disk::hyperbolic_sigma(z, w);
        let v = conformal::distance_with(&PlanarDomain::PoincareDisk, z.value(), w.value(), &forced)?.value;
        variational = variational.max((v - exact).abs() / exact);
        let h = half_plane_distance(cayley(z.value()), cayley(w.value()));
        transport = transport.max((h - exact).abs() / exact);
    }
    let strip = PlanarDomain::Strip(strip_weight());
    let zeta = Complex64::new(0.3, 0.2);
    let h = conformal::density(&strip, zeta)?;
    let secant = (conformal::secant_ratio(&strip, zeta, Complex64::new(1.0, 1.0), 1e-3)? - h).abs() / h;
    outcome(
        variational < 1e-3 && transport < 1e-9 && secant < 1e-2,
        format!("variational rel err {variational:.3e}, Cayley transport {transport:.3e}, secant at 1e-3 {secant:.3e}"),
    )
}

fn spec(count: usize, scheme: Scheme) -> Result<SampleSpec> {
    SampleSpec::new(count, SEED, 0.999, scheme)
}

fn min_margin(reports: &[verify::VerificationReport]) -> f64 {
    reports
        .iter()
        .filter_map(|r| r.min_margin)
        .fold(f64::INFINITY, f64::min)
}

fn failures(reports: &[verify::VerificationReport]) -> Vec<String> {
    reports.iter().filter(|r| !r.passed()).map(|r| r.case_id.clone()).collect()
}

/// Compatible `(f, ω)` pairs among the catalog and the given weights.
fn weighted_cases(prefix: &str, weights: &[Weight], only: impl Fn(&HoloFunction) -> bool) -> Vec<InequalityCase> {
    let mut out = Vec::new();
    for f in catalog::catalog().into_iter().filter(|f| only(f)) {
        for w in weights {
            let case = InequalityCase::new(format!("{prefix}/{}/{}", f.id, w.name()), f.clone(), Target::Weight(w.clone()));
            if case.compatible().is_ok() {
                out.push(case);
            }
        }
    }
    out
}

/// The main contraction on strip and half-plane valued maps.
fn re_contraction() -> Result<Outcome> {
    let started = Instant::now();
    let s = spec(10_000, Scheme::UniformDisk)?;
    let cases = weighted_cases("acceptance/re", &[strip_weight(), half_plane_weight()], |f| {
        matches!(f.codomain, Codomain::Strip | Codomain::RightHalfPlane)
    });
    let reports = cases
        .iter()
        .map(|c| verify::verify_re_contraction(c, &s))
        .collect::<Result<Vec<_>>>()?;
    let elapsed = started.elapsed();
    let bad = failures(&reports);
    let min = min_margin(&reports);
    outcome(
        bad.is_empty() && reports.len() >= 3 && min >= -1e-9 && elapsed < Duration::from_secs(60),
        format!("{} cases x 1e4 pairs, min margin {min:.3e}, in {}; failing {bad:?}", reports.len(), secs(elapsed)),
    )
}

/// Pointwise differential bound on a 101 x 101 polar grid.
fn pointwise_gradient() -> Result<Outcome> {
    let grid = polar_grid(101, 101, 0.99);
    let sinh = family_weight(&WeightFamily::sinh_unit())?;
    let cases = weighted_cases("acceptance/gradient", &[strip_weight(), half_plane_weight(), sinh], |_| true);
    let reports = cases
        .iter()
        .map(|c| verify::verify_pointwise_gradient(c, &grid))
        .collect::<Result<Vec<_>>>()?;
    let max = reports
        .iter()
        .filter_map(|r| r.observations.get("max_lhs").copied())
        .fold(f64::NEG_INFINITY, f64::max);
    let bad = failures(&reports);
    outcome(
        bad.is_empty() && max <= 1.0 + 1e-9,
        format!("{} cases, max gradient quantity {max:.15}; failing {bad:?}", reports.len()),
    )
}

/// Modulus contraction and the Pavlović bound; equality for automorphisms.
fn modulus_and_pavlovic() -> Result<Outcome> {
    let s = spec(10_000, Scheme::UniformDisk)?;
    let grid = polar_grid(101, 101, 0.99);
    let mut reports = Vec::new();
    for f in catalog::catalog().into_iter().filter(|f| f.codomain.is_bounded_by_one()) {
        let target = match f.codomain {
            Codomain::BallSlice { dim } => Target::BallBeta { dim },
            _ => Target::DiskSigma,
        };
        let case = InequalityCase::new(format!("acceptance/modulus/{}", f.id), f, target);
        reports.push(verify::verify_modulus_contraction(&case, &s)?);
        reports.push(verify::verify_pavlovic(&case, &grid)?);
    }
    let factor = catalog::lookup("blaschke_factor").expect("catalog has the Blaschke factor");
    let mut automorphisms = vec![factor.clone()];
    for b in [Complex64::new(-0.4, 0.2), Complex64::new(0.0, 0.9)] {
        automorphisms.push(factor.post_mobius(DiskPoint::new(b)?)?);
    }
    let mut equality: f64 = 0.0;
    for f in automorphisms {
        let case = InequalityCase::new(format!("acceptance/automorphism/{}", f.id), f, Target::DiskSigma);
        let pav = verify::verify_pavlovic(&case, &grid)?;
        equality = equality.max(pav.observations["max_abs_margin"]);
        reports.push(pav);
    }
    let bad = failures(&reports);
    let min = min_margin(&reports);
    outcome(
        bad.is_empty() && min >= -1e-9 && equality < 1e-10,
        format!("{} reports, min margin {min:.3e}, automorphism max |margin| {equality:.3e}; failing {bad:?}", reports.len()),
    )
}

/// Absolute-value inequalities on the disk and on the balls of dimension 1, 2, 3.
fn abs_inequalities() -> Result<Outcome> {
    let s = spec(100_000, Scheme::UniformDisk)?;
    let reports = verify::verify_abs_inequalities("acceptance/abs", &s, &[1, 2, 3], Tolerance::absolute(1e-12))?;
    let mismatch = reports
        .iter()
        .find_map(|r| r.observations.get("max_disk_mismatch").copied())
        .unwrap_or(f64::INFINITY);
    let bad = failures(&reports);
    let min = min_margin(&reports);
    outcome(
        bad.is_empty() && reports.len() == 5 && min >= -1e-12 && mismatch <= 1e-14,
        format!("{} reports x 1e5 pairs, min margin {min:.3e}, n=1 vs disk {mismatch:.3e}; failing {bad:?}", reports.len()),
    )
}

/// The sharp factor `4/π` for strip-valued real parts, near the boundary.
fn kv_factor() -> Result<Outcome> {
    let s = spec(100_000, Scheme::BoundaryBiased)?;
    let target = Target::Weight(hyperbolic_interval_weight());
    let mut sup = f64::NEG_INFINITY;
    let mut reports = Vec::new();
    for f in catalog::catalog().into_iter().filter(|f| f.codomain == Codomain::Strip) {
        let case = InequalityCase::new(format!("acceptance/kv/{}", f.id), f, target.clone()).with_factor(4.0 / PI);
        let r = verify::verify_kv_factor(&case, &s)?;
        sup = sup.max(r.observations.get("sup_ratio").copied().unwrap_or(f64::INFINITY));
        reports.push(r);
    }
    let bad = failures(&reports);
    outcome(
        bad.is_empty() && !reports.is_empty() && sup <= 4.0 / PI + 1e-9,
        format!("{} cases x 1e5 boundary-biased pairs, sup ratio {sup:.12} (4/pi = {:.12}); failing {bad:?}", reports.len(), 4.0 / PI),
    )
}

/// `(π/4)·2/(1 − t²) ≤ (π/2)/cos(πt/2)` with the constant attained at 0.
fn weight_comparison() -> Result<Outcome> {
    let grid = GridSpec::with_range(10_000, -1.0 + 1e-6, 1.0 - 1e-6);
    let r = verify::verify_weight_comparison(
        "acceptance/comparison",
        &strip_weight(),
        &hyperbolic_interval_weight(),
        FRAC_PI_4,
        &grid,
        Tolerance::default(),
    )?;
    let min_ratio = r.observations["min_ratio"];
    outcome(
        r.passed() && (min_ratio - FRAC_PI_4).abs() < 1e-6,
        format!("min ratio {min_ratio:.12} vs pi/4 = {FRAC_PI_4:.12}"),
    )
}

/// The full default suite is bitwise reproducible across thread counts.
fn determinism() -> Result<Outcome> {
    let config = SuiteConfig::default_suite();
    let one = run_suite(&config, Some(1))?;
    let four = run_suite(&config, Some(4))?;
    let (a, b) = (one.payload_json()?, four.payload_json()?);
    let unexpected: Vec<_> = one.payload.cases.iter().filter(|c| !c.as_expected).map(|c| c.id.clone()).collect();
    let gate = one
        .payload
        .cases
        .iter()
        .filter(|c| c.status == Status::HypothesisNotMet)
        .count();
    outcome(
        a == b && one.payload.passed,
        format!(
            "{} cases, payload {} bytes, identical at 1 and 4 threads: {}; gated {gate}; unexpected {unexpected:?}",
            one.payload.cases.len(),
            a.len(),
            a == b
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("closed-form distance consistency", closed_form_consistency),
        ("curvature identity k = -k^2", curvature_identity),
        ("Liouville ODE against closed forms", liouville_ode),
        ("planar distance engine", distance_engine),
        ("Re f contraction", re_contraction),
        ("pointwise gradient bound", pointwise_gradient),
        ("modulus contraction and Pavlovic bound", modulus_and_pavlovic),
        ("absolute-value inequalities", abs_inequalities),
        ("4/pi factor", kv_factor),
        ("weight comparison constant", weight_comparison),
        ("thread-count determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let (pass, detail) = match run() {
            Ok(o) => (o.pass, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {} {name}: {detail} [{}]",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            secs(started.elapsed())
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
