// Weights on an interval: distances, the curvature `k_ω` and the comparison of two weights.

use std::f64::consts::FRAC_PI_4;

use schwarz::format::sig15;
use schwarz::weights::{
    compare_weights, curvature_k, family_weight, hyperbolic_interval_weight, omega_distance, strip_weight,
    verify_curvature_bound, FamilyKind, GridSpec, Interval, WeightFamily,
};

pub fn run_example() -> schwarz::Result<()> {
    let strip = strip_weight();
    println!("d(0, 0.5) under {} = {}", strip.name(), sig15(omega_distance(&strip, 0.0, 0.5)?));
    let bound = verify_curvature_bound(&strip, &GridSpec::default())?;
    println!("max k over {} points = {} (passes: {})", bound.points, sig15(bound.max_k), bound.passes);

    let steep = WeightFamily {
        kind: FamilyKind::Sinh,
        k: 2.0,
        c1: 1.5,
        c2: 0.0,
        c: 0.0,
        interval: Interval::new(0.0, f64::INFINITY)?,
    };
    let w = family_weight(&steep)?;
    println!("k of {} at t = 0.7: {}", w.name(), sig15(curvature_k(&w, 0.7)?));

    let tilde = hyperbolic_interval_weight();
    let fd = tilde.density_only();
    println!("k of {} at 0: analytic {}, finite differences {}", tilde.name(), sig15(curvature_k(&tilde, 0.0)?), sig15(curvature_k(&fd, 0.0)?));
    let bound = verify_curvature_bound(&tilde, &GridSpec::default())?;
    println!("{} satisfies k <= -1: {}", tilde.name(), bound.passes);

    let cmp = compare_weights(&strip, &tilde, FRAC_PI_4, &GridSpec::with_range(10_000, -1.0 + 1e-6, 1.0 - 1e-6))?;
    println!("min ratio = {} at t = {} (pi/4 = {})", sig15(cmp.min_ratio), sig15(cmp.argmin), sig15(FRAC_PI_4));
    Ok(())
}

fn main() -> schwarz::Result<()> {
    run_example()
}
