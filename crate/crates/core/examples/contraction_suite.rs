// Sampled verification of the contraction inequalities, first case by case and
// then as a configured suite.

use std::f64::consts::PI;

use schwarz::catalog::{lookup, polar_grid};
use schwarz::format::sig15;
use schwarz::suite::{run_suite, SuiteConfig};
use schwarz::verify::{
    verify_kv_factor, verify_pointwise_gradient, verify_re_contraction, InequalityCase, SampleSpec, Scheme, Target,
};
use schwarz::weights::{half_plane_weight, hyperbolic_interval_weight, strip_weight};

pub fn run_example() -> schwarz::Result<()> {
    let s = SampleSpec::new(5_000, 42, 0.999, Scheme::UniformDisk)?;
    let strip_map = lookup("strip_map").expect("catalog entry");
    let case = InequalityCase::new("example/re", strip_map.clone(), Target::Weight(strip_weight()));
    let r = verify_re_contraction(&case, &s)?;
    println!("{}: {:?}, min margin {}", r.subject, r.status, r.min_margin.map(sig15).unwrap_or_default());

    let cayley = lookup("cayley").expect("catalog entry");
    let case = InequalityCase::new("example/gradient", cayley, Target::Weight(half_plane_weight()));
    let r = verify_pointwise_gradient(&case, &polar_grid(101, 101, 0.99))?;
    println!("{}: {:?}, max gradient quantity {}", r.subject, r.status, sig15(r.observations["max_lhs"]));

    let identity = lookup("identity").expect("catalog entry");
    let case = InequalityCase::new("example/gate", identity, Target::Weight(hyperbolic_interval_weight()));
    let r = verify_re_contraction(&case, &s)?;
    println!("{}: {:?} ({})", r.subject, r.status, r.message.unwrap_or_default());

    let biased = SampleSpec::new(20_000, 42, 0.999, Scheme::BoundaryBiased)?;
    let case = InequalityCase::new("example/kv", strip_map, Target::Weight(hyperbolic_interval_weight())).with_factor(4.0 / PI);
    let r = verify_kv_factor(&case, &biased)?;
    println!("empirical sup ratio {} against 4/pi = {}", sig15(r.observations["sup_ratio"]), sig15(4.0 / PI));

    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/configs/quick.json"))?;
    let report = run_suite(&SuiteConfig::from_json(&text)?, None)?;
    print!("{}", report.summary_table());
    Ok(())
}

fn main() -> schwarz::Result<()> {
    run_example()
}
