// The catalog of holomorphic test maps: evaluation, codomain checks and
// user-defined maps.

use schwarz::catalog::{catalog, validate, Codomain, HoloFunction, HoloKind};
use schwarz::disk::DiskPoint;
use schwarz::format::complex15;
use schwarz::Complex64;

pub fn run_example() -> schwarz::Result<()> {
    let z = DiskPoint::from_parts(0.3, -0.4)?;
    for f in catalog() {
        let report = validate(&f, 0.999);
        println!(
            "{:<20} {:<16} f(z) = {:<40} valid: {}",
            f.id,
            f.codomain.name(),
            complex15(f.eval(z)),
            report.passes
        );
    }

    let lying = HoloFunction::new("twice_z", Codomain::Disk, HoloKind::Monomial { c: Complex64::new(2.0, 0.0), d: 1 });
    let report = validate(&lying, 0.999);
    println!("{}: valid {}, {} codomain violations", lying.id, report.passes, report.codomain_violations);

    let composed = catalog()[1].post_mobius(DiskPoint::from_parts(0.0, 0.5)?)?;
    println!("{} at z: {}", composed.id, complex15(composed.eval(z)));
    Ok(())
}

fn main() -> schwarz::Result<()> {
    run_example()
}
