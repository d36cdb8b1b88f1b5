// Möbius maps of the disk, the pseudo-hyperbolic distance and the hyperbolic distance.

use schwarz::disk::{hyperbolic_sigma, mobius_disk, pseudo_hyperbolic, DiskPoint};
use schwarz::format::{complex15, sig15};

pub fn run_example() -> schwarz::Result<()> {
    let a = DiskPoint::from_parts(0.5, 0.25)?;
    let z = DiskPoint::from_parts(-0.3, 0.6)?;
    let image = mobius_disk(a, z)?;
    println!("phi_a(z) = {}", complex15(image.value()));
    println!("phi_a(phi_a(z)) = {}", complex15(mobius_disk(a, image)?.value()));

    let origin = DiskPoint::from_parts(0.0, 0.0)?;
    let half = DiskPoint::from_parts(0.5, 0.0)?;
    println!("rho(0, 0.5) = {}", sig15(pseudo_hyperbolic(origin, half)));
    println!("sigma(0, 0.5) = {} (log 3)", sig15(hyperbolic_sigma(origin, half)));

    let (za, ha) = (mobius_disk(a, origin)?, mobius_disk(a, half)?);
    println!("sigma after phi_a = {}", sig15(hyperbolic_sigma(za, ha)));

    let near = DiskPoint::from_parts(1.0 - 1e-8, 0.0)?;
    println!("sigma(0, 1 - 1e-8) = {}", sig15(hyperbolic_sigma(origin, near)));
    Ok(())
}

fn main() -> schwarz::Result<()> {
    run_example()
}
