// Distances of conformal metrics on planar domains: closed forms, minimising
// polylines and the infinitesimal limit of secants.

use schwarz::conformal::{
    cayley, density, distance, distance_with, gauss_curvature, half_plane_distance, secant_ratio, unit_tangent_norm_check,
    DistanceOptions, PlanarDomain,
};
use schwarz::format::sig15;
use schwarz::weights::strip_weight;
use schwarz::Complex64;

pub fn run_example() -> schwarz::Result<()> {
    let (z, w) = (Complex64::new(0.1, 0.2), Complex64::new(-0.4, 0.5));
    let disk = PlanarDomain::PoincareDisk;
    let exact = distance(&disk, z, w)?;
    let forced = DistanceOptions {
        force_variational: true,
        ..DistanceOptions::default()
    };
    let path = distance_with(&disk, z, w, &forced)?;
    println!("disk: closed form {}, variational {}", sig15(exact.value), sig15(path.value));
    println!("half-plane after Cayley: {}", sig15(half_plane_distance(cayley(z), cayley(w))));

    let strip = PlanarDomain::Strip(strip_weight());
    let (a, b) = (Complex64::new(-0.5, 0.0), Complex64::new(0.6, 1.5));
    let r = distance(&strip, a, b)?;
    let to_half_plane = |z: Complex64| (Complex64::new(0.0, std::f64::consts::FRAC_PI_2) * z).exp();
    println!("{}: d = {} ({:?})", strip.describe(), sig15(r.value), r.method);
    println!("  through exp(i pi z/2) onto the half-plane: {}", sig15(half_plane_distance(to_half_plane(a), to_half_plane(b))));
    if let Some(cert) = &r.certificate {
        println!(
            "  {} iterations (converged: {}), gradient norm {}, unit-speed deviation {}",
            cert.iterations,
            cert.converged,
            sig15(cert.gradient_norm),
            sig15(unit_tangent_norm_check(&strip, &cert.path)?)
        );
    }
    println!("  Gauss curvature at a: {}", sig15(gauss_curvature(&strip, a)?));

    let zeta = Complex64::new(0.3, 0.2);
    println!("  density at zeta: {}", sig15(density(&strip, zeta)?));
    for eps in [1e-1, 1e-2, 1e-3] {
        println!("  secant ratio at offset {eps}: {}", sig15(secant_ratio(&strip, zeta, Complex64::new(1.0, 1.0), eps)?));
    }
    Ok(())
}

fn main() -> schwarz::Result<()> {
    run_example()
}
