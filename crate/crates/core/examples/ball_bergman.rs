// Automorphisms of the unit ball and the Bergman distance, with the
// one-dimensional ball reducing to the disk.

use schwarz::ball::{ball_mobius, ball_rho, bergman_beta, bergman_form, BallPoint};
use schwarz::disk::{hyperbolic_sigma, DiskPoint};
use schwarz::format::sig15;
use schwarz::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn run_example() -> schwarz::Result<()> {
    let a = BallPoint::new(vec![c(0.3, 0.1), c(-0.2, 0.4)])?;
    let z = BallPoint::new(vec![c(0.1, -0.5), c(0.6, 0.0)])?;
    let w = BallPoint::new(vec![c(-0.4, 0.2), c(0.0, 0.3)])?;
    println!("rho(z, w) = {}, beta(z, w) = {}", sig15(ball_rho(&z, &w)?), sig15(bergman_beta(&z, &w)?));

    let (za, wa) = (ball_mobius(&a, &z)?, ball_mobius(&a, &w)?);
    println!("beta after phi_a = {}", sig15(bergman_beta(&za, &wa)?));
    println!("phi_a(a) has norm {}", sig15(ball_mobius(&a, &a)?.norm()));

    let (zm, wm) = (z.modulus_point(), w.modulus_point());
    println!("beta of the moduli = {} <= {}", sig15(bergman_beta(&zm, &wm)?), sig15(bergman_beta(&z, &w)?));

    let (p, q) = (c(0.2, 0.7), c(-0.5, -0.1));
    let one = bergman_beta(&BallPoint::new(vec![p])?, &BallPoint::new(vec![q])?)?;
    let disk = hyperbolic_sigma(DiskPoint::new(p)?, DiskPoint::new(q)?);
    println!("n = 1: beta = {}, disk sigma = {}", sig15(one), sig15(disk));

    let form = bergman_form(&z, &[c(1.0, 0.0), c(0.0, 0.0)], &[c(1.0, 0.0), c(0.0, 0.0)])?;
    println!("Bergman form at z on e1: {:?}", form);
    Ok(())
}

fn main() -> schwarz::Result<()> {
    run_example()
}
