// Integrates `λ″ = e^λ` from closed-form data and turns the solution back into a weight.

use schwarz::format::sig15;
use schwarz::ode::{lambda_to_weight, solve_liouville, LiouvilleState};
use schwarz::weights::{curvature_k, WeightFamily};

pub fn run_example() -> schwarz::Result<()> {
    for (name, family, a, b) in [
        ("strip", WeightFamily::strip(), -0.5, 0.5),
        ("sinh", WeightFamily::sinh_unit(), 0.5, 1.5),
        ("half_plane", WeightFamily::half_plane(), 0.5, 1.5),
    ] {
        let traj = solve_liouville(LiouvilleState::from_family(&family, a)?, b, 1e-10)?;
        let control = traj.control();
        println!(
            "{name}: {} steps, sup error {}, energy drift {}",
            control.accepted,
            sig15(traj.sup_error_against(&family)?),
            sig15(traj.energy_drift())
        );
    }

    let traj = solve_liouville(LiouvilleState::from_family(&WeightFamily::strip(), 0.0)?, 0.9, 1e-10)?;
    let w = lambda_to_weight(&traj, 1.0)?;
    println!("weight from the solution at 0.5: {} (strip weight {})", sig15(w.eval(0.5)), sig15(schwarz::weights::strip_weight().eval(0.5)));
    println!("its k at 0.5: {}", sig15(curvature_k(&w, 0.5)?));

    let blow = solve_liouville(LiouvilleState { t: 0.0, lambda: 0.0, dlambda: 2.0 }, 5.0, 1e-10)?;
    if let Some(t) = blow.blow_up() {
        println!("a steeper start blows up near t = {}", sig15(t));
    }
    Ok(())
}

fn main() -> schwarz::Result<()> {
    run_example()
}
