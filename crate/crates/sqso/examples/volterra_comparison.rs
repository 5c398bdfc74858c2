//! Volterra operators: detection, the skew normal form, and dynamics.
//!
//! Run with: `cargo run -p sqso --example volterra_comparison`

use sqso::operators::SimplexMap;
use sqso::{fixtures, iterate, SimplexPoint, VolterraOperator};

fn main() {
    // A separable pair coincides with a Volterra operator only when one
    // matrix is the identity.
    let identity = fixtures::identity_pair(3);
    let tensor = identity.build_tensor().unwrap();
    println!("identity pair tensor is Volterra: {}", tensor.is_volterra());
    let v = VolterraOperator::from_tensor(&tensor).unwrap();
    println!("its skew form is all zeros: {:?}", v.skew());

    let weak_tensor = fixtures::weak_pair_tensor();
    println!(
        "weak-pair tensor is Volterra: {} ({})",
        weak_tensor.is_volterra(),
        VolterraOperator::from_tensor(&weak_tensor)
            .err()
            .map(|e| e.to_string())
            .unwrap_or_default()
    );

    // The rock-paper-scissors interaction: trajectories spiral without
    // ever closing into a periodic cycle.
    let rps = VolterraOperator::new(
        3,
        vec![0.0, 0.5, -0.5, -0.5, 0.0, 0.5, 0.5, -0.5, 0.0],
    )
    .unwrap();
    let x0 = SimplexPoint::new(vec![0.5, 0.3, 0.2]).unwrap();
    let traj = iterate(&rps, &x0, 2000, 1e-12).unwrap();
    println!(
        "\nrock-paper-scissors: {} steps, stop reason {:?}",
        traj.len() - 1,
        traj.stop_reason()
    );
    for (step, point) in traj.points().iter().enumerate().step_by(60) {
        println!("  step {step}: {:?}", point.coords());
    }

    // Total probability is conserved to rounding at every step.
    let drift = traj
        .points()
        .iter()
        .map(|p| (p.coords().iter().sum::<f64>() - 1.0).abs())
        .fold(0.0f64, f64::max);
    println!("largest sum drift along the run: {drift:.3e}");

    // A two-species tug of war has the closed form
    // x' = (x1 (1 + a x2), x2 (1 - a x1)).
    let tug = VolterraOperator::new(2, vec![0.0, 1.0, -1.0, 0.0]).unwrap();
    let y = tug.apply(&SimplexPoint::new(vec![0.5, 0.5]).unwrap()).unwrap();
    println!("\ntwo-species tug of war from (1/2, 1/2): {:?}", y.coords());
}
