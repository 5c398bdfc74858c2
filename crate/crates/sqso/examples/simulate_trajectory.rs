//! Iterate an operator and watch convergence and cycle detection.
//!
//! Run with: `cargo run -p sqso --example simulate_trajectory`

use sqso::{detect_limit, fixtures, iterate, LimitReport, SimplexPoint};

fn main() {
    // Nonlinear pair: mass drains into the first species.
    let pair = fixtures::cone_family_canonical();
    let kernel = pair.kernel().unwrap();
    let x0 = SimplexPoint::uniform(3);
    let traj = iterate(&kernel, &x0, 5000, 1e-13).unwrap();

    println!("cone family from the uniform start:");
    for (step, point) in traj.points().iter().enumerate().take(6) {
        println!("  step {step}: {:?}", point.coords());
    }
    println!("  ... {} points, stop reason {:?}", traj.len(), traj.stop_reason());
    match detect_limit(&traj, &kernel, 1e-9) {
        LimitReport::FixedPoint { point, residual } => {
            println!("  fixed point {:?} with residual {residual:.3e}", point.coords());
        }
        other => println!("  limit: {other:?}"),
    }

    // Linear pair with a permutation payload: a genuine 3-cycle.
    let cyclic = fixtures::cyclic_permutation_pair();
    let kernel = cyclic.kernel().unwrap();
    let x0 = SimplexPoint::new(vec![0.6, 0.3, 0.1]).unwrap();
    let traj = iterate(&kernel, &x0, 1000, 1e-12).unwrap();
    println!("\ncyclic permutation from (0.6, 0.3, 0.1):");
    println!("  stop reason {:?}", traj.stop_reason());
    if let LimitReport::Cycle { period, representatives } = detect_limit(&traj, &kernel, 1e-9) {
        println!("  period {period} cycle through:");
        for rep in representatives {
            println!("    {:?}", rep.coords());
        }
    }

    // Constant pair: done after a single application.
    let constant = fixtures::constant_pair();
    let kernel = constant.kernel().unwrap();
    let traj = iterate(&kernel, &SimplexPoint::new(vec![0.85, 0.15]).unwrap(), 100, 1e-12)
        .unwrap();
    println!("\nconstant pair: reached {:?} after one step", traj.points()[1].coords());
}
