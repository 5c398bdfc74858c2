//! Bound the omega-limit set from certified Lyapunov levels.
//!
//! Run with: `cargo run -p sqso --example omega_estimate`

use sqso::{
    cone_extreme_rays, estimate_lambda, fixtures, omega_upper_set, ConeSide, LyapunovCertificate,
    SimplexPoint, StoppingConfig,
};

fn main() {
    let pair = fixtures::cone_family_canonical();
    let basis = cone_extreme_rays(pair.matrix_a(), ConeSide::FromA);
    let x0 = SimplexPoint::uniform(3);
    let stop = StoppingConfig::default();

    // One level per certified ray.
    for ray in basis.rays() {
        let cert = LyapunovCertificate::from_ray(ray).unwrap();
        let estimate = estimate_lambda(&pair, &cert, &x0, &stop).unwrap();
        println!(
            "ray {ray:?}: lambda = {:.12} (stopped at step {}, last decrement {:.3e})",
            estimate.value, estimate.stop_step, estimate.last_decrement
        );
    }

    // Three independent rays pin the limit to a single point.
    let estimate = omega_upper_set(&pair, &basis, &x0, &stop).unwrap();
    println!("\nray matrix rank: {}", estimate.ray_matrix_rank);
    if let Some(point) = &estimate.resolved_point {
        println!(
            "resolved omega-limit point: {:?} (solve residual {:.3e})",
            point.coords(),
            estimate.solve_residual.unwrap()
        );
    }
    println!(
        "empirical representatives from the trajectory tail: {:?}",
        estimate
            .empirical_points
            .iter()
            .map(|p| p.coords().to_vec())
            .collect::<Vec<_>>()
    );

    // With a single certificate the bound is only a level set.
    let single = sqso::omega::omega_upper_set_with(
        &pair.kernel().unwrap(),
        &basis.rays()[..1],
        &x0,
        &stop,
    )
    .unwrap();
    println!(
        "\nwith one ray only: rank {}, level-set description {:?}",
        single.ray_matrix_rank,
        single
            .level_set
            .iter()
            .map(|lc| (lc.weights.clone(), lc.level))
            .collect::<Vec<_>>()
    );
}
