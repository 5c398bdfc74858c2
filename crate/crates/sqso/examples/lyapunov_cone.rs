//! Enumerate the cone of linear Lyapunov certificates, exactly.
//!
//! Run with: `cargo run -p sqso --example lyapunov_cone`

use sqso::lyapunov::attach_certificate_trace;
use sqso::{
    certification_preconditions, cone_extreme_rays, cone_membership, fixtures, iterate, ratio,
    rowsum_candidate, verify_monotone, ConeSide, LyapunovCertificate, SimplexPoint,
};

fn main() {
    let pair = fixtures::cone_family_canonical();
    let report = certification_preconditions(&pair);
    println!("preconditions: {report:?}");
    println!("certified: {}\n", report.certified());

    // Side A carries a three-ray cone; side B is trivial.
    for (label, matrix, side) in [
        ("A", pair.matrix_a(), ConeSide::FromA),
        ("B", pair.matrix_b(), ConeSide::FromB),
    ] {
        let basis = cone_extreme_rays(matrix, side);
        println!("side {label}: {} extreme rays", basis.len());
        for ray in basis.rays() {
            println!("  {ray:?}");
        }
        match rowsum_candidate(matrix) {
            Some(c) => {
                let rendered: Vec<String> = c.iter().map(|v| v.to_string()).collect();
                println!("  row-sum candidate: ({})", rendered.join(", "));
            }
            None => println!("  row-sum candidate: none (some row sums exceed 1)"),
        }
    }

    // Membership is exact: scaled rays stay inside, off-cone vectors are
    // rejected with zero tolerance.
    let a = pair.matrix_a();
    println!(
        "\n(9,11,10) in cone: {}   (1,0,0) in cone: {}",
        cone_membership(a, &[ratio(9, 1), ratio(11, 1), ratio(10, 1)]),
        cone_membership(a, &[ratio(1, 1), ratio(0, 1), ratio(0, 1)]),
    );

    // Along a trajectory, every ray certificate is non-increasing; the
    // off-cone control increases.
    let kernel = pair.kernel().unwrap();
    let mut traj = iterate(&kernel, &SimplexPoint::uniform(3), 2000, 1e-30).unwrap();
    let basis = cone_extreme_rays(a, ConeSide::FromA);
    for (ray, cert) in basis.rays().iter().zip(basis.certificates()) {
        attach_certificate_trace(&mut traj, format!("{ray:?}"), &cert);
        let check = verify_monotone(&cert, &traj, 1e-12);
        println!(
            "ray certificate monotone: {} (range [{:.6}, {:.6}])",
            check.monotone, check.min_value, check.max_value
        );
    }
    let head: Vec<f64> = traj.lyapunov_traces()[2].values[..5].to_vec();
    println!("trace of {} starts: {head:?}", traj.lyapunov_traces()[2].label);
    let control = LyapunovCertificate::linear(vec![ratio(1, 1), ratio(0, 1), ratio(0, 1)])
        .unwrap();
    let check = verify_monotone(&control, &traj, 1e-12);
    println!(
        "control (1,0,0) monotone: {} with {} violations",
        check.monotone, check.violations
    );
}
