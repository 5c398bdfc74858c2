//! Validate matrix pairs and classify the operators they define.
//!
//! Run with: `cargo run -p sqso --example validate_and_classify`

use sqso::{fixtures, Admissibility, Classification, RationalMatrix, SqsoPair};

fn describe(name: &str, pair: &SqsoPair) {
    println!("== {name} ==");
    println!(
        "  admissibility: {:?}   det A = {}   det B = {}",
        pair.admissibility(),
        pair.det_a(),
        pair.det_b()
    );
    println!(
        "  identical rows: A = {}, B = {}   admissible family: {}",
        pair.rows_identical_a(),
        pair.rows_identical_b(),
        pair.in_admissible_family()
    );
    if pair.admissibility() == Admissibility::Strict {
        match pair.classify().unwrap() {
            Classification::Constant { point } => {
                let rendered: Vec<String> = point.iter().map(|p| p.to_string()).collect();
                println!("  class: Constant, every point maps to ({})", rendered.join(", "));
            }
            Classification::Linear { matrix } => {
                println!("  class: Linear, Markov matrix:");
                print!("{matrix}");
            }
            Classification::Nonlinear => println!("  class: Nonlinear"),
        }
    }
    println!();
}

fn main() {
    describe("constant pair", &fixtures::constant_pair());
    describe("cyclic permutation pair", &fixtures::cyclic_permutation_pair());
    describe("cone family, b = (2/3, 5/6, 1)", &fixtures::cone_family_canonical());
    describe("weak pair", &fixtures::weak_pair());

    // A pair that fails both factorization conditions.
    let invalid = SqsoPair::validate(RationalMatrix::identity(2), RationalMatrix::identity(2))
        .unwrap();
    describe("identity vs identity", &invalid);

    // The tensor route: a strict pair factors its own tensor entrywise,
    // the weak pair factors its tensor only in the symmetrized sense.
    let cone = fixtures::cone_family_canonical();
    let tensor = cone.build_tensor().unwrap();
    println!(
        "cone family factors its tensor: {}",
        cone.matches_tensor(&tensor)
    );
    println!(
        "weak pair factors its published tensor: {}",
        fixtures::weak_pair().matches_tensor(&fixtures::weak_pair_tensor())
    );
    println!(
        "weak pair cannot build an entrywise tensor: {:?}",
        fixtures::weak_pair().build_tensor().err().map(|e| e.to_string())
    );
}
