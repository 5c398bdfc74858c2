//! Define an operator from a JSON model string, end to end.
//!
//! The same format the `sqso` binary reads: exact rational-string
//! entries, so `1/3` survives serialization unharmed.
//!
//! Run with: `cargo run -p sqso --example custom_model`

use sqso::cli::ModelFile;
use sqso::{detect_limit, iterate, SimplexPoint};

const MODEL: &str = r#"{
  "label": "duplicate-row family, b = 3/4, y = (1/4, 1/2, 1)",
  "m": 3,
  "A": [["3/4", "1/4", "3/4"],
        ["3/4", "1/2", "1/2"],
        ["3/4", "1",   "0"]],
  "B": [["0",   "1",   "1"],
        ["0",   "1",   "1"],
        ["2/3", "1/2", "1/2"]]
}"#;

fn main() {
    let model = ModelFile::from_json(MODEL).unwrap();
    let pair = model.to_pair().unwrap();
    println!(
        "{}: admissibility {:?}, class {:?}",
        model.label.as_deref().unwrap_or("unnamed"),
        pair.admissibility(),
        pair.classify().unwrap()
    );

    let kernel = pair.kernel().unwrap();
    let traj = iterate(&kernel, &SimplexPoint::uniform(3), 2000, 1e-12).unwrap();
    println!(
        "from the uniform start: {:?} after {} steps",
        detect_limit(&traj, &kernel, 1e-9),
        traj.len() - 1
    );

    // Round-trip: the canonical echo renders entries in lowest terms.
    let echo = ModelFile::echo(&pair, model.label.clone());
    println!("\ncanonical echo:\n{}", serde_json::to_string_pretty(&echo).unwrap());
}
