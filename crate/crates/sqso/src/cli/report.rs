//! Deterministic report serialization.
//!
//! Reports must be byte-identical for identical inputs, so floats are
//! rendered in scientific notation with 17 significant digits (enough to
//! round-trip any `f64`) both in JSON and in trajectory CSV.

use crate::dynamics::TrajectoryRecord;
use serde::Serialize;
use serde_json::ser::{Formatter, Serializer};
use std::io::{self, Write};

/// Compact JSON with floats in fixed scientific notation. All other
/// tokens keep the `Formatter` defaults.
struct SciFloatFormatter;

impl Formatter for SciFloatFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:.7e}")
    }
}

/// Serializes a report as single-line JSON with deterministic float text.
pub fn to_json(value: &impl Serialize) -> String {
    let mut buf = Vec::new();
    let mut serializer = Serializer::with_formatter(&mut buf, SciFloatFormatter);
    value
        .serialize(&mut serializer)
        .expect("report serialization is infallible");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

/// Formats one float the same way the JSON reports do.
pub fn format_float(value: f64) -> String {
    format!("{value:.16e}")
}

/// Writes the trajectory as CSV with header `step,x_1,...,x_m,delta`.
/// The delta column is empty on the initial row.
pub fn write_trajectory_csv(
    traj: &TrajectoryRecord,
    writer: &mut dyn Write,
) -> io::Result<()> {
    let m = traj.last_point().dim();
    write!(writer, "step")?;
    for i in 1..=m {
        write!(writer, ",x_{i}")?;
    }
    writeln!(writer, ",delta")?;
    for (step, point) in traj.points().iter().enumerate() {
        write!(writer, "{step}")?;
        for &coord in point.coords() {
            write!(writer, ",{}", format_float(coord))?;
        }
        if step == 0 {
            writeln!(writer, ",")?;
        } else {
            writeln!(writer, ",{}", format_float(traj.step_deltas()[step - 1]))?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::iterate;
    use crate::fixtures;
    use crate::simplex::SimplexPoint;

    #[derive(Serialize)]
    struct Sample {
        value: f64,
        count: usize,
    }

    #[test]
    fn floats_use_seventeen_significant_digits() {
        let json = to_json(&Sample {
            value: 1.0 / 3.0,
            count: 3,
        });
        assert_eq!(json, r#"{"value":3.3333333333333331e-1,"count":3}"#);
    }

    #[test]
    fn csv_layout() {
        let pair = fixtures::constant_pair();
        let kernel = pair.kernel().unwrap();
        let traj = iterate(&kernel, &SimplexPoint::new(vec![0.75, 0.25]).unwrap(), 3, 1e-30)
            .unwrap();
        let mut buf = Vec::new();
        write_trajectory_csv(&traj, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "step,x_1,x_2,delta");
        let first = lines.next().unwrap();
        assert!(first.starts_with("0,7.5"));
        assert!(first.ends_with(','));
        let second = lines.next().unwrap();
        assert!(second.starts_with("1,5.0000000000000000e-1"));
    }
}
