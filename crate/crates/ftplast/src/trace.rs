//! CSV form of an evolution trace:
//! `step,w1,w2,w3,w4,w5,r1,r2,r3,r4,r5,pattern`, numbers with 12
//! significant digits and the pattern as one `+`/`-`/`=` per weight.

use std::io::Write;

use ftplast_core::evolution::EvolutionTrace;

use crate::error::AppResult;

pub const HEADER: [&str; 12] = [
    "step", "w1", "w2", "w3", "w4", "w5", "r1", "r2", "r3", "r4", "r5", "pattern",
];

/// Fixed-point rendering of `x` with `digits` significant digits.
pub fn significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exponent = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - exponent).max(0) as usize;
    format!("{x:.decimals$}")
}

pub fn write_csv<W: Write>(trace: &EvolutionTrace, out: W) -> AppResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for s in &trace.steps {
        let mut row = vec![s.step.to_string()];
        row.extend(s.weights.iter().map(|&x| significant(x, 12)));
        row.extend(s.radii.iter().map(|&x| significant(x, 12)));
        row.push(s.pattern.iter().map(|t| t.symbol()).collect());
        w.write_record(&row)?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}
