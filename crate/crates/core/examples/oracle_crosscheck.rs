//! Random trials comparing every closed form with brute-force Kraus
//! evolution, then the same run against a deliberately wrong table.

use qbattery::analysis::{oracle_crosscheck, oracle_crosscheck_with, CorruptedBitFlipTable};

fn main() -> qbattery::Result<()> {
    let report = oracle_crosscheck(42, 500)?;
    for (name, cat) in &report.categories {
        println!("{name:<24} max {:.2e} (tol {:.0e})", cat.max_deviation, cat.tolerance);
    }
    println!("all passed: {}", report.passed());

    let broken = oracle_crosscheck_with(42, 500, &CorruptedBitFlipTable)?;
    println!("corrupted table failures: {:?}", broken.failures());
    Ok(())
}
