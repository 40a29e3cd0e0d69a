//! Writes a phase-flip sweep to CSV with a checksum, the way the CLI does.

use qbattery::analysis::{sweep, SweepConfig};
use qbattery::channels::ChannelKind;
use qbattery::cli::output::{records_csv, sha256_hex};
use qbattery::model::{BatteryHamiltonian, BellCoefficients};

fn main() -> qbattery::Result<()> {
    let grid: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
    let config = SweepConfig::one_sided(
        ChannelKind::PhaseFlip,
        BellCoefficients::new(0.5, 0.3, 0.1)?,
        BatteryHamiltonian::new(0.6, 0.3)?,
        grid,
        vec![1, 4],
    );
    let csv = records_csv(&sweep(&config)?)?;
    let path = std::env::temp_dir().join("qbattery_pf_sweep.csv");
    std::fs::write(&path, &csv)?;
    println!("{}  {}", sha256_hex(&csv), path.display());
    print!(
        "{}",
        String::from_utf8_lossy(&csv)
            .lines()
            .take(4)
            .collect::<Vec<_>>()
            .join("\n")
    );
    println!();
    Ok(())
}
