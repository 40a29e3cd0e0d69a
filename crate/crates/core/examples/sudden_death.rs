//! Locates the depolarizing root and shows the general capacity reviving
//! past it.

use qbattery::analysis::{detect_sudden_death, sweep, SweepConfig, SUDDEN_DEATH_TOL};
use qbattery::channels::ChannelKind;
use qbattery::model::{BatteryHamiltonian, BellCoefficients};

fn main() -> qbattery::Result<()> {
    let grid: Vec<f64> = (1..=99).map(|i| i as f64 / 100.0).collect();
    let config = SweepConfig::one_sided(
        ChannelKind::Depolarizing,
        BellCoefficients::new(0.5, 0.3, 0.1)?,
        BatteryHamiltonian::new(0.6, 0.3)?,
        grid,
        vec![1],
    );
    let records = sweep(&config)?;
    if let Some(report) = detect_sudden_death(&config, &records, SUDDEN_DEATH_TOL) {
        println!("root p* = {} (bracket {:?})", report.location, report.bracket);
        println!("general capacity stays dead: {:?}", report.general_stays_dead);
    }
    for r in records.iter().filter(|r| [0.5, 0.74, 0.75, 0.76, 0.9].contains(&r.p)) {
        println!(
            "p={:<5} closed {:>10.6}  general {:.6}  flag {}",
            r.p,
            r.capacity_closed.unwrap_or(f64::NAN),
            r.capacity_general,
            r.deviation_flag
        );
    }
    Ok(())
}
