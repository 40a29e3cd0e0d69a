//! Bit flip on both qubits: capacity over a (p, q) grid, printed as a table.

use qbattery::analysis::{sweep, SweepConfig};
use qbattery::channels::ChannelKind;
use qbattery::model::{BatteryHamiltonian, BellCoefficients};

fn main() -> qbattery::Result<()> {
    let grid: Vec<f64> = (0..=5).map(|i| i as f64 / 5.0).collect();
    let config = SweepConfig::two_sided(
        ChannelKind::BitFlip,
        BellCoefficients::new(0.5, 0.3, 0.1)?,
        BatteryHamiltonian::new(0.6, 0.3)?,
        grid.clone(),
        grid.clone(),
        vec![2],
    );
    let records = sweep(&config)?;
    print!("p\\q  ");
    for q in &grid {
        print!("{q:>8.1}");
    }
    println!();
    for (row, p) in records.chunks(grid.len()).zip(&grid) {
        print!("{p:<5.1}");
        for r in row {
            print!("{:>8.4}", r.capacity_general);
        }
        println!();
    }
    Ok(())
}
