//! Capacity of a Bell-diagonal state, by closed-form branch and by the
//! eigenvalue route.

use qbattery::capacity::{capacity, capacity_general, select_branch};
use qbattery::model::{bell_density, BatteryHamiltonian, BellCoefficients};

fn main() -> qbattery::Result<()> {
    let h = BatteryHamiltonian::new(0.6, 0.3)?;
    for (c1, c2, c3) in [(0.5, 0.3, 0.1), (0.1, 0.5, 0.3), (0.0, 0.0, 0.0), (-0.6, -0.6, -0.6)] {
        let c = BellCoefficients::new(c1, c2, c3)?;
        let branch = select_branch(&c).map_or("-", |b| b.label());
        let general = capacity_general(&bell_density(&c)?, &h)?;
        let closed = capacity(&c, &h)
            .map(|v| format!("{v:.6}"))
            .unwrap_or_else(|e| e.to_string());
        println!("c = ({c1:5}, {c2:5}, {c3:5})  spectrum {:?}", c.spectrum());
        println!("    branch {branch:>6}  closed {closed}  general {general:.6}");
    }
    Ok(())
}
