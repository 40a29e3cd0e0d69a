//! Amplitude damping: closed-form output spectrum, level ordering and
//! capacity against numerical diagonalization.

use qbattery::capacity::{capacity_adc_closed, capacity_general};
use qbattery::channels::{adc_output, adc_spectrum};
use qbattery::model::{BatteryHamiltonian, BellCoefficients};

fn main() -> qbattery::Result<()> {
    let h = BatteryHamiltonian::new(0.6, 0.3)?;
    for c in [
        BellCoefficients::new(0.5, 0.3, 0.1)?,
        BellCoefficients::new(0.1, 0.5, 0.3)?,
    ] {
        println!("c = {:?}", c.as_array());
        for p in [0.1, 0.5, 0.9] {
            let u = adc_spectrum(&c, p, 1)?;
            let (closed, ordering) = capacity_adc_closed(&c, &h, p, 1)?;
            let general = capacity_general(&adc_output(&c, p, 1)?, &h)?;
            println!("  p={p}  u={u:.4?}  {ordering:?}  closed {closed:.6}  general {general:.6}");
        }
    }
    Ok(())
}
