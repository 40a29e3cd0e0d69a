//! Pushes one state through every channel and compares the tabulated
//! coefficient maps with explicit Kraus evolution.

use qbattery::capacity::capacity_general;
use qbattery::channels::{apply_n_times, coeff_map, tabulated_pass, ChannelKind, Sides};
use qbattery::model::{bell_density, extract_coefficients, BatteryHamiltonian, BellCoefficients};

fn main() -> qbattery::Result<()> {
    let c = BellCoefficients::new(0.5, 0.3, 0.1)?;
    let h = BatteryHamiltonian::new(0.6, 0.3)?;
    let (p, n) = (0.3, 3);
    let rho = bell_density(&c)?;
    for kind in ChannelKind::ALL {
        let evolved = apply_n_times(&rho, &tabulated_pass(kind, p)?, n);
        let cap = capacity_general(&evolved, &h)?;
        if kind.preserves_bell_form() {
            let table = coeff_map(kind, &c, p, None, n, Sides::One)?;
            let brute = extract_coefficients(&evolved)?;
            println!(
                "{kind:>3}: c' = {:?}  |table - kraus| = {:.1e}  C = {cap:.6}",
                table.as_array(),
                table.max_abs_diff(&brute)
            );
        } else {
            println!("{kind:>3}: leaves the Bell-diagonal family  C = {cap:.6}");
        }
    }
    Ok(())
}
