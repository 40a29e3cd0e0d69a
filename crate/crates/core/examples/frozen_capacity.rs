//! Repeated channel passes at fixed p: bit flip freezes, depolarizing dies,
//! amplitude damping saturates.

use qbattery::analysis::{detect_frozen, sweep, SweepConfig, FROZEN_TOL};
use qbattery::channels::ChannelKind;
use qbattery::model::{BatteryHamiltonian, BellCoefficients};

fn main() -> qbattery::Result<()> {
    let c = BellCoefficients::new(0.5, 0.3, 0.1)?;
    let h = BatteryHamiltonian::new(0.6, 0.3)?;
    let n_list = vec![1, 2, 3, 5, 10, 50, 100];
    for kind in [
        ChannelKind::BitFlip,
        ChannelKind::Depolarizing,
        ChannelKind::AmplitudeDamping,
    ] {
        let records = sweep(&SweepConfig::one_sided(kind, c, h, vec![0.5], n_list.clone()))?;
        let trace: Vec<String> = records.iter().map(|r| format!("{:.4}", r.capacity_general)).collect();
        let frozen = detect_frozen(&records, FROZEN_TOL).map(|r| r.value);
        println!("{kind:>3}: {}  frozen at {frozen:?}", trace.join(" "));
    }
    Ok(())
}
