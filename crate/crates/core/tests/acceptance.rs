//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criterion 6 asks for the amplitude-damping capacity to be nondecreasing
//! in `p`; the capacity dips near `p = 0.17` before rising, so that check
//! fails. It is listed in `EXPECTED_FAILURES` and still printed as FAIL. The
//! run errors if any other criterion fails or if criterion 6 passes.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use qbattery::analysis::{
    detect_frozen, detect_sudden_death, oracle_crosscheck, sweep, SweepConfig, FROZEN_TOL, SUDDEN_DEATH_TOL,
};
use qbattery::capacity::{adc_ordering, capacity_branch, capacity_general, select_branch, AdcOrdering};
use qbattery::channels::ChannelKind;
use qbattery::model::{bell_density, BatteryHamiltonian, BellCoefficients, TwoQubitState};
use qbattery::random::{haar_unitary, random_branch_coefficients, random_density, rng_from_seed};
use rand::Rng;

const EXPECTED_FAILURES: &[u8] = &[6];

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(checks: &[(&str, f64, f64)]) -> Outcome {
    let passed = checks.iter().all(|(_, dev, tol)| dev <= tol);
    let detail = checks
        .iter()
        .map(|(name, dev, tol)| format!("{name} {dev:.2e} <= {tol:.0e}"))
        .collect::<Vec<_>>()
        .join("; ");
    Outcome { passed, detail }
}

fn running() -> BellCoefficients {
    BellCoefficients::new(0.5, 0.3, 0.1).unwrap()
}

fn h() -> BatteryHamiltonian {
    BatteryHamiltonian::new(0.6, 0.3).unwrap()
}

fn grid99() -> Vec<f64> {
    (1..=99).map(|i| i as f64 / 100.0).collect()
}

fn criterion_1() -> Outcome {
    let mut worst: f64 = 0.0;
    for kind in ChannelKind::ALL {
        let r = &sweep(&SweepConfig::one_sided(kind, running(), h(), vec![0.0], vec![1])).unwrap()[0];
        worst = worst.max((r.capacity_general - 0.78).abs());
        worst = worst.max(r.capacity_closed.map_or(f64::INFINITY, |v| (v - 0.78).abs()));
    }
    outcome(&[("max |C - 0.78| over six channels", worst, 1e-12)])
}

fn criterion_2_and_3() -> (Outcome, Outcome) {
    let started = Instant::now();
    let report = oracle_crosscheck(42, 1000).unwrap();
    let elapsed = started.elapsed();
    let runtime_ok = elapsed < Duration::from_secs(10);
    let oracle = outcome(&[
        ("coefficient maps", report.max_over("map/"), 1e-12),
        ("adc matrix", report.max_over("adc/matrix"), 1e-12),
        ("adc spectrum", report.max_over("adc/spectrum"), 1e-10),
        ("branch capacities", report.max_over("capacity"), 1e-12),
        ("runtime < 10 s", if runtime_ok { 0.0 } else { 1.0 }, 0.0),
    ]);
    let cptp = outcome(&[
        ("completeness", report.max_over("cptp/completeness"), 1e-12),
        ("trace", report.max_over("cptp/trace"), 1e-12),
        ("hermiticity", report.max_over("cptp/hermiticity"), 1e-12),
        ("positivity", report.max_over("cptp/positivity"), 1e-10),
    ]);
    (oracle, cptp)
}

fn criterion_4() -> Outcome {
    let mut rng = rng_from_seed(4);
    let mut negativity: f64 = 0.0;
    let mut invariance: f64 = 0.0;
    for i in 0..1000 {
        let rho = random_density(&mut rng);
        let eps_a: f64 = rng.random_range(0.0..2.0);
        let hh = BatteryHamiltonian::new(eps_a, rng.random_range(0.0..=eps_a)).unwrap();
        let value = capacity_general(&rho, &hh).unwrap();
        negativity = negativity.max(-value);
        if i < 100 {
            let u = haar_unitary(&mut rng, 4);
            let rotated = TwoQubitState::from_matrix_unchecked(u.conjugate(rho.matrix()));
            invariance = invariance.max((capacity_general(&rotated, &hh).unwrap() - value).abs());
        }
    }
    let mut branch: f64 = 0.0;
    for _ in 0..1000 {
        let c = random_branch_coefficients(&mut rng);
        let eps_a: f64 = rng.random_range(0.0..2.0);
        let hh = BatteryHamiltonian::new(eps_a, rng.random_range(0.0..=eps_a)).unwrap();
        let closed = capacity_branch(&c, &hh, select_branch(&c).unwrap()).unwrap();
        let general = capacity_general(&bell_density(&c).unwrap(), &hh).unwrap();
        branch = branch.max((closed - general).abs());
    }
    outcome(&[
        ("negativity", negativity.max(0.0), 1e-12),
        ("Haar invariance", invariance, 1e-10),
        ("branch vs general", branch, 1e-12),
    ])
}

fn criterion_5() -> Outcome {
    let config = SweepConfig::one_sided(ChannelKind::Depolarizing, running(), h(), grid99(), vec![1]);
    let records = sweep(&config).unwrap();
    let report = detect_sudden_death(&config, &records, SUDDEN_DEATH_TOL);
    let root_dev = report.as_ref().map_or(f64::INFINITY, |r| (r.location - 0.75).abs());
    let flagged = report
        .as_ref()
        .is_some_and(|r| r.deviation_flagged == Some(true) && r.general_stays_dead == Some(false));
    let general = records
        .iter()
        .map(|r| (r.capacity_general - 0.78 * (1.0 - 4.0 * r.p / 3.0).abs()).abs())
        .fold(0.0, f64::max);
    outcome(&[
        ("root vs 0.75", root_dev, 1e-6),
        ("general vs 0.78|1-4p/3|", general, 1e-12),
        ("p>0.75 revival flagged", if flagged { 0.0 } else { 1.0 }, 0.0),
    ])
}

fn criterion_6() -> Outcome {
    let config = SweepConfig::one_sided(ChannelKind::AmplitudeDamping, running(), h(), grid99(), vec![1]);
    let records = sweep(&config).unwrap();
    let drop = records
        .windows(2)
        .map(|w| w[0].capacity_general - w[1].capacity_general)
        .fold(0.0, f64::max);
    let end = sweep(&SweepConfig::one_sided(
        ChannelKind::AmplitudeDamping,
        running(),
        h(),
        vec![1.0],
        vec![1],
    ))
    .unwrap()[0]
        .capacity_general;
    outcome(&[
        ("largest decrease", drop, 1e-12),
        ("C(p=1) vs 1.2", (end - 1.2).abs(), 1e-12),
    ])
}

fn criterion_7() -> Outcome {
    let mut standard = 0usize;
    let mut swapped = 0usize;
    let fig2 = BellCoefficients::new(0.1, 0.5, 0.3).unwrap();
    for n in [1, 2, 3, 4, 10, 100] {
        for p in grid99() {
            standard += usize::from(adc_ordering(&running(), p, n, true) != Some(AdcOrdering::Standard));
            swapped += usize::from(adc_ordering(&fig2, p, n, true) != Some(AdcOrdering::Swapped));
        }
    }
    outcome(&[
        ("u0<u2<u3<u1 violations", standard as f64, 0.0),
        ("u0<u2<u1<u3 violations", swapped as f64, 0.0),
    ])
}

fn criterion_8() -> Outcome {
    let mut n_list: Vec<u32> = (1..=10).collect();
    n_list.extend([50, 100]);
    let frozen = |kind: ChannelKind, target: f64| {
        let records = sweep(&SweepConfig::one_sided(kind, running(), h(), vec![0.5], n_list.clone())).unwrap();
        detect_frozen(&records, FROZEN_TOL).map_or(f64::INFINITY, |r| (r.value - target).abs())
    };
    outcome(&[
        ("bf vs 0.6", frozen(ChannelKind::BitFlip, 0.6), 1e-8),
        ("adc vs 1.2", frozen(ChannelKind::AmplitudeDamping, 1.2), 1e-6),
        ("dep vs 0", frozen(ChannelKind::Depolarizing, 0.0), 1e-8),
    ])
}

fn criterion_9() -> Outcome {
    let grid: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
    let mut formula: f64 = 0.0;
    let mut corner: f64 = 0.0;
    let mut rise: f64 = 0.0;
    let mut previous: Option<Vec<f64>> = None;
    for n in [1u32, 2, 10, 100] {
        let config = SweepConfig::two_sided(
            ChannelKind::BitFlip,
            running(),
            h(),
            grid.clone(),
            grid.clone(),
            vec![n],
        );
        let records = sweep(&config).unwrap();
        let z: Vec<f64> = records.iter().map(|r| r.capacity_general).collect();
        for r in &records {
            let q = r.q.unwrap();
            let expected = 0.6 + 0.18 * ((1.0 - r.p) * (1.0 - q)).powi(n as i32);
            formula = formula.max((r.capacity_general - expected).abs());
        }
        corner = corner.max((z[z.len() - 1] - 0.6).abs());
        let m = grid.len();
        for i in 0..m {
            for j in 0..m {
                if i + 1 < m {
                    rise = rise.max(z[(i + 1) * m + j] - z[i * m + j]);
                }
                if j + 1 < m {
                    rise = rise.max(z[i * m + j + 1] - z[i * m + j]);
                }
            }
        }
        if let Some(prev) = &previous {
            for (a, b) in prev.iter().zip(&z) {
                rise = rise.max(b - a);
            }
        }
        previous = Some(z);
    }
    outcome(&[
        ("0.6+0.18((1-p)(1-q))^n", formula, 1e-12),
        ("corner (1,1) vs 0.6", corner, 1e-12),
        ("largest increase in p, q or n", rise, 1e-12),
    ])
}

fn criterion_10() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_qbattery");
    let verify = || {
        Command::new(bin)
            .args(["verify", "--seed", "42"])
            .output()
            .unwrap()
            .stdout
    };
    let first = verify();
    let same_report = !first.is_empty() && first == verify();

    let dir = tempfile::tempdir().unwrap();
    let figure = |sub: &str| {
        let out = dir.path().join(sub);
        let run = Command::new(bin)
            .args(["figure", "1b", "--out"])
            .arg(&out)
            .output()
            .unwrap();
        assert!(run.status.success());
        std::fs::read(out.join("fig1b.csv")).unwrap()
    };
    let same_csv = figure("a") == figure("b");
    outcome(&[
        (
            "verify --seed 42 byte mismatch",
            if same_report { 0.0 } else { 1.0 },
            0.0,
        ),
        ("figure 1b CSV byte mismatch", if same_csv { 0.0 } else { 1.0 }, 0.0),
    ])
}

fn main() -> ExitCode {
    let (c2, c3) = criterion_2_and_3();
    let results: Vec<(u8, &str, Outcome)> = vec![
        (1, "baseline capacity", criterion_1()),
        (2, "oracle equivalence", c2),
        (3, "CPTP suite", c3),
        (4, "capacity functional", criterion_4()),
        (5, "sudden death", criterion_5()),
        (6, "adc monotonicity and limit", criterion_6()),
        (7, "eigenvalue orderings", criterion_7()),
        (8, "frozen capacity", criterion_8()),
        (9, "two-sided surfaces", criterion_9()),
        (10, "determinism", criterion_10()),
    ];

    let mut unexpected = Vec::new();
    for (id, name, o) in &results {
        let status = if o.passed { "PASS" } else { "FAIL" };
        let note = if EXPECTED_FAILURES.contains(id) {
            " (expected failure)"
        } else {
            ""
        };
        println!("criterion {id:>2} {name}: {status}{note} [{}]", o.detail);
        if o.passed == EXPECTED_FAILURES.contains(id) {
            unexpected.push(*id);
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
