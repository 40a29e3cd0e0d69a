//! Parameter sweeps, sudden-death and frozen-capacity detectors, and the
//! oracle cross-check that pits every closed form against brute-force
//! operator-sum evolution.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::capacity::{adc_ordering, capacity_adc_closed, capacity_from_eigenvalues, select_branch, OrderingBranch};
use crate::channels::{
    adc_output, adc_spectrum, apply_n_times, apply_one_sided, apply_two_sided, kraus_set, tabulated_pass,
    two_sided_pass, ChannelKind, CoefficientTable, LocalChannel, Sides, StandardTables,
};
use crate::model::{bell_density, extract_coefficients, BatteryHamiltonian, BellCoefficients, TwoQubitState};
use crate::random::{random_bell_coefficients, random_density, rng_from_seed};
use crate::{Error, Result};

/// Closed and general capacities closer than this agree.
pub const DEVIATION_TOL: f64 = 1e-12;

/// Capacity at or below this counts as dead.
pub const SUDDEN_DEATH_TOL: f64 = 1e-9;

/// Bisection stops once the bracket is this narrow.
pub const ROOT_WIDTH: f64 = 1e-6;

pub const FROZEN_TOL: f64 = 1e-8;

/// Tolerance for coefficient maps, closed-form matrices and capacities.
pub const ORACLE_TOL: f64 = 1e-12;

/// Tolerance for spectra and positivity.
pub const SPECTRUM_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub channel: ChannelKind,
    pub sides: Sides,
    pub coefficients: BellCoefficients,
    pub hamiltonian: BatteryHamiltonian,
    pub p_grid: Vec<f64>,
    pub q_grid: Option<Vec<f64>>,
    pub n_list: Vec<u32>,
}

impl SweepConfig {
    /// One-sided sweep over `p` at a list of pass counts.
    pub fn one_sided(
        channel: ChannelKind,
        coefficients: BellCoefficients,
        hamiltonian: BatteryHamiltonian,
        p_grid: Vec<f64>,
        n_list: Vec<u32>,
    ) -> Self {
        Self {
            channel,
            sides: Sides::One,
            coefficients,
            hamiltonian,
            p_grid,
            q_grid: None,
            n_list,
        }
    }

    pub fn two_sided(
        channel: ChannelKind,
        coefficients: BellCoefficients,
        hamiltonian: BatteryHamiltonian,
        p_grid: Vec<f64>,
        q_grid: Vec<f64>,
        n_list: Vec<u32>,
    ) -> Self {
        Self {
            channel,
            sides: Sides::Two,
            coefficients,
            hamiltonian,
            p_grid,
            q_grid: Some(q_grid),
            n_list,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.coefficients.check_physical()?;
        check_grid("p", &self.p_grid)?;
        match (self.sides, &self.q_grid) {
            (Sides::One, None) => {}
            (Sides::Two, Some(q)) => {
                check_grid("q", q)?;
                if !self.channel.supports_two_sided() {
                    return Err(Error::UnsupportedCombination(format!(
                        "two-sided {} has no coefficient table",
                        self.channel
                    )));
                }
            }
            (Sides::One, Some(_)) => return Err(Error::InvalidArgument("q grid given for a one-sided sweep".into())),
            (Sides::Two, None) => return Err(Error::InvalidArgument("two-sided sweep needs a q grid".into())),
        }
        if self.n_list.is_empty() || self.n_list.contains(&0) {
            return Err(Error::InvalidArgument(
                "n list must be nonempty with every n >= 1".into(),
            ));
        }
        Ok(())
    }

    fn state(&self) -> Result<TwoQubitState> {
        bell_density(&self.coefficients)
    }
}

fn check_grid(name: &'static str, grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidArgument(format!("{name} grid is empty")));
    }
    if let Some(&bad) = grid.iter().find(|v| !(0.0..=1.0).contains(*v)) {
        return Err(Error::ParameterOutOfRange { name, value: bad });
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(format!("{name} grid is not strictly ascending")));
    }
    Ok(())
}

/// One grid point of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub channel: ChannelKind,
    pub sides: Sides,
    pub p: f64,
    pub q: Option<f64>,
    pub n: u32,
    /// Closed-form capacity, absent when no closed form covers the point.
    pub capacity_closed: Option<f64>,
    /// Capacity of the brute-force evolved state.
    pub capacity_general: f64,
    /// Ascending spectrum of the brute-force evolved state.
    pub spectrum: [f64; 4],
    /// Branch whose ordering precondition certified the closed form.
    pub branch_used: Option<OrderingBranch>,
    pub deviation_flag: bool,
    pub error: Option<String>,
}

impl SweepRecord {
    fn failed(config: &SweepConfig, p: f64, q: Option<f64>, n: u32, err: Error) -> Self {
        Self {
            channel: config.channel,
            sides: config.sides,
            p,
            q,
            n,
            capacity_closed: None,
            capacity_general: f64::NAN,
            spectrum: [f64::NAN; 4],
            branch_used: None,
            deviation_flag: false,
            error: Some(err.to_string()),
        }
    }

    /// The closed value when present, else the general one.
    pub fn capacity(&self) -> f64 {
        self.capacity_closed.unwrap_or(self.capacity_general)
    }
}

/// Closed-form capacity at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedForm {
    pub value: f64,
    /// Present when the branch precondition holds for the evolved state.
    pub branch: Option<OrderingBranch>,
}

/// Closed-form capacity after `n` passes.
///
/// Bell-preserving kinds use the coefficient map, then the branch formula
/// selected on the mapped coefficients. When no branch applies there, the
/// initial state's branch formula is continued without a certificate; when
/// the initial state has no branch either, there is no closed form.
/// One-sided amplitude damping uses the ordering-specific expressions.
pub fn closed_form(config: &SweepConfig, p: f64, q: Option<f64>, n: u32) -> Result<Option<ClosedForm>> {
    let c = &config.coefficients;
    let h = &config.hamiltonian;
    if config.channel == ChannelKind::AmplitudeDamping {
        if config.sides == Sides::Two {
            return Err(Error::UnsupportedCombination(
                "two-sided adc has no coefficient table".into(),
            ));
        }
        return match capacity_adc_closed(c, h, p, n) {
            Ok((value, ordering)) => Ok(Some(ClosedForm {
                value,
                branch: Some(ordering.branch()),
            })),
            Err(Error::OrderingAssumptionViolated) => Ok(None),
            Err(e) => Err(e),
        };
    }
    let mapped = crate::channels::coeff_map(config.channel, c, p, q, n, config.sides)?;
    if let Some(branch) = select_branch(&mapped) {
        return Ok(Some(ClosedForm {
            value: branch.formula(&mapped, h),
            branch: Some(branch),
        }));
    }
    Ok(select_branch(c).map(|initial| ClosedForm {
        value: initial.formula(&mapped, h),
        branch: None,
    }))
}

fn local_channel(config: &SweepConfig, p: f64, q: Option<f64>) -> Result<LocalChannel> {
    match (config.sides, q) {
        (Sides::One, _) => tabulated_pass(config.channel, p),
        (Sides::Two, Some(q)) => two_sided_pass(config.channel, p, q),
        (Sides::Two, None) => Err(Error::InvalidArgument("two-sided point needs q".into())),
    }
}

/// Evaluates one grid point by brute force and, where available, in closed
/// form.
pub fn evaluate_point(config: &SweepConfig, p: f64, q: Option<f64>, n: u32) -> Result<SweepRecord> {
    let rho = config.state()?;
    let evolved = apply_n_times(&rho, &local_channel(config, p, q)?, n);
    let spectrum = evolved.eigenvalues()?;
    let capacity_general = capacity_from_eigenvalues(spectrum, &config.hamiltonian);
    let closed = closed_form(config, p, q, n)?;
    let deviation_flag = closed.is_some_and(|cf| {
        let gap = (cf.value - capacity_general).abs();
        gap.is_nan() || gap > DEVIATION_TOL
    });
    Ok(SweepRecord {
        channel: config.channel,
        sides: config.sides,
        p,
        q,
        n,
        capacity_closed: closed.map(|cf| cf.value),
        capacity_general,
        spectrum,
        branch_used: closed.and_then(|cf| cf.branch),
        deviation_flag,
        error: None,
    })
}

/// Row-major (p, then q, then n) sweep. Points are evaluated in parallel;
/// the output order does not depend on scheduling. A point that fails
/// yields a record carrying the error message.
pub fn sweep(config: &SweepConfig) -> Result<Vec<SweepRecord>> {
    config.validate()?;
    let qs: Vec<Option<f64>> = match &config.q_grid {
        Some(grid) => grid.iter().copied().map(Some).collect(),
        None => vec![None],
    };
    let mut points = Vec::with_capacity(config.p_grid.len() * qs.len() * config.n_list.len());
    for &p in &config.p_grid {
        for &q in &qs {
            for &n in &config.n_list {
                points.push((p, q, n));
            }
        }
    }
    Ok(points
        .into_par_iter()
        .map(|(p, q, n)| evaluate_point(config, p, q, n).unwrap_or_else(|e| SweepRecord::failed(config, p, q, n, e)))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PhenomenonKind {
    SuddenDeath,
    Frozen,
}

impl fmt::Display for PhenomenonKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PhenomenonKind::SuddenDeath => "sudden-death",
            PhenomenonKind::Frozen => "frozen",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvidencePoint {
    pub p: f64,
    pub q: Option<f64>,
    pub n: u32,
    pub capacity_closed: Option<f64>,
    pub capacity_general: f64,
}

impl From<&SweepRecord> for EvidencePoint {
    fn from(r: &SweepRecord) -> Self {
        Self {
            p: r.p,
            q: r.q,
            n: r.n,
            capacity_closed: r.capacity_closed,
            capacity_general: r.capacity_general,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhenomenonReport {
    pub kind: PhenomenonKind,
    pub channel: ChannelKind,
    /// Root in `p` for sudden death, `n_max` for a frozen asymptote.
    pub location: f64,
    /// Sudden death: final bisection bracket.
    pub bracket: Option<[f64; 2]>,
    /// Capacity at `location`.
    pub value: f64,
    /// Sudden death: whether the general capacity stays dead on every grid
    /// point past the root.
    pub general_stays_dead: Option<bool>,
    /// Sudden death: whether any record past the root has its deviation
    /// flag set.
    pub deviation_flagged: Option<bool>,
    pub tolerance: f64,
    pub evidence: Vec<EvidencePoint>,
}

/// First grid `p` where the capacity drops to `tol` or below, polished by
/// bisection on the closed form (on the general capacity when the point has
/// no closed form). `records` must come from a 1-D sweep over `p`.
pub fn detect_sudden_death(config: &SweepConfig, records: &[SweepRecord], tol: f64) -> Option<PhenomenonReport> {
    let first_dead = records.iter().position(|r| r.error.is_none() && r.capacity() <= tol)?;
    let hit = &records[first_dead];
    let (q, n) = (hit.q, hit.n);

    let (location, bracket) = if first_dead == 0 {
        (hit.p, None)
    } else {
        let value_at = |p: f64| -> f64 {
            match closed_form(config, p, q, n) {
                Ok(Some(cf)) => cf.value,
                _ => evaluate_point(config, p, q, n)
                    .map(|r| r.capacity_general)
                    .unwrap_or(f64::NAN),
            }
        };
        let mut lo = records[first_dead - 1].p;
        let mut hi = hit.p;
        while hi - lo > ROOT_WIDTH {
            let mid = 0.5 * (lo + hi);
            if value_at(mid) <= tol {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (hi, Some([lo, hi]))
    };

    let beyond: Vec<&SweepRecord> = records[first_dead..].iter().filter(|r| r.p > location).collect();
    let general_stays_dead = beyond.iter().all(|r| r.capacity_general <= tol);
    let deviation_flagged = beyond.iter().any(|r| r.deviation_flag);
    let lo = first_dead.saturating_sub(2);
    let hi = (first_dead + 3).min(records.len());

    Some(PhenomenonReport {
        kind: PhenomenonKind::SuddenDeath,
        channel: config.channel,
        location,
        bracket,
        value: hit.capacity(),
        general_stays_dead: Some(general_stays_dead),
        deviation_flagged: Some(deviation_flagged),
        tolerance: tol,
        evidence: records[lo..hi].iter().map(EvidencePoint::from).collect(),
    })
}

/// Frozen asymptote of a sweep over `n` at one `(p, q)`: reported when every
/// general capacity with `n ≥ n_max/2` lies within `tol` of `C(n_max)`.
/// The comparison point is the record at `n_max/2`, or the largest `n`
/// below it.
pub fn detect_frozen(records: &[SweepRecord], tol: f64) -> Option<PhenomenonReport> {
    let valid: Vec<&SweepRecord> = records.iter().filter(|r| r.error.is_none()).collect();
    let last = *valid.iter().max_by_key(|r| r.n)?;
    let half = last.n / 2;
    let reference = valid.iter().filter(|r| r.n <= half).max_by_key(|r| r.n)?;
    let tail: Vec<&&SweepRecord> = valid.iter().filter(|r| r.n >= reference.n).collect();
    let asymptote = last.capacity_general;
    if !tail.iter().all(|r| (r.capacity_general - asymptote).abs() <= tol) {
        return None;
    }
    Some(PhenomenonReport {
        kind: PhenomenonKind::Frozen,
        channel: last.channel,
        location: last.n as f64,
        bracket: None,
        value: asymptote,
        general_stays_dead: None,
        deviation_flagged: None,
        tolerance: tol,
        evidence: tail.iter().map(|r| EvidencePoint::from(**r)).collect(),
    })
}

/// Runs both detectors on every 1-D slice of a sweep: sudden death along
/// `p` for each `(q, n)`, frozen along `n` for each `(p, q)` with at least
/// two pass counts.
pub fn detect_phenomena(config: &SweepConfig, records: &[SweepRecord]) -> Vec<PhenomenonReport> {
    let mut reports = Vec::new();
    let qs: Vec<Option<f64>> = match &config.q_grid {
        Some(grid) => grid.iter().copied().map(Some).collect(),
        None => vec![None],
    };
    for &q in &qs {
        for &n in &config.n_list {
            let slice: Vec<SweepRecord> = records.iter().filter(|r| r.q == q && r.n == n).cloned().collect();
            if slice.len() >= 2 {
                reports.extend(detect_sudden_death(config, &slice, SUDDEN_DEATH_TOL));
            }
        }
    }
    if config.n_list.len() >= 2 {
        for &p in &config.p_grid {
            for &q in &qs {
                let slice: Vec<SweepRecord> = records.iter().filter(|r| r.p == p && r.q == q).cloned().collect();
                reports.extend(detect_frozen(&slice, FROZEN_TOL));
            }
        }
    }
    reports
}

/// One randomized cross-check case.
#[derive(Debug, Clone, PartialEq)]
pub struct Trial {
    pub coefficients: BellCoefficients,
    pub hamiltonian: BatteryHamiltonian,
    pub kind: ChannelKind,
    pub p: f64,
    pub q: f64,
    pub n: u32,
    /// Generic (non-Bell-diagonal) state for the channel-property checks.
    pub probe: Option<TwoQubitState>,
}

impl Trial {
    /// `c = 0`, `p = q = 0`, one bit-flip pass: every deviation is exactly 0.
    pub fn identity() -> Self {
        Self {
            coefficients: BellCoefficients::new_unchecked(0.0, 0.0, 0.0),
            hamiltonian: BatteryHamiltonian::new(0.6, 0.3).expect("valid"),
            kind: ChannelKind::BitFlip,
            p: 0.0,
            q: 0.0,
            n: 1,
            probe: None,
        }
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let coefficients = random_bell_coefficients(rng);
        let eps_a: f64 = rng.random_range(0.0..2.0);
        let eps_b: f64 = rng.random_range(0.0..=eps_a);
        Self {
            coefficients,
            hamiltonian: BatteryHamiltonian::new(eps_a, eps_b).expect("ordered"),
            kind: ChannelKind::ALL[rng.random_range(0..ChannelKind::ALL.len())],
            p: rng.random(),
            q: rng.random(),
            n: rng.random_range(1..=12),
            probe: Some(random_density(rng)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CategoryResult {
    pub max_deviation: f64,
    pub tolerance: f64,
    pub samples: usize,
}

impl CategoryResult {
    pub fn passed(&self) -> bool {
        self.max_deviation <= self.tolerance
    }
}

/// Per-category maximum deviations of a cross-check run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrosscheckReport {
    pub trials: usize,
    pub categories: BTreeMap<String, CategoryResult>,
}

impl CrosscheckReport {
    pub fn passed(&self) -> bool {
        self.categories.values().all(CategoryResult::passed)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.categories
            .iter()
            .filter(|(_, r)| !r.passed())
            .map(|(k, _)| k.as_str())
            .collect()
    }

    /// Largest deviation over categories whose name starts with `prefix`.
    pub fn max_over(&self, prefix: &str) -> f64 {
        self.categories
            .iter()
            .filter(|(k, _)| k.starts_with(prefix))
            .map(|(_, r)| r.max_deviation)
            .fold(0.0, f64::max)
    }

    fn record(&mut self, category: String, deviation: f64, tolerance: f64) {
        let entry = self.categories.entry(category).or_insert(CategoryResult {
            max_deviation: 0.0,
            tolerance,
            samples: 0,
        });
        entry.samples += 1;
        // NaN must register as a failure
        if deviation.is_nan() || deviation > entry.max_deviation {
            entry.max_deviation = if deviation.is_nan() { f64::INFINITY } else { deviation };
        }
    }
}

fn coeff_deviation(closed: &Result<BellCoefficients>, brute: &TwoQubitState) -> f64 {
    match (closed, extract_coefficients(brute)) {
        (Ok(a), Ok(b)) => a.max_abs_diff(&b),
        _ => f64::INFINITY,
    }
}

fn spectrum_deviation(mut closed: [f64; 4], numeric: Result<[f64; 4]>) -> f64 {
    closed.sort_by(f64::total_cmp);
    match numeric {
        Ok(v) => closed.iter().zip(v).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max),
        Err(_) => f64::INFINITY,
    }
}

fn general_capacity(rho: &TwoQubitState, h: &BatteryHamiltonian) -> f64 {
    rho.eigenvalues()
        .map(|v| capacity_from_eigenvalues(v, h))
        .unwrap_or(f64::NAN)
}

fn check_trial(trial: &Trial, table: &dyn CoefficientTable, report: &mut CrosscheckReport) -> Result<()> {
    let Trial {
        coefficients: c,
        hamiltonian: h,
        kind,
        p,
        q,
        n,
        ..
    } = trial;
    let (kind, p, q, n) = (*kind, *p, *q, *n);
    let rho = bell_density(c)?;
    let label = kind.label();

    if kind.preserves_bell_form() {
        let pass = tabulated_pass(kind, p)?;
        let once = pass.apply(&rho);
        let many = apply_n_times(&rho, &pass, n);
        report.record(
            format!("map/one/{label}"),
            coeff_deviation(&table.coeff_map(kind, c, p, None, 1, Sides::One), &once),
            ORACLE_TOL,
        );
        let mapped = table.coeff_map(kind, c, p, None, n, Sides::One);
        report.record(
            format!("map/one-iterated/{label}"),
            coeff_deviation(&mapped, &many),
            ORACLE_TOL,
        );
        if let Ok(mapped) = mapped {
            if let Some(branch) = select_branch(&mapped) {
                let dev = (branch.formula(&mapped, h) - general_capacity(&many, h)).abs();
                report.record("capacity/branch".into(), dev, ORACLE_TOL);
            }
        }

        if kind.supports_two_sided() {
            let pass = two_sided_pass(kind, p, q)?;
            let once = pass.apply(&rho);
            let many = apply_n_times(&rho, &pass, n);
            report.record(
                format!("map/two/{label}"),
                coeff_deviation(&table.coeff_map(kind, c, p, Some(q), 1, Sides::Two), &once),
                ORACLE_TOL,
            );
            report.record(
                format!("map/two-iterated/{label}"),
                coeff_deviation(&table.coeff_map(kind, c, p, Some(q), n, Sides::Two), &many),
                ORACLE_TOL,
            );
        }
    } else {
        let brute = apply_n_times(&rho, &LocalChannel::First(kraus_set(kind, p)?), n);
        let closed = adc_output(c, p, n)?;
        report.record(
            "adc/matrix".into(),
            closed.matrix().max_abs_diff(brute.matrix()),
            ORACLE_TOL,
        );
        report.record(
            "adc/spectrum".into(),
            spectrum_deviation(adc_spectrum(c, p, n)?, brute.eigenvalues()),
            SPECTRUM_TOL,
        );
        if adc_ordering(c, p, n, false).is_some() {
            let (value, _) = capacity_adc_closed(c, h, p, n)?;
            report.record(
                "capacity/adc".into(),
                (value - general_capacity(&brute, h)).abs(),
                ORACLE_TOL,
            );
        }
    }

    let ka = kraus_set(kind, p)?;
    let kb = kraus_set(kind, q)?;
    report.record("cptp/completeness".into(), ka.completeness_defect(), ORACLE_TOL);
    report.record("cptp/completeness".into(), kb.completeness_defect(), ORACLE_TOL);
    let mut inputs = vec![rho];
    inputs.extend(trial.probe.clone());
    for input in &inputs {
        for out in [apply_one_sided(input, &ka), apply_two_sided(input, &ka, &kb)] {
            let m = out.matrix();
            let tr = m.trace();
            report.record("cptp/trace".into(), (tr.re - 1.0).abs().max(tr.im.abs()), ORACLE_TOL);
            report.record("cptp/hermiticity".into(), m.hermiticity_defect(), ORACLE_TOL);
            let negativity = match out.eigenvalues() {
                Ok(v) => (-v[0]).max(0.0),
                Err(_) => f64::INFINITY,
            };
            report.record("cptp/positivity".into(), negativity, SPECTRUM_TOL);
        }
    }
    Ok(())
}

/// Cross-checks an explicit list of trials against `table`.
pub fn crosscheck_trials(trials: &[Trial], table: &dyn CoefficientTable) -> CrosscheckReport {
    let partials: Vec<CrosscheckReport> = trials
        .par_iter()
        .map(|t| {
            let mut r = CrosscheckReport {
                trials: 1,
                categories: BTreeMap::new(),
            };
            if check_trial(t, table, &mut r).is_err() {
                r.record("harness/errors".into(), 1.0, 0.0);
            }
            r
        })
        .collect();

    let mut report = CrosscheckReport {
        trials: trials.len(),
        categories: BTreeMap::new(),
    };
    for partial in partials {
        for (name, result) in partial.categories {
            let entry = report.categories.entry(name).or_insert(CategoryResult {
                max_deviation: 0.0,
                tolerance: result.tolerance,
                samples: 0,
            });
            entry.samples += result.samples;
            entry.max_deviation = entry.max_deviation.max(result.max_deviation);
        }
    }
    report
}

/// Seeded random trials.
pub fn random_trials(seed: u64, trials: usize) -> Vec<Trial> {
    let mut rng = rng_from_seed(seed);
    (0..trials).map(|_| Trial::random(&mut rng)).collect()
}

/// Compares every closed form with brute-force evolution over `trials`
/// seeded random cases.
pub fn oracle_crosscheck(seed: u64, trials: usize) -> Result<CrosscheckReport> {
    oracle_crosscheck_with(seed, trials, &StandardTables)
}

pub fn oracle_crosscheck_with(seed: u64, trials: usize, table: &dyn CoefficientTable) -> Result<CrosscheckReport> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    Ok(crosscheck_trials(&random_trials(seed, trials), table))
}

/// Standard tables with the one-sided bit-flip row planted wrong: `c₃`
/// decays as `(1−p)ⁿ` instead of `(1−p)²ⁿ`. Used as a negative control.
#[derive(Debug, Clone, Copy, Default)]
pub struct CorruptedBitFlipTable;

impl CoefficientTable for CorruptedBitFlipTable {
    fn coeff_map(
        &self,
        kind: ChannelKind,
        c: &BellCoefficients,
        p: f64,
        q: Option<f64>,
        n: u32,
        sides: Sides,
    ) -> Result<BellCoefficients> {
        let good = crate::channels::coeff_map(kind, c, p, q, n, sides)?;
        if kind == ChannelKind::BitFlip && sides == Sides::One {
            let wrong = c.c3 * (1.0 - p).powi(n as i32);
            return Ok(BellCoefficients::new_unchecked(good.c1, good.c2, wrong));
        }
        Ok(good)
    }
}
