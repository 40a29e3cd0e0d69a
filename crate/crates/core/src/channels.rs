//! Single-qubit noise channels as Kraus sets, their operator-sum action
//! on two-qubit states, and the closed-form Bell-coefficient maps.
//!
//! Two notions of "one pass" coexist and are kept explicit:
//!
//! * [`apply_one_sided`] is the literal `Σₖ (Eₖ⊗I) ρ (Eₖ⊗I)†`.
//! * [`tabulated_pass`] is the evolution whose coefficient map the one-sided
//!   tables list. For bit flip, phase flip, bit-phase flip and generalized
//!   amplitude damping the tabulated rows (e.g. `c₂(1−p)²` for bit flip)
//!   are produced by `Σᵢⱼ (Eᵢ⊗Eⱼ) ρ (Eᵢ⊗Eⱼ)†`, which on Bell-diagonal
//!   inputs equals two passes of the channel on the first qubit. The
//!   depolarizing row `cᵢ(1−4p/3)` and the amplitude-damping output are a
//!   single `Eₖ⊗I` pass.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::linalg::{kron, pauli, ComplexMatrix};
use crate::model::{BellCoefficients, TwoQubitState};
use crate::{Error, Result};

/// Tolerance of `Σₖ Eₖ†Eₖ = I`.
pub const COMPLETENESS_TOL: f64 = 1e-12;

/// Mixing probability of the generalized amplitude damping channel in its
/// Bell-form-preserving variant.
pub const GAD_MIXING: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ChannelKind {
    #[serde(rename = "bf")]
    BitFlip,
    #[serde(rename = "pf")]
    PhaseFlip,
    #[serde(rename = "bpf")]
    BitPhaseFlip,
    #[serde(rename = "dep")]
    Depolarizing,
    #[serde(rename = "gad")]
    GeneralizedAmplitudeDamping,
    #[serde(rename = "adc")]
    AmplitudeDamping,
}

impl ChannelKind {
    pub const ALL: [ChannelKind; 6] = [
        ChannelKind::BitFlip,
        ChannelKind::PhaseFlip,
        ChannelKind::BitPhaseFlip,
        ChannelKind::Depolarizing,
        ChannelKind::GeneralizedAmplitudeDamping,
        ChannelKind::AmplitudeDamping,
    ];

    pub fn label(self) -> &'static str {
        match self {
            ChannelKind::BitFlip => "bf",
            ChannelKind::PhaseFlip => "pf",
            ChannelKind::BitPhaseFlip => "bpf",
            ChannelKind::Depolarizing => "dep",
            ChannelKind::GeneralizedAmplitudeDamping => "gad",
            ChannelKind::AmplitudeDamping => "adc",
        }
    }

    /// Whether the channel maps Bell-diagonal states to Bell-diagonal states.
    pub fn preserves_bell_form(self) -> bool {
        self != ChannelKind::AmplitudeDamping
    }

    /// Kinds with an independent two-qubit (`p` on A, `q` on B) table.
    pub fn supports_two_sided(self) -> bool {
        matches!(
            self,
            ChannelKind::BitFlip | ChannelKind::PhaseFlip | ChannelKind::BitPhaseFlip
        )
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ChannelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let kind = match s.to_ascii_lowercase().as_str() {
            "bf" | "bit-flip" | "bitflip" => ChannelKind::BitFlip,
            "pf" | "phase-flip" | "phaseflip" => ChannelKind::PhaseFlip,
            "bpf" | "bit-phase-flip" | "bitphaseflip" => ChannelKind::BitPhaseFlip,
            "dep" | "depolarizing" => ChannelKind::Depolarizing,
            "gad" | "generalized-amplitude-damping" => ChannelKind::GeneralizedAmplitudeDamping,
            "adc" | "amplitude-damping" => ChannelKind::AmplitudeDamping,
            _ => return Err(Error::InvalidArgument(format!("unknown channel {s:?}"))),
        };
        Ok(kind)
    }
}

/// Whether noise hits the first qubit only or both qubits independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sides {
    One,
    Two,
}

impl Sides {
    pub fn label(self) -> &'static str {
        match self {
            Sides::One => "one",
            Sides::Two => "two",
        }
    }
}

impl fmt::Display for Sides {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Sides {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "one" | "1" => Ok(Sides::One),
            "two" | "2" => Ok(Sides::Two),
            _ => Err(Error::InvalidArgument(format!("unknown sides {s:?}"))),
        }
    }
}

pub(crate) fn check_probability(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange { name, value })
    }
}

/// `base^n` by repeated squaring.
pub(crate) fn pow_by_squaring(base: f64, n: u32) -> f64 {
    let mut result = 1.0;
    let mut square = base;
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            result *= square;
        }
        e >>= 1;
        if e > 0 {
            square *= square;
        }
    }
    result
}

/// Single-qubit Kraus operators with their channel label and parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausSet {
    operators: Vec<ComplexMatrix>,
    kind: ChannelKind,
    parameters: BTreeMap<String, f64>,
}

impl KrausSet {
    pub fn new(operators: Vec<ComplexMatrix>, kind: ChannelKind, parameters: BTreeMap<String, f64>) -> Result<Self> {
        if operators.is_empty() || operators.iter().any(|e| e.rows() != 2 || e.cols() != 2) {
            return Err(Error::DimensionMismatch {
                expected: "non-empty list of 2x2 operators".into(),
                found: format!("{} operators", operators.len()),
            });
        }
        Ok(Self {
            operators,
            kind,
            parameters,
        })
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn kind(&self) -> ChannelKind {
        self.kind
    }

    pub fn parameters(&self) -> &BTreeMap<String, f64> {
        &self.parameters
    }

    /// `max |Σₖ Eₖ†Eₖ − I|` entrywise.
    pub fn completeness_defect(&self) -> f64 {
        let mut sum = ComplexMatrix::zeros(2, 2);
        for e in &self.operators {
            sum = &sum + &(&e.adjoint() * e);
        }
        sum.max_abs_diff(&ComplexMatrix::identity(2))
    }

    pub fn is_complete(&self) -> bool {
        self.completeness_defect() <= COMPLETENESS_TOL
    }
}

fn real2(entries: [f64; 4]) -> ComplexMatrix {
    ComplexMatrix::from_real(2, 2, &entries).expect("2x2")
}

fn params(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

/// Kraus operators of each channel at decoherence probability `p`.
///
/// * Pauli flips: `√(1−p/2) I`, `√(p/2) σ` with `σ₁`, `σ₃`, `σ₂` for bit,
///   phase and bit-phase flip.
/// * Depolarizing: `√(1−p) I`, `√(p/3) σ₁,₂,₃`.
/// * Generalized amplitude damping at mixing ½ with damping `p`.
/// * Amplitude damping: `diag(1, √(1−p))`, `√p |0⟩⟨1|`.
pub fn kraus_set(kind: ChannelKind, p: f64) -> Result<KrausSet> {
    check_probability("p", p)?;
    let flip = |sigma: ComplexMatrix| {
        KrausSet::new(
            vec![
                pauli::identity().scale((1.0 - p / 2.0).sqrt()),
                sigma.scale((p / 2.0).sqrt()),
            ],
            kind,
            params(&[("p", p)]),
        )
    };
    match kind {
        ChannelKind::BitFlip => flip(pauli::sigma1()),
        ChannelKind::PhaseFlip => flip(pauli::sigma3()),
        ChannelKind::BitPhaseFlip => flip(pauli::sigma2()),
        ChannelKind::Depolarizing => {
            let w = (p / 3.0).sqrt();
            KrausSet::new(
                vec![
                    pauli::identity().scale((1.0 - p).sqrt()),
                    pauli::sigma1().scale(w),
                    pauli::sigma2().scale(w),
                    pauli::sigma3().scale(w),
                ],
                kind,
                params(&[("p", p)]),
            )
        }
        ChannelKind::GeneralizedAmplitudeDamping => generalized_amplitude_damping(GAD_MIXING, p),
        ChannelKind::AmplitudeDamping => KrausSet::new(
            vec![
                real2([1.0, 0.0, 0.0, (1.0 - p).sqrt()]),
                real2([0.0, p.sqrt(), 0.0, 0.0]),
            ],
            kind,
            params(&[("p", p)]),
        ),
    }
}

/// Generalized amplitude damping with arbitrary mixing probability and
/// damping `gamma`. Only mixing ½ preserves the Bell-diagonal form.
pub fn generalized_amplitude_damping(mixing: f64, gamma: f64) -> Result<KrausSet> {
    check_probability("mixing", mixing)?;
    check_probability("gamma", gamma)?;
    let a = mixing.sqrt();
    let b = (1.0 - mixing).sqrt();
    let keep = (1.0 - gamma).sqrt();
    let jump = gamma.sqrt();
    KrausSet::new(
        vec![
            real2([a, 0.0, 0.0, a * keep]),
            real2([0.0, a * jump, 0.0, 0.0]),
            real2([b * keep, 0.0, 0.0, b]),
            real2([0.0, 0.0, b * jump, 0.0]),
        ],
        ChannelKind::GeneralizedAmplitudeDamping,
        params(&[("mixing", mixing), ("gamma", gamma)]),
    )
}

/// A local channel on two qubits: Kraus set on the first qubit only, or
/// independent Kraus sets on both.
#[derive(Debug, Clone, PartialEq)]
pub enum LocalChannel {
    First(KrausSet),
    Both(KrausSet, KrausSet),
}

impl LocalChannel {
    /// The 4×4 Kraus operators `Eₖ⊗I` or `Eᵢ⊗Eⱼ`.
    pub fn two_qubit_operators(&self) -> Vec<ComplexMatrix> {
        match self {
            LocalChannel::First(k) => {
                let id = pauli::identity();
                k.operators().iter().map(|e| kron(e, &id)).collect()
            }
            LocalChannel::Both(ka, kb) => ka
                .operators()
                .iter()
                .flat_map(|ea| kb.operators().iter().map(move |eb| kron(ea, eb)))
                .collect(),
        }
    }

    pub fn apply(&self, rho: &TwoQubitState) -> TwoQubitState {
        apply_operators(&self.two_qubit_operators(), rho)
    }
}

fn apply_operators(ops: &[ComplexMatrix], rho: &TwoQubitState) -> TwoQubitState {
    let adjoints: Vec<ComplexMatrix> = ops.iter().map(ComplexMatrix::adjoint).collect();
    apply_with_adjoints(ops, &adjoints, rho)
}

fn apply_with_adjoints(ops: &[ComplexMatrix], adjoints: &[ComplexMatrix], rho: &TwoQubitState) -> TwoQubitState {
    let mut out = ComplexMatrix::zeros(4, 4);
    for (k, k_dag) in ops.iter().zip(adjoints) {
        out += &(&(k * rho.matrix()) * k_dag);
    }
    TwoQubitState::from_matrix_unchecked(out)
}

/// `Σₖ (Eₖ⊗I) ρ (Eₖ⊗I)†`.
pub fn apply_one_sided(rho: &TwoQubitState, k: &KrausSet) -> TwoQubitState {
    LocalChannel::First(k.clone()).apply(rho)
}

/// `Σᵢⱼ (Eᵢᴬ⊗Eⱼᴮ) ρ (Eᵢᴬ⊗Eⱼᴮ)†`.
pub fn apply_two_sided(rho: &TwoQubitState, ka: &KrausSet, kb: &KrausSet) -> TwoQubitState {
    LocalChannel::Both(ka.clone(), kb.clone()).apply(rho)
}

/// `n`-fold composition of a local channel, applied in sequence.
pub fn apply_n_times(rho: &TwoQubitState, channel: &LocalChannel, n: u32) -> TwoQubitState {
    let ops = channel.two_qubit_operators();
    let adjoints: Vec<ComplexMatrix> = ops.iter().map(ComplexMatrix::adjoint).collect();
    let mut state = rho.clone();
    for _ in 0..n {
        state = apply_with_adjoints(&ops, &adjoints, &state);
    }
    state
}

/// The evolution behind one pass of a one-sided coefficient-table row (see
/// the module docs).
pub fn tabulated_pass(kind: ChannelKind, p: f64) -> Result<LocalChannel> {
    let k = kraus_set(kind, p)?;
    Ok(match kind {
        ChannelKind::Depolarizing | ChannelKind::AmplitudeDamping => LocalChannel::First(k),
        _ => LocalChannel::Both(k.clone(), k),
    })
}

/// The evolution behind one pass of a two-sided table row: the channel with
/// `p` on the first qubit and `q` on the second.
pub fn two_sided_pass(kind: ChannelKind, p: f64, q: f64) -> Result<LocalChannel> {
    if !kind.supports_two_sided() {
        return Err(Error::UnsupportedCombination(format!(
            "two-sided {kind} has no coefficient table"
        )));
    }
    Ok(LocalChannel::Both(kraus_set(kind, p)?, kraus_set(kind, q)?))
}

/// Closed-form Bell coefficients after `n` passes.
///
/// One-sided (`q = None`), with `f = (1−p)^{2n}`, `d = (1−4p/3)ⁿ`,
/// `g = (1−p)ⁿ`:
///
/// | kind | c₁′ | c₂′ | c₃′ |
/// |------|-----|-----|-----|
/// | bf   | c₁  | c₂f | c₃f |
/// | pf   | c₁f | c₂f | c₃  |
/// | bpf  | c₁f | c₂  | c₃f |
/// | dep  | c₁d | c₂d | c₃d |
/// | gad  | c₁g | c₂g | c₃g² |
///
/// Two-sided (bf, pf, bpf only) replaces `f` by `(1−p)ⁿ(1−q)ⁿ`.
pub fn coeff_map(
    kind: ChannelKind,
    c: &BellCoefficients,
    p: f64,
    q: Option<f64>,
    n: u32,
    sides: Sides,
) -> Result<BellCoefficients> {
    check_probability("p", p)?;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    c.check_physical()?;
    let BellCoefficients { c1, c2, c3 } = *c;

    let flip_factor = match (sides, q) {
        (Sides::One, None) => {
            if !kind.preserves_bell_form() {
                return Err(Error::UnsupportedCombination(format!(
                    "{kind} leaves the Bell-diagonal family; use adc_output"
                )));
            }
            pow_by_squaring(1.0 - p, 2 * n)
        }
        (Sides::Two, Some(q)) => {
            check_probability("q", q)?;
            if !kind.supports_two_sided() {
                return Err(Error::UnsupportedCombination(format!(
                    "two-sided {kind} has no coefficient table"
                )));
            }
            pow_by_squaring(1.0 - p, n) * pow_by_squaring(1.0 - q, n)
        }
        (Sides::One, Some(_)) => return Err(Error::UnsupportedCombination("q given for a one-sided map".into())),
        (Sides::Two, None) => return Err(Error::UnsupportedCombination("two-sided map needs q".into())),
    };

    let mapped = match kind {
        ChannelKind::BitFlip => [c1, c2 * flip_factor, c3 * flip_factor],
        ChannelKind::PhaseFlip => [c1 * flip_factor, c2 * flip_factor, c3],
        ChannelKind::BitPhaseFlip => [c1 * flip_factor, c2, c3 * flip_factor],
        ChannelKind::Depolarizing => {
            let d = pow_by_squaring(1.0 - 4.0 * p / 3.0, n);
            [c1 * d, c2 * d, c3 * d]
        }
        ChannelKind::GeneralizedAmplitudeDamping => {
            let g = pow_by_squaring(1.0 - p, n);
            [c1 * g, c2 * g, c3 * flip_factor]
        }
        ChannelKind::AmplitudeDamping => unreachable!("rejected above"),
    };
    Ok(BellCoefficients::new_unchecked(mapped[0], mapped[1], mapped[2]))
}

/// Coefficient tables as a swappable object, so verification harnesses can
/// run against deliberately corrupted variants.
pub trait CoefficientTable: Sync {
    fn coeff_map(
        &self,
        kind: ChannelKind,
        c: &BellCoefficients,
        p: f64,
        q: Option<f64>,
        n: u32,
        sides: Sides,
    ) -> Result<BellCoefficients>;
}

/// The tables implemented by [`coeff_map`].
#[derive(Debug, Clone, Copy, Default)]
pub struct StandardTables;

impl CoefficientTable for StandardTables {
    fn coeff_map(
        &self,
        kind: ChannelKind,
        c: &BellCoefficients,
        p: f64,
        q: Option<f64>,
        n: u32,
        sides: Sides,
    ) -> Result<BellCoefficients> {
        coeff_map(kind, c, p, q, n, sides)
    }
}

/// `(1−p)ⁿ`, the surviving excited-state weight after `n` damping passes.
pub fn adc_damping_factor(p: f64, n: u32) -> f64 {
    pow_by_squaring(1.0 - p, n)
}

/// Closed-form state after `n` amplitude-damping passes on the first qubit:
///
/// ```text
///        ⎛ 2−(1−c₃)x      0           0        (c₁−c₂)√x ⎞
///  1/4 · ⎜    0       2−(1+c₃)x   (c₁+c₂)√x       0      ⎟
///        ⎜    0       (c₁+c₂)√x   (1−c₃)x         0      ⎟
///        ⎝ (c₁−c₂)√x      0           0        (1+c₃)x   ⎠
/// ```
/// with `x = (1−p)ⁿ`.
pub fn adc_output(c: &BellCoefficients, p: f64, n: u32) -> Result<TwoQubitState> {
    check_probability("p", p)?;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    c.check_physical()?;
    let BellCoefficients { c1, c2, c3 } = *c;
    let x = adc_damping_factor(p, n);
    let r = x.sqrt();
    let corner = (c1 - c2) * r / 4.0;
    let middle = (c1 + c2) * r / 4.0;
    #[rustfmt::skip]
    let entries = [
        (2.0 - (1.0 - c3) * x) / 4.0, 0.0, 0.0, corner,
        0.0, (2.0 - (1.0 + c3) * x) / 4.0, middle, 0.0,
        0.0, middle, (1.0 - c3) * x / 4.0, 0.0,
        corner, 0.0, 0.0, (1.0 + c3) * x / 4.0,
    ];
    let m = ComplexMatrix::from_entries(4, 4, entries.iter().map(|&v| Complex64::new(v, 0.0)).collect())?;
    Ok(TwoQubitState::from_matrix_unchecked(m))
}

/// Differences between the amplitude-damped eigenvalues, each in a form
/// free of cancellation for small `(1−p)ⁿ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdcGaps {
    pub u2_minus_u0: f64,
    pub u3_minus_u2: f64,
    pub u3_minus_u1: f64,
    pub u1_minus_u2: f64,
    pub u1_minus_u0: f64,
}

struct AdcRoots {
    x: f64,
    s_plus: f64,
    s_minus: f64,
}

fn adc_roots(c: &BellCoefficients, p: f64, n: u32) -> AdcRoots {
    let x = adc_damping_factor(p, n);
    let decay = 1.0 - x;
    AdcRoots {
        x,
        s_plus: ((c.c1 + c.c2).powi(2) * x + decay * decay).sqrt(),
        s_minus: ((c.c1 - c.c2).powi(2) * x + decay * decay).sqrt(),
    }
}

pub fn adc_gaps(c: &BellCoefficients, p: f64, n: u32) -> AdcGaps {
    let AdcRoots { x, s_plus, s_minus } = adc_roots(c, p, n);
    let sum = s_plus + s_minus;
    // s₊ − s₋ = ((c₁+c₂)² − (c₁−c₂)²) x / (s₊ + s₋)
    let diff = if sum > 0.0 { 4.0 * c.c1 * c.c2 * x / sum } else { 0.0 };
    let c3x = 2.0 * c.c3 * x;
    AdcGaps {
        u2_minus_u0: (c3x + diff) / 4.0,
        u3_minus_u2: s_minus / 2.0,
        u3_minus_u1: (c3x - diff) / 4.0,
        u1_minus_u2: (-c3x + sum) / 4.0,
        u1_minus_u0: s_plus / 2.0,
    }
}

/// `(u₀, u₁, u₂, u₃)`, the eigenvalues of [`adc_output`]:
/// `u₀,₁ = ¼(1 − c₃x ∓ s₊)`, `u₂,₃ = ¼(1 + c₃x ∓ s₋)`.
/// The small roots are evaluated as `(a² − s²)/(a + s)`.
pub fn adc_spectrum(c: &BellCoefficients, p: f64, n: u32) -> Result<[f64; 4]> {
    check_probability("p", p)?;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    c.check_physical()?;
    let AdcRoots { x, s_plus, s_minus } = adc_roots(c, p, n);
    let BellCoefficients { c1, c2, c3 } = *c;
    let a_low = 1.0 - c3 * x;
    let a_high = 1.0 + c3 * x;
    let tail = x * x * (c3 * c3 - 1.0);
    let small = |a: f64, s: f64, numerator: f64| {
        if a + s > 0.0 {
            numerator / (a + s) / 4.0
        } else {
            0.0
        }
    };
    let u0 = small(a_low, s_plus, x * (2.0 - 2.0 * c3 - (c1 + c2).powi(2)) + tail);
    let u2 = small(a_high, s_minus, x * (2.0 + 2.0 * c3 - (c1 - c2).powi(2)) + tail);
    let u1 = (a_low + s_plus) / 4.0;
    let u3 = (a_high + s_minus) / 4.0;
    Ok([u0, u1, u2, u3])
}
