//! Independent single-qubit noise.
//!
//! Three models are supported: Pauli channels, bounded random unitaries of the
//! general one-qubit form, and linear-in-time drift. Decoherence is never
//! represented as a mixed state; it appears only as the spread of outcomes
//! across sampled unitaries.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{arg, Result};
use crate::statevec::{Matrix2, PureState, Register};

/// `[[cos θ, sin θ·e^{iφ}], [−sin θ·e^{iη}, cos θ·e^{i(φ+η)}]]`, the general
/// one-qubit unitary with the overall phase dropped.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SingleQubitUnitary {
    pub theta: f64,
    pub phi: f64,
    pub eta: f64,
}

impl SingleQubitUnitary {
    pub fn new(theta: f64, phi: f64, eta: f64) -> Self {
        SingleQubitUnitary { theta, phi, eta }
    }

    pub fn identity() -> Self {
        Self::default()
    }

    pub fn matrix(&self) -> Matrix2 {
        let (s, c) = self.theta.sin_cos();
        let e = |x: f64| Complex64::from_polar(1.0, x);
        Matrix2([
            [Complex64::new(c, 0.0), e(self.phi) * s],
            [-e(self.eta) * s, e(self.phi + self.eta) * c],
        ])
    }

    /// Largest angle magnitude.
    pub fn max_angle(&self) -> f64 {
        self.theta.abs().max(self.phi.abs()).max(self.eta.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PauliOp {
    I,
    X,
    Y,
    Z,
}

impl PauliOp {
    pub const ALL: [PauliOp; 4] = [PauliOp::I, PauliOp::X, PauliOp::Y, PauliOp::Z];

    pub fn matrix(self) -> Matrix2 {
        match self {
            PauliOp::I => Matrix2::IDENTITY,
            PauliOp::X => Matrix2::X,
            PauliOp::Y => Matrix2::Y,
            PauliOp::Z => Matrix2::Z,
        }
    }

    /// Has a bit-flip component (X or Y).
    pub fn flips_bit(self) -> bool {
        matches!(self, PauliOp::X | PauliOp::Y)
    }

    /// Has a phase-flip component (Z or Y).
    pub fn flips_phase(self) -> bool {
        matches!(self, PauliOp::Z | PauliOp::Y)
    }

    pub fn symbol(self) -> char {
        match self {
            PauliOp::I => 'I',
            PauliOp::X => 'X',
            PauliOp::Y => 'Y',
            PauliOp::Z => 'Z',
        }
    }
}

/// Renders a pattern qubit 0 first, e.g. `"XIIZ"`.
pub fn pattern_string(pattern: &[PauliOp]) -> String {
    pattern.iter().map(|p| p.symbol()).collect()
}

/// Per-qubit Pauli channel: X, Y, Z with the given probabilities, else I.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PauliChannel {
    pub px: f64,
    pub py: f64,
    pub pz: f64,
}

impl PauliChannel {
    pub fn new(px: f64, py: f64, pz: f64) -> Result<Self> {
        let ch = PauliChannel { px, py, pz };
        ch.validate()?;
        Ok(ch)
    }

    /// `px = py = pz = p`.
    pub fn symmetric(p: f64) -> Result<Self> {
        Self::new(p, p, p)
    }

    pub fn validate(&self) -> Result<()> {
        let probs = [self.px, self.py, self.pz];
        if probs.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return arg(format!("Pauli probabilities must be non-negative, got {probs:?}"));
        }
        let total = self.px + self.py + self.pz;
        if total > 1.0 + 1e-12 {
            return arg(format!("Pauli probabilities sum to {total} > 1"));
        }
        Ok(())
    }

    pub fn p_identity(&self) -> f64 {
        (1.0 - self.px - self.py - self.pz).max(0.0)
    }

    pub fn prob(&self, op: PauliOp) -> f64 {
        match op {
            PauliOp::I => self.p_identity(),
            PauliOp::X => self.px,
            PauliOp::Y => self.py,
            PauliOp::Z => self.pz,
        }
    }
}

/// Noise applied independently to every physical qubit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum NoiseModel {
    Pauli(PauliChannel),
    /// θ, φ, η each uniform on `[−chi, chi]`, fresh per qubit.
    RandomUnitary { chi: f64 },
    /// Angles `rate·duration` with per-qubit rates uniform on `[−w, w]`.
    Drift { w: f64, duration: f64 },
}

impl NoiseModel {
    pub fn validate(&self) -> Result<()> {
        match *self {
            NoiseModel::Pauli(ch) => ch.validate(),
            NoiseModel::RandomUnitary { chi } => check_chi(chi),
            NoiseModel::Drift { w, duration } => {
                if !(w.is_finite() && w >= 0.0 && duration.is_finite() && duration >= 0.0) {
                    return arg(format!("drift needs w ≥ 0 and duration ≥ 0, got w={w}, duration={duration}"));
                }
                warn_if_large_drift(w * duration);
                Ok(())
            }
        }
    }
}

fn check_chi(chi: f64) -> Result<()> {
    if !(chi.is_finite() && chi >= 0.0) {
        return arg(format!("chi must be a non-negative angle, got {chi}"));
    }
    Ok(())
}

pub(crate) fn warn_if_large_drift(angle: f64) {
    if angle >= FRAC_PI_2 {
        log::warn!("drift angle {angle:.3} rad is outside the small-angle regime (≥ π/2)");
    }
}

/// One categorical draw per qubit.
pub fn sample_pauli_pattern<R: Rng + ?Sized>(
    channel: &PauliChannel,
    num_qubits: usize,
    rng: &mut R,
) -> Result<Vec<PauliOp>> {
    channel.validate()?;
    let (x, xy, xyz) = (channel.px, channel.px + channel.py, channel.px + channel.py + channel.pz);
    Ok((0..num_qubits)
        .map(|_| {
            let u: f64 = rng.gen();
            if u < x {
                PauliOp::X
            } else if u < xy {
                PauliOp::Y
            } else if u < xyz {
                PauliOp::Z
            } else {
                PauliOp::I
            }
        })
        .collect())
}

/// Applies a Pauli string to a dense state in one pass.
///
/// With `Y = i·X·Z`, the string maps `|j⟩` to
/// `i^{#Y} (−1)^{|j ∧ z|} |j ⊕ x⟩`.
pub fn apply_pauli_dense(state: &mut PureState, pattern: &[PauliOp]) -> Result<()> {
    if pattern.len() != state.num_qubits() {
        return arg(format!(
            "pattern length {} does not match {} qubits",
            pattern.len(),
            state.num_qubits()
        ));
    }
    let (mut xmask, mut zmask, mut ys) = (0usize, 0usize, 0u32);
    for (q, op) in pattern.iter().enumerate() {
        if op.flips_bit() {
            xmask |= 1 << q;
        }
        if op.flips_phase() {
            zmask |= 1 << q;
        }
        if *op == PauliOp::Y {
            ys += 1;
        }
    }
    let global = Complex64::i().powu(ys % 4);
    let amps = state.amplitudes_mut();
    let old = amps.to_vec();
    for (j, a) in old.into_iter().enumerate() {
        let sign = if (j & zmask).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
        amps[j ^ xmask] = a * global * sign;
    }
    Ok(())
}

pub fn apply_pauli(register: &mut Register, pattern: &[PauliOp]) -> Result<()> {
    match register {
        Register::Dense(s) => apply_pauli_dense(s, pattern),
        Register::Factored(_) => {
            if pattern.len() != register.num_qubits() {
                return arg(format!(
                    "pattern length {} does not match {} qubits",
                    pattern.len(),
                    register.num_qubits()
                ));
            }
            for (q, op) in pattern.iter().enumerate() {
                if *op != PauliOp::I {
                    register.apply_1q(&op.matrix(), q)?;
                }
            }
            Ok(())
        }
    }
}

/// θ, φ, η i.i.d. uniform on `[−chi, chi]`.
pub fn sample_unitary<R: Rng + ?Sized>(chi: f64, rng: &mut R) -> Result<SingleQubitUnitary> {
    check_chi(chi)?;
    let mut draw = || rng.gen_range(-chi..=chi);
    Ok(SingleQubitUnitary::new(draw(), draw(), draw()))
}

/// Per-qubit angular rates `(θ̇, φ̇, η̇)`, fixed for the lifetime of one trial.
#[derive(Debug, Clone, PartialEq)]
pub struct DriftRates {
    rates: Vec<[f64; 3]>,
}

impl DriftRates {
    /// Every rate uniform on `[−w_max, w_max]`.
    pub fn sample<R: Rng + ?Sized>(w_max: f64, num_qubits: usize, rng: &mut R) -> Result<Self> {
        if !(w_max.is_finite() && w_max >= 0.0) {
            return arg(format!("w_max must be non-negative, got {w_max}"));
        }
        let rates = (0..num_qubits)
            .map(|_| {
                let mut r = [0.0; 3];
                r.iter_mut().for_each(|x| *x = rng.gen_range(-w_max..=w_max));
                r
            })
            .collect();
        Ok(DriftRates { rates })
    }

    /// The same rates on every qubit.
    pub fn uniform(rate: [f64; 3], num_qubits: usize) -> Self {
        DriftRates { rates: vec![rate; num_qubits] }
    }

    pub fn from_rates(rates: Vec<[f64; 3]>) -> Self {
        DriftRates { rates }
    }

    pub fn num_qubits(&self) -> usize {
        self.rates.len()
    }

    /// Per-qubit unitaries accumulated over a time step `dt`.
    pub fn unitaries(&self, dt: f64) -> Vec<SingleQubitUnitary> {
        self.rates
            .iter()
            .map(|r| SingleQubitUnitary::new(r[0] * dt, r[1] * dt, r[2] * dt))
            .collect()
    }

    pub fn apply(&self, register: &mut Register, dt: f64) -> Result<()> {
        if self.rates.len() != register.num_qubits() {
            return arg(format!(
                "drift covers {} qubits, register has {}",
                self.rates.len(),
                register.num_qubits()
            ));
        }
        for (q, u) in self.unitaries(dt).iter().enumerate() {
            register.apply_1q(&u.matrix(), q)?;
        }
        Ok(())
    }
}

pub fn apply_noise<R: Rng + ?Sized>(register: &mut Register, model: &NoiseModel, rng: &mut R) -> Result<()> {
    model.validate()?;
    let nq = register.num_qubits();
    match *model {
        NoiseModel::Pauli(ch) => {
            let pattern = sample_pauli_pattern(&ch, nq, rng)?;
            apply_pauli(register, &pattern)
        }
        NoiseModel::RandomUnitary { chi } => {
            for q in 0..nq {
                let u = sample_unitary(chi, rng)?;
                register.apply_1q(&u.matrix(), q)?;
            }
            Ok(())
        }
        NoiseModel::Drift { w, duration } => DriftRates::sample(w, nq, rng)?.apply(register, duration),
    }
}
