//! Decoding: projection onto the codespace, syndrome correction, and the
//! hybrid reduce-or-correct decoder.
//!
//! The projection never materializes a `2^N × 2^N` projector. Its two
//! amplitudes `⟨0_RUR|ψ⟩` and `⟨1_RUR|ψ⟩` are read off the `2^n` basis states
//! in the codeword support (dense backend) or from per-block overlaps with
//! `(|0…0⟩ ± |1…1⟩)/√2` (factored backend).
//!
//! Syndrome correction works on an effective register. Measuring the
//! block-internal `Z_i Z_j` parities and undoing the minority flips leaves each
//! block in `span{|0…0⟩, |1…1⟩}`, i.e. one effective qubit per block. A
//! Hadamard on every effective qubit turns the cross-block `X^⊗n X^⊗n`
//! parities into ordinary repetition parities, so the phase layer is decoded
//! the same way.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::codes::{codeword_support, CodeParams, LogicalQubit};
use crate::error::{arg, Error, Result};
use crate::statevec::{FactoredState, PureState, Register};

/// Projection weights below this are treated as an exact rejection.
pub const REJECT_TOL: f64 = 1e-14;

/// Branch probabilities below this are dropped from syndrome enumeration.
const BRANCH_EPS: f64 = 1e-30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DecodeStatus {
    Accepted,
    Rejected,
    Corrected,
}

/// Result of decoding one register.
///
/// For projection, `success_prob` is `|⟨0_RUR|ψ⟩|² + |⟨1_RUR|ψ⟩|²`. For
/// syndrome correction it is the total probability of the correctable
/// syndromes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecodeOutcome {
    pub status: DecodeStatus,
    pub success_prob: f64,
    pub decoded: Option<LogicalQubit>,
    pub syndrome_weight: Option<usize>,
}

impl DecodeOutcome {
    pub fn rejected(success_prob: f64) -> Self {
        DecodeOutcome { status: DecodeStatus::Rejected, success_prob, decoded: None, syndrome_weight: None }
    }

    pub fn is_accepted(&self) -> bool {
        self.status != DecodeStatus::Rejected
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    /// Always report the accepted branch and its probability.
    #[default]
    Expectation,
    /// Draw the projection outcome.
    Sampled,
}

impl std::str::FromStr for Decision {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "expectation" => Ok(Decision::Expectation),
            "sampled" => Ok(Decision::Sampled),
            other => arg(format!("unknown decision `{other}` (expected expectation|sampled)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum DecoderMode {
    /// Project onto the codespace, discard on failure.
    #[default]
    Reduce,
    /// Correct up to the maximum `(n−1)/2` errors per layer.
    Correct,
    /// Accept clean syndromes, correct up to `t'` errors, discard the rest.
    Hybrid,
}

impl std::str::FromStr for DecoderMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "reduce" => Ok(DecoderMode::Reduce),
            "correct" => Ok(DecoderMode::Correct),
            "hybrid" => Ok(DecoderMode::Hybrid),
            other => arg(format!("unknown decoder `{other}` (expected reduce|correct|hybrid)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct DecoderParams {
    pub mode: DecoderMode,
    pub t_prime: usize,
    pub decision: Decision,
}

impl DecoderParams {
    pub fn reduce(decision: Decision) -> Self {
        DecoderParams { mode: DecoderMode::Reduce, t_prime: 0, decision }
    }

    pub fn hybrid(t_prime: usize, decision: Decision) -> Self {
        DecoderParams { mode: DecoderMode::Hybrid, t_prime, decision }
    }

    /// Correctable errors per layer actually used for `params`.
    pub fn effective_t(&self, params: &CodeParams) -> usize {
        match self.mode {
            DecoderMode::Reduce => 0,
            DecoderMode::Correct => max_t(params),
            DecoderMode::Hybrid => self.t_prime,
        }
    }

    pub fn validate(&self, params: &CodeParams) -> Result<()> {
        if self.mode == DecoderMode::Hybrid {
            check_t(self.t_prime, params)?;
        }
        Ok(())
    }
}

fn max_t(params: &CodeParams) -> usize {
    (params.n() - 1) / 2
}

fn check_t(t_prime: usize, params: &CodeParams) -> Result<()> {
    if t_prime > max_t(params) {
        return arg(format!(
            "t'={t_prime} exceeds floor((n-1)/2)={} for n={}",
            max_t(params),
            params.n()
        ));
    }
    Ok(())
}

fn check_register(register: &Register, params: &CodeParams) -> Result<()> {
    if register.num_qubits() != params.num_qubits() {
        return arg(format!(
            "register has {} qubits, code with n={} needs {}",
            register.num_qubits(),
            params.n(),
            params.num_qubits()
        ));
    }
    if let Register::Factored(f) = register {
        if f.block_size() != params.n() {
            return arg(format!("factored block size {} != n={}", f.block_size(), params.n()));
        }
    }
    Ok(())
}

fn dense_amplitudes(state: &PureState, params: &CodeParams) -> (Complex64, Complex64) {
    let scale = 0.5f64.powf(params.n() as f64 / 2.0);
    let amps = state.amplitudes();
    let (mut a, mut b) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    for (index, ones) in codeword_support(params) {
        let v = amps[index];
        a += v;
        if ones % 2 == 0 {
            b += v;
        } else {
            b -= v;
        }
    }
    (a * scale, b * scale)
}

fn factored_amplitudes(state: &FactoredState) -> (Complex64, Complex64) {
    let n = state.block_size();
    let last = (1usize << n) - 1;
    let [c0, c1] = state.coeffs();
    let (mut a, mut b) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    for (term, c) in [(0, c0), (1, c1)] {
        let (mut on_plus, mut on_minus) = (c, c);
        for block in 0..n {
            let v = state.block(term, block);
            on_plus *= (v[0] + v[last]) * FRAC_1_SQRT_2;
            on_minus *= (v[0] - v[last]) * FRAC_1_SQRT_2;
        }
        a += on_plus;
        b += on_minus;
    }
    (a, b)
}

/// `(⟨0_RUR|ψ⟩, ⟨1_RUR|ψ⟩)`.
pub fn codespace_amplitudes(register: &Register, params: &CodeParams) -> Result<(Complex64, Complex64)> {
    check_register(register, params)?;
    Ok(match register {
        Register::Dense(s) => dense_amplitudes(s, params),
        Register::Factored(f) => factored_amplitudes(f),
    })
}

fn accepted(a: Complex64, b: Complex64, q: f64) -> DecodeOutcome {
    let s = q.sqrt();
    DecodeOutcome {
        status: DecodeStatus::Accepted,
        success_prob: q,
        decoded: Some(LogicalQubit { alpha: a / s, beta: b / s }),
        syndrome_weight: None,
    }
}

/// Projects onto `span{|0_RUR⟩, |1_RUR⟩}`.
///
/// In expectation mode the accepted branch is always reported (unless its
/// weight is below [`REJECT_TOL`]); in sampled mode acceptance is drawn with
/// probability `Q̂`. The generator is only consumed in sampled mode.
pub fn project_codespace<R: Rng + ?Sized>(
    register: &Register,
    params: &CodeParams,
    decision: Decision,
    rng: &mut R,
) -> Result<DecodeOutcome> {
    let (a, b) = codespace_amplitudes(register, params)?;
    let q = (a.norm_sqr() + b.norm_sqr()).min(1.0);
    if !q.is_finite() {
        return Err(Error::Invariant(format!("projection weight is {q}")));
    }
    let keep = match decision {
        Decision::Expectation => q >= REJECT_TOL,
        Decision::Sampled => q >= REJECT_TOL && rng.gen::<f64>() < q,
    };
    Ok(if keep { accepted(a, b, q) } else { DecodeOutcome::rejected(q) })
}

/// The normalized post-projection dense state `P|ψ⟩/‖P|ψ⟩‖`, built from the
/// explicit codeword vectors.
pub fn collapse_dense(state: &PureState, params: &CodeParams) -> Result<(DecodeOutcome, Option<PureState>)> {
    let reg = Register::Dense(state.clone());
    let (a, b) = codespace_amplitudes(&reg, params)?;
    let q = a.norm_sqr() + b.norm_sqr();
    if q < REJECT_TOL {
        return Ok((DecodeOutcome::rejected(q), None));
    }
    let c0 = crate::codes::codeword_rur(0, params)?;
    let c1 = crate::codes::codeword_rur(1, params)?;
    let amps: Vec<Complex64> = c0
        .amplitudes()
        .iter()
        .zip(c1.amplitudes())
        .map(|(x, y)| a * x + b * y)
        .collect();
    Ok((accepted(a, b, q.min(1.0)), Some(PureState::normalized(amps)?)))
}

/// Logical infidelity `1 − |⟨ideal|decoded⟩|²` of an accepted outcome.
pub fn remainder_error(outcome: &DecodeOutcome, ideal: &LogicalQubit) -> Result<f64> {
    match (outcome.status, outcome.decoded) {
        (DecodeStatus::Rejected, _) => {
            Err(Error::Contract("remainder error requested for a rejected outcome".into()))
        }
        (_, Some(d)) => Ok(ideal.infidelity(&d)),
        (_, None) => Err(Error::Contract("accepted outcome carries no decoded qubit".into())),
    }
}

/// One correctable syndrome and the logical state left after correcting it.
#[derive(Debug, Clone, PartialEq)]
pub struct SyndromeBranch {
    pub probability: f64,
    /// Minority pattern corrected in each block (bit layer).
    pub bit_flips: Vec<usize>,
    /// Minority pattern over blocks corrected in the phase layer.
    pub phase_flips: usize,
    /// Total number of single-qubit corrections.
    pub weight: usize,
    pub decoded: LogicalQubit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyndromeAnalysis {
    pub branches: Vec<SyndromeBranch>,
    pub accepted_prob: f64,
}

/// Patterns of `n` bits with at most `t` ones, lightest first.
fn minority_patterns(n: usize, t: usize) -> Vec<usize> {
    let mut pats: Vec<usize> = (0..1usize << n).filter(|p| p.count_ones() as usize <= t).collect();
    pats.sort_by_key(|p| (p.count_ones(), *p));
    pats
}

/// In-place Walsh-Hadamard transform with `1/√2` per qubit.
fn hadamard_all(v: &mut [Complex64]) {
    let mut h = 1;
    while h < v.len() {
        for base in (0..v.len()).step_by(h * 2) {
            for i in base..base + h {
                let (x, y) = (v[i], v[i + h]);
                v[i] = (x + y) * FRAC_1_SQRT_2;
                v[i + h] = (x - y) * FRAC_1_SQRT_2;
            }
        }
        h *= 2;
    }
}

/// Enumerates every syndrome whose inferred error weight is at most `t_prime`
/// in each layer, with its probability and corrected logical state.
///
/// The bit layer allows up to `t_prime` flips inside every block; the phase
/// layer allows up to `t_prime` flipped blocks. Syndromes outside that set
/// (including ties for even `n`) make up the rejected mass
/// `1 − accepted_prob`.
pub fn syndrome_branches(state: &PureState, params: &CodeParams, t_prime: usize) -> Result<SyndromeAnalysis> {
    check_t(t_prime, params)?;
    if state.num_qubits() != params.num_qubits() {
        return arg(format!(
            "state has {} qubits, code with n={} needs {}",
            state.num_qubits(),
            params.n(),
            params.num_qubits()
        ));
    }
    let n = params.n();
    let mask = params.block_mask();
    let all_blocks = (1usize << n) - 1;
    let reps = minority_patterns(n, t_prime);
    let amps = state.amplitudes();

    let mut branches = Vec::new();
    let mut choice = vec![0usize; n];
    let mut eff = vec![Complex64::new(0.0, 0.0); 1usize << n];
    loop {
        let bit_flips: Vec<usize> = choice.iter().map(|&c| reps[c]).collect();
        for (w, slot) in eff.iter_mut().enumerate() {
            let index = (0..n).fold(0usize, |acc, b| {
                let pattern = if w >> b & 1 == 1 { bit_flips[b] ^ mask } else { bit_flips[b] };
                acc | pattern << (b * n)
            });
            *slot = amps[index];
        }
        let weight_in: f64 = eff.iter().map(|a| a.norm_sqr()).sum();
        if weight_in > BRANCH_EPS {
            let bit_weight: usize = bit_flips.iter().map(|p| p.count_ones() as usize).sum();
            let mut rot = eff.clone();
            hadamard_all(&mut rot);
            for &e in &reps {
                let (a, b) = (rot[e], rot[e ^ all_blocks]);
                let p = a.norm_sqr() + b.norm_sqr();
                if p > BRANCH_EPS {
                    let s = p.sqrt();
                    branches.push(SyndromeBranch {
                        probability: p,
                        bit_flips: bit_flips.clone(),
                        phase_flips: e,
                        weight: bit_weight + e.count_ones() as usize,
                        decoded: LogicalQubit { alpha: a / s, beta: b / s },
                    });
                }
            }
        }
        // Odometer over per-block representatives.
        let mut k = 0;
        while k < n {
            choice[k] += 1;
            if choice[k] < reps.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
    }
    let accepted_prob = branches.iter().map(|b| b.probability).sum::<f64>().min(1.0);
    Ok(SyndromeAnalysis { branches, accepted_prob })
}

/// Measures the syndromes, corrects up to `t_prime` errors per layer and
/// projects. Dense backend only.
pub fn syndrome_correct<R: Rng + ?Sized>(
    register: &Register,
    params: &CodeParams,
    t_prime: usize,
    rng: &mut R,
) -> Result<DecodeOutcome> {
    let state = match register {
        Register::Dense(s) => s,
        Register::Factored(_) => return arg("syndrome correction requires the dense backend"),
    };
    let analysis = syndrome_branches(state, params, t_prime)?;
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    for br in &analysis.branches {
        acc += br.probability;
        if u < acc {
            return Ok(DecodeOutcome {
                status: DecodeStatus::Corrected,
                success_prob: analysis.accepted_prob,
                decoded: Some(br.decoded),
                syndrome_weight: Some(br.weight),
            });
        }
    }
    Ok(DecodeOutcome::rejected(analysis.accepted_prob))
}

/// Runs the decoder selected by `dp`.
///
/// Correct and hybrid modes always sample the syndrome; `success_prob` still
/// carries the exact acceptance probability.
pub fn decode<R: Rng + ?Sized>(
    register: &Register,
    params: &CodeParams,
    dp: &DecoderParams,
    rng: &mut R,
) -> Result<DecodeOutcome> {
    dp.validate(params)?;
    match dp.mode {
        DecoderMode::Reduce => project_codespace(register, params, dp.decision, rng),
        DecoderMode::Correct => syndrome_correct(register, params, max_t(params), rng),
        DecoderMode::Hybrid => {
            let mut out = syndrome_correct(register, params, dp.t_prime, rng)?;
            if out.syndrome_weight == Some(0) {
                out.status = DecodeStatus::Accepted;
            }
            Ok(out)
        }
    }
}

/// Exact acceptance probability and acceptance-weighted infidelity mass,
/// `(Q, Σ_accepted p·(1 − F))`.
pub fn expected_decode(
    register: &Register,
    params: &CodeParams,
    dp: &DecoderParams,
    ideal: &LogicalQubit,
) -> Result<(f64, f64)> {
    dp.validate(params)?;
    match dp.mode {
        DecoderMode::Reduce => {
            let (a, b) = codespace_amplitudes(register, params)?;
            let q = (a.norm_sqr() + b.norm_sqr()).min(1.0);
            if q < REJECT_TOL {
                return Ok((q, 0.0));
            }
            let d = LogicalQubit { alpha: a / q.sqrt(), beta: b / q.sqrt() };
            Ok((q, q * ideal.infidelity(&d)))
        }
        DecoderMode::Correct | DecoderMode::Hybrid => {
            let state = register
                .as_dense()
                .ok_or_else(|| Error::Argument("syndrome correction requires the dense backend".into()))?;
            let an = syndrome_branches(state, params, dp.effective_t(params))?;
            let mass = an.branches.iter().map(|b| b.probability * ideal.infidelity(&b.decoded)).sum();
            Ok((an.accepted_prob, mass))
        }
    }
}
