//! A chain of `M` projection stations along a drifting channel.
//!
//! The channel is split into `M` equal segments. Each physical qubit drifts
//! at fixed angular rates for the whole trial, so a segment applies angles
//! `rate·T/M`; each segment ends with a codespace projection. Shorter segments
//! cut the per-station rejection quadratically, which is the Zeno gain.

use rand::Rng;

use crate::codes::{encode, encode_factored, CodeParams, LogicalQubit};
use crate::decoders::{collapse_dense, project_codespace, DecodeOutcome, DecodeStatus, Decision};
use crate::error::{arg, Error, Result};
use crate::noise::{warn_if_large_drift, DriftRates};
use crate::statevec::{Backend, FactoredState, Register};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationSpec {
    /// Number of projections `M`, the last one at the receiver.
    pub stations: usize,
    pub total_time: f64,
    /// Rates are drawn uniformly from `[−w_max, w_max]` (radians per unit time).
    pub w_max: f64,
    pub n: usize,
}

impl StationSpec {
    pub fn validate(&self) -> Result<()> {
        if self.stations == 0 {
            return arg("at least one station is required");
        }
        if !(self.total_time.is_finite() && self.total_time >= 0.0) {
            return arg(format!("total time must be non-negative, got {}", self.total_time));
        }
        if !(self.w_max.is_finite() && self.w_max >= 0.0) {
            return arg(format!("w_max must be non-negative, got {}", self.w_max));
        }
        warn_if_large_drift(self.w_max * self.total_time);
        Ok(())
    }

    pub fn segment_time(&self) -> f64 {
        self.total_time / self.stations as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainOutcome {
    /// Final decode; `success_prob` is the product of the per-station weights.
    pub outcome: DecodeOutcome,
    /// Projection weight `Q̂` at each station reached.
    pub station_probs: Vec<f64>,
}

/// Re-encodes the decoded qubit of a successful projection as a fresh
/// factored state.
pub fn chain_refresh(outcome: &DecodeOutcome, params: &CodeParams) -> Result<FactoredState> {
    match (outcome.status, outcome.decoded) {
        (DecodeStatus::Rejected, _) => Err(Error::Contract("cannot refresh after a rejected projection".into())),
        (_, Some(q)) => encode_factored(&q, params),
        (_, None) => Err(Error::Contract("accepted outcome carries no decoded qubit".into())),
    }
}

/// Runs one trial, drawing the per-qubit drift rates from `rng` first.
pub fn run_chain<R: Rng + ?Sized>(
    q: &LogicalQubit,
    spec: &StationSpec,
    backend: Backend,
    decision: Decision,
    rng: &mut R,
) -> Result<ChainOutcome> {
    spec.validate()?;
    let rates = DriftRates::sample(spec.w_max, spec.n * spec.n, rng)?;
    run_chain_with_rates(q, spec, &rates, backend, decision, rng)
}

/// Runs one trial with caller-supplied drift rates.
///
/// The dense backend carries the explicitly projected state between stations;
/// the factored backend re-encodes through [`chain_refresh`].
pub fn run_chain_with_rates<R: Rng + ?Sized>(
    q: &LogicalQubit,
    spec: &StationSpec,
    rates: &DriftRates,
    backend: Backend,
    decision: Decision,
    rng: &mut R,
) -> Result<ChainOutcome> {
    spec.validate()?;
    let params = CodeParams::new(spec.n)?;
    params.require_backend(backend)?;
    let dt = spec.segment_time();
    let mut reg = encode(q, &params, backend)?;
    let mut station_probs = Vec::with_capacity(spec.stations);
    let mut cumulative = 1.0;
    let mut last = None;
    for _ in 0..spec.stations {
        rates.apply(&mut reg, dt)?;
        let out = project_codespace(&reg, &params, decision, rng)?;
        station_probs.push(out.success_prob);
        cumulative *= out.success_prob;
        if !out.is_accepted() {
            return Ok(ChainOutcome { outcome: DecodeOutcome::rejected(cumulative), station_probs });
        }
        reg = match reg {
            Register::Dense(state) => {
                let (_, collapsed) = collapse_dense(&state, &params)?;
                Register::Dense(collapsed.ok_or_else(|| {
                    Error::Invariant("accepted projection collapsed to a zero state".into())
                })?)
            }
            Register::Factored(_) => Register::Factored(chain_refresh(&out, &params)?),
        };
        last = Some(out);
    }
    let mut outcome = last.ok_or_else(|| Error::Invariant("chain ran no stations".into()))?;
    outcome.success_prob = cumulative;
    Ok(ChainOutcome { outcome, station_probs })
}
