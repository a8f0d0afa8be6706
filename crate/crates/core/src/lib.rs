//! Simulation of the concatenated repetition error-reduction code `R_n U R_n`.
//!
//! One logical qubit is encoded into `N = n²` physical qubits arranged as `n`
//! blocks of `n`. Decoding projects onto the two-dimensional codespace and
//! discards the qubit when the projection fails (error reduction), or measures
//! the repetition syndromes and corrects up to `t'` errors per layer.
//!
//! Modules, bottom-up:
//!
//! - [`statevec`]: dense and factored state representations.
//! - [`codes`]: codewords and encoders.
//! - [`noise`]: Pauli channels, bounded random unitaries, linear drift.
//! - [`decoders`]: codespace projection and syndrome correction.
//! - [`analytic`]: closed-form classical statistics.
//! - [`stations`]: chains of projection stations along a drifting channel.
//! - [`harness`]: Monte Carlo sweeps, the exhaustive Pauli oracle, fits.

pub mod analytic;
pub mod codes;
pub mod decoders;
mod error;
pub mod harness;
pub mod noise;
pub mod stations;
pub mod statevec;

pub use codes::{CodeParams, LogicalQubit};
pub use decoders::{DecodeOutcome, DecodeStatus, Decision, DecoderMode, DecoderParams};
pub use error::{Error, Result};
pub use noise::{NoiseModel, PauliOp, SingleQubitUnitary};
pub use statevec::{Backend, FactoredState, Matrix2, PureState, Register};

pub use num_complex::Complex64;
