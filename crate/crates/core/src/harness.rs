//! Monte Carlo sweeps, the exhaustive Pauli oracle, and small statistics
//! helpers.
//!
//! Every trial draws from its own generator, `ChaCha8(seed)` on stream
//! `trial_index`, and per-trial results are collected in index order before
//! aggregation. Output is therefore identical for any worker count. The same
//! streams are reused at every grid point (common random numbers), which keeps
//! scaling fits smooth.

use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::codes::{codeword_rur, encode, encode_dense, CodeParams, LogicalQubit};
use crate::decoders::{decode, expected_decode, Decision, DecoderMode, DecoderParams};
use crate::error::{arg, Error, Result};
use crate::noise::{apply_noise, apply_pauli_dense, NoiseModel, PauliChannel, PauliOp};
use crate::stations::{run_chain, StationSpec};
use crate::statevec::{inner, Backend, DENSE_MAX_N};

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum SweepMode {
    /// Symmetric Pauli channel, noise parameter `p = px = py = pz`.
    #[default]
    Pauli,
    /// Bounded random unitaries, noise parameter `chi`.
    Unitary,
    /// Projection-station chain, noise parameter `w_max·T`.
    Zeno,
    /// Exact enumeration over Pauli patterns, noise parameter `p`.
    Oracle,
}

impl fmt::Display for SweepMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepMode::Pauli => "pauli",
            SweepMode::Unitary => "unitary",
            SweepMode::Zeno => "zeno",
            SweepMode::Oracle => "oracle",
        })
    }
}

impl std::str::FromStr for SweepMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pauli" => Ok(SweepMode::Pauli),
            "unitary" => Ok(SweepMode::Unitary),
            "zeno" => Ok(SweepMode::Zeno),
            "oracle" => Ok(SweepMode::Oracle),
            other => arg(format!("unknown mode `{other}` (expected pauli|unitary|zeno|oracle)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub mode: SweepMode,
    pub ns: Vec<usize>,
    /// `p`, `chi` or `w_max·T` depending on the mode.
    pub noise: Vec<f64>,
    /// Station counts; only used in zeno mode.
    pub stations: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub decision: Decision,
    pub backend: Backend,
    pub decoder: DecoderMode,
    pub t_prime: usize,
    pub logical: LogicalQubit,
    /// Worker threads; `None` uses the hardware parallelism.
    pub threads: Option<usize>,
    /// Write wall-clock time into `elapsed_ms`; otherwise it is 0 so output
    /// stays byte-reproducible.
    pub record_timing: bool,
    pub dense_limit: usize,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            mode: SweepMode::Pauli,
            ns: vec![2],
            noise: vec![0.0],
            stations: vec![1],
            trials: 1000,
            seed: 0,
            decision: Decision::Expectation,
            backend: Backend::Dense,
            decoder: DecoderMode::Reduce,
            t_prime: 0,
            logical: LogicalQubit::plus(),
            threads: None,
            record_timing: false,
            dense_limit: DENSE_MAX_N,
        }
    }
}

impl SweepSpec {
    fn params(&self, n: usize) -> Result<CodeParams> {
        CodeParams::new(n)?.with_dense_limit(self.dense_limit)
    }

    fn decoder_params(&self) -> DecoderParams {
        DecoderParams { mode: self.decoder, t_prime: self.t_prime, decision: self.decision }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return arg("trials must be at least 1");
        }
        if self.ns.is_empty() || self.noise.is_empty() {
            return arg("n and noise grids must be non-empty");
        }
        if self.mode == SweepMode::Zeno && (self.stations.is_empty() || self.stations.contains(&0)) {
            return arg("zeno mode needs a non-empty list of station counts ≥ 1");
        }
        if self.threads == Some(0) {
            return arg("thread count must be at least 1");
        }
        LogicalQubit::new(self.logical.alpha, self.logical.beta)?;
        for &n in &self.ns {
            let params = self.params(n)?;
            match self.mode {
                SweepMode::Oracle => {
                    if n > 3 {
                        return Err(Error::Resource(format!("oracle enumeration is limited to n ≤ 3, got {n}")));
                    }
                }
                _ => params.require_backend(self.backend)?,
            }
            if self.decoder != DecoderMode::Reduce {
                if matches!(self.mode, SweepMode::Zeno | SweepMode::Oracle) {
                    return arg(format!("{} mode only supports the reduce decoder", self.mode));
                }
                if self.backend != Backend::Dense {
                    return arg("syndrome correction requires the dense backend");
                }
                self.decoder_params().validate(&params)?;
            }
        }
        for &x in &self.noise {
            self.model(x)?;
        }
        Ok(())
    }

    fn model(&self, x: f64) -> Result<NoiseModel> {
        let m = match self.mode {
            SweepMode::Pauli | SweepMode::Oracle => NoiseModel::Pauli(PauliChannel::symmetric(x)?),
            SweepMode::Unitary => NoiseModel::RandomUnitary { chi: x },
            SweepMode::Zeno => NoiseModel::Drift { w: x, duration: 1.0 },
        };
        m.validate()?;
        Ok(m)
    }
}

/// Aggregated estimates for one grid point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub mode: SweepMode,
    pub n: usize,
    #[serde(rename = "M")]
    pub stations: usize,
    pub noise_param: f64,
    pub trials: usize,
    pub seed: u64,
    #[serde(rename = "Q_mean")]
    pub q_mean: f64,
    #[serde(rename = "Q_ci_lo")]
    pub q_ci_lo: f64,
    #[serde(rename = "Q_ci_hi")]
    pub q_ci_hi: f64,
    #[serde(rename = "P_mean")]
    pub p_mean: f64,
    #[serde(rename = "P_ci_lo")]
    pub p_ci_lo: f64,
    #[serde(rename = "P_ci_hi")]
    pub p_ci_hi: f64,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SweepStats {
    pub points: Vec<SweepPoint>,
}

pub const CSV_HEADER: &str =
    "mode,n,M,noise_param,trials,seed,Q_mean,Q_ci_lo,Q_ci_hi,P_mean,P_ci_lo,P_ci_hi,elapsed_ms";

/// Ten significant digits in scientific notation.
pub fn fmt_sig10(x: f64) -> String {
    format!("{x:.9e}")
}

impl SweepStats {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for p in &self.points {
            let floats = [p.q_mean, p.q_ci_lo, p.q_ci_hi, p.p_mean, p.p_ci_lo, p.p_ci_hi, p.elapsed_ms];
            let rendered: Vec<String> = floats.iter().map(|&x| fmt_sig10(x)).collect();
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                p.mode,
                p.n,
                p.stations,
                fmt_sig10(p.noise_param),
                p.trials,
                p.seed,
                rendered.join(",")
            ));
        }
        out
    }

    /// The same records as a top-level JSON array.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.points).expect("sweep points serialize")
    }
}

/// Generator for trial `index`: ChaCha8 keyed by `seed`, on stream `index`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Wilson score interval for `successes` out of `trials`.
pub fn wilson_interval(successes: usize, trials: usize, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let phat = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = z * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0).min(phat), (center + half).min(1.0).max(phat))
}

fn clamp_ci(mean: f64, half: f64) -> (f64, f64) {
    ((mean - half).clamp(0.0, 1.0).min(mean), (mean + half).clamp(0.0, 1.0).max(mean))
}

#[derive(Debug, Clone, Copy)]
enum TrialResult {
    /// Exact acceptance `q` and infidelity mass `q·(1−F)`.
    Expected { q: f64, mass: f64 },
    /// Drawn acceptance and, when accepted, a drawn logical error.
    Sampled { accepted: bool, error: bool },
}

struct GridPoint {
    n: usize,
    noise: f64,
    stations: usize,
}

fn run_trial(spec: &SweepSpec, point: &GridPoint, params: &CodeParams, index: u64) -> Result<TrialResult> {
    let mut rng = trial_rng(spec.seed, index);
    let ideal = &spec.logical;
    let dp = spec.decoder_params();
    let (q, decoded) = match spec.mode {
        SweepMode::Zeno => {
            let st = StationSpec { stations: point.stations, total_time: 1.0, w_max: point.noise, n: point.n };
            let chain = run_chain(ideal, &st, spec.backend, spec.decision, &mut rng)?;
            (chain.outcome.success_prob, chain.outcome.is_accepted().then_some(chain.outcome.decoded).flatten())
        }
        _ => {
            let mut reg = encode(ideal, params, spec.backend)?;
            apply_noise(&mut reg, &spec.model(point.noise)?, &mut rng)?;
            if spec.decision == Decision::Expectation {
                let (q, mass) = expected_decode(&reg, params, &dp, ideal)?;
                return Ok(TrialResult::Expected { q, mass });
            }
            let out = decode(&reg, params, &dp, &mut rng)?;
            (out.success_prob, out.is_accepted().then_some(out.decoded).flatten())
        }
    };
    Ok(match spec.decision {
        Decision::Expectation => {
            let inf = decoded.map(|d| ideal.infidelity(&d)).unwrap_or(0.0);
            TrialResult::Expected { q, mass: q * inf }
        }
        Decision::Sampled => match decoded {
            Some(d) => {
                // Measuring against the ideal state reports an error w.p. 1 − F.
                let error = rng.gen::<f64>() < ideal.infidelity(&d);
                TrialResult::Sampled { accepted: true, error }
            }
            None => TrialResult::Sampled { accepted: false, error: false },
        },
    })
}

/// Point estimates and 95% intervals for `(Q, P)` from ordered trial results.
fn aggregate(results: &[TrialResult]) -> [f64; 6] {
    let t = results.len() as f64;
    match results.first() {
        Some(TrialResult::Sampled { .. }) => {
            let (mut acc, mut err) = (0usize, 0usize);
            for r in results {
                if let TrialResult::Sampled { accepted, error } = *r {
                    acc += accepted as usize;
                    err += (accepted && error) as usize;
                }
            }
            let (qlo, qhi) = wilson_interval(acc, results.len(), Z95);
            let q = acc as f64 / t;
            let (p, plo, phi) = if acc == 0 {
                (0.0, 0.0, 1.0)
            } else {
                let (lo, hi) = wilson_interval(err, acc, Z95);
                (err as f64 / acc as f64, lo, hi)
            };
            [q, qlo, qhi, p, plo, phi]
        }
        _ => {
            let pairs: Vec<(f64, f64)> = results
                .iter()
                .map(|r| match *r {
                    TrialResult::Expected { q, mass } => (q, mass),
                    TrialResult::Sampled { .. } => unreachable!("mixed trial kinds"),
                })
                .collect();
            let qbar = pairs.iter().map(|p| p.0).sum::<f64>() / t;
            let mbar = pairs.iter().map(|p| p.1).sum::<f64>() / t;
            let dof = (t - 1.0).max(1.0);
            let q_var = pairs.iter().map(|p| (p.0 - qbar).powi(2)).sum::<f64>() / dof;
            let (qlo, qhi) = clamp_ci(qbar, Z95 * (q_var / t).sqrt());
            if qbar <= 0.0 {
                return [qbar, qlo, qhi, 0.0, 0.0, 1.0];
            }
            // Ratio estimator P = Σ mass / Σ q with a delta-method standard error.
            let p = (mbar / qbar).clamp(0.0, 1.0);
            let r_var = pairs.iter().map(|(q, m)| (m - p * q).powi(2)).sum::<f64>() / dof;
            let (plo, phi) = clamp_ci(p, Z95 * (r_var / t).sqrt() / qbar);
            [qbar, qlo, qhi, p, plo, phi]
        }
    }
}

fn grid(spec: &SweepSpec) -> Vec<GridPoint> {
    let stations: &[usize] = if spec.mode == SweepMode::Zeno { &spec.stations } else { &[1] };
    let mut pts = Vec::new();
    for &n in &spec.ns {
        for &noise in &spec.noise {
            for &m in stations {
                pts.push(GridPoint { n, noise, stations: m });
            }
        }
    }
    pts
}

/// Runs every grid point of `spec`.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepStats> {
    spec.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.threads.unwrap_or(0))
        .build()
        .map_err(|e| Error::Resource(format!("cannot start worker pool: {e}")))?;
    let mut points = Vec::new();
    for gp in grid(spec) {
        let start = Instant::now();
        let params = spec.params(gp.n)?;
        let (stats, trials) = if spec.mode == SweepMode::Oracle {
            let ch = PauliChannel::symmetric(gp.noise)?;
            let rep = pool.install(|| brute_force_pauli(gp.n, ch.px, ch.py, ch.pz, &spec.logical))?;
            ([rep.q, rep.q, rep.q, rep.p, rep.p, rep.p], 0)
        } else {
            let results: Vec<TrialResult> = pool.install(|| {
                (0..spec.trials as u64)
                    .into_par_iter()
                    .map(|i| run_trial(spec, &gp, &params, i))
                    .collect::<Result<Vec<_>>>()
            })?;
            (aggregate(&results), spec.trials)
        };
        let elapsed_ms = if spec.record_timing { start.elapsed().as_secs_f64() * 1e3 } else { 0.0 };
        points.push(SweepPoint {
            mode: spec.mode,
            n: gp.n,
            stations: gp.stations,
            noise_param: gp.noise,
            trials,
            seed: spec.seed,
            q_mean: stats[0],
            q_ci_lo: stats[1],
            q_ci_hi: stats[2],
            p_mean: stats[3],
            p_ci_lo: stats[4],
            p_ci_hi: stats[5],
            elapsed_ms,
        });
    }
    Ok(SweepStats { points })
}

/// Logical Pauli induced on the codespace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LogicalAction {
    I,
    X,
    Z,
    /// `X·Z`, i.e. `Y` up to phase.
    XZ,
}

impl LogicalAction {
    pub fn apply(self, q: &LogicalQubit) -> LogicalQubit {
        let (a, b) = (q.alpha, q.beta);
        match self {
            LogicalAction::I => *q,
            LogicalAction::X => LogicalQubit { alpha: b, beta: a },
            LogicalAction::Z => LogicalQubit { alpha: a, beta: -b },
            LogicalAction::XZ => LogicalQubit { alpha: -b, beta: a },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PatternClass {
    /// Returns to the codespace with trivial logical action.
    Benign,
    /// Returns to the codespace with a non-trivial logical action.
    Logical,
    /// Maps the codespace to an orthogonal syndrome space.
    Orthogonal,
}

/// Classifies a Pauli pattern by commutation with the code's stabilizers.
///
/// Stabilizers are `Z_i Z_j` inside each block and `X^⊗n` on adjacent block
/// pairs, so the pattern returns to the codespace iff its bit-flip part is
/// all-or-nothing in every block and its phase-flip parity is the same in
/// every block. Its logical part then follows from commutation with
/// `Z̄ = X^⊗n` on block 0 and `X̄ = Z` on the first qubit of every block.
pub fn classify_pattern(pattern: &[PauliOp], n: usize) -> (PatternClass, Option<LogicalAction>) {
    let mut z_parity = None;
    let mut flipped_blocks = 0usize;
    for block in pattern.chunks(n) {
        let flips = block.iter().filter(|op| op.flips_bit()).count();
        if flips != 0 && flips != n {
            return (PatternClass::Orthogonal, None);
        }
        flipped_blocks += (flips == n) as usize;
        let par = block.iter().filter(|op| op.flips_phase()).count() % 2;
        match z_parity {
            None => z_parity = Some(par),
            Some(p) if p != par => return (PatternClass::Orthogonal, None),
            _ => {}
        }
    }
    let logical_x = z_parity == Some(1);
    let logical_z = flipped_blocks % 2 == 1;
    let action = match (logical_x, logical_z) {
        (false, false) => LogicalAction::I,
        (true, false) => LogicalAction::X,
        (false, true) => LogicalAction::Z,
        (true, true) => LogicalAction::XZ,
    };
    let class = if action == LogicalAction::I { PatternClass::Benign } else { PatternClass::Logical };
    (class, Some(action))
}

/// Pattern number `index` in base 4, qubit 0 in the lowest digit.
pub fn pattern_from_index(index: usize, num_qubits: usize) -> Vec<PauliOp> {
    (0..num_qubits).map(|q| PauliOp::ALL[index >> (2 * q) & 3]).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub pattern: Vec<PauliOp>,
    pub probability: f64,
    /// Projection weight from dense simulation.
    pub success_prob: f64,
    pub class: PatternClass,
    pub action: Option<LogicalAction>,
    /// Infidelity of the accepted branch, when there is one.
    pub infidelity: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub n: usize,
    pub channel: PauliChannel,
    pub logical: LogicalQubit,
    /// Exact acceptance probability.
    pub q: f64,
    /// Exact remainder error conditional on acceptance.
    pub p: f64,
    pub ledger: Vec<LedgerEntry>,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct LedgerSummary {
    pub patterns: usize,
    pub benign: usize,
    pub logical: usize,
    pub orthogonal: usize,
    pub benign_mass: f64,
    pub logical_mass: f64,
    pub orthogonal_mass: f64,
}

impl OracleReport {
    pub fn summary(&self) -> LedgerSummary {
        let mut s = LedgerSummary { patterns: self.ledger.len(), ..Default::default() };
        for e in &self.ledger {
            match e.class {
                PatternClass::Benign => {
                    s.benign += 1;
                    s.benign_mass += e.probability;
                }
                PatternClass::Logical => {
                    s.logical += 1;
                    s.logical_mass += e.probability;
                }
                PatternClass::Orthogonal => {
                    s.orthogonal += 1;
                    s.orthogonal_mass += e.probability;
                }
            }
        }
        s
    }
}

/// Exact `Q` and `P` by enumerating all `4^N` Pauli patterns.
///
/// Each pattern is applied to the dense encoding and projected with full
/// inner products against the dense codewords. The result is checked against
/// the stabilizer classification of [`classify_pattern`]; a disagreement is an
/// invariant breach.
pub fn brute_force_pauli(n: usize, px: f64, py: f64, pz: f64, logical: &LogicalQubit) -> Result<OracleReport> {
    if !(2..=3).contains(&n) {
        return Err(Error::Resource(format!("oracle enumeration supports n ∈ {{2, 3}}, got {n}")));
    }
    let channel = PauliChannel::new(px, py, pz)?;
    let params = CodeParams::new(n)?;
    let nq = params.num_qubits();
    let c0 = codeword_rur(0, &params)?;
    let c1 = codeword_rur(1, &params)?;
    let encoded = encode_dense(logical, &params)?;

    let ledger: Vec<LedgerEntry> = (0..1usize << (2 * nq))
        .into_par_iter()
        .map(|index| {
            let pattern = pattern_from_index(index, nq);
            let probability: f64 = pattern.iter().map(|&op| channel.prob(op)).product();
            let mut state = encoded.clone();
            apply_pauli_dense(&mut state, &pattern)?;
            let a = inner(&c0, &state)?;
            let b = inner(&c1, &state)?;
            let success_prob = (a.norm_sqr() + b.norm_sqr()).min(1.0);
            let (class, action) = classify_pattern(&pattern, n);
            let infidelity = match action {
                Some(act) => {
                    if (success_prob - 1.0).abs() > 1e-12 {
                        return Err(Error::Invariant(format!(
                            "pattern {} commutes with the stabilizers but has weight {success_prob}",
                            crate::noise::pattern_string(&pattern)
                        )));
                    }
                    let s = success_prob.sqrt();
                    let decoded = LogicalQubit { alpha: a / s, beta: b / s };
                    if act.apply(logical).infidelity(&decoded) > 1e-12 {
                        return Err(Error::Invariant(format!(
                            "pattern {} decodes inconsistently with logical {act:?}",
                            crate::noise::pattern_string(&pattern)
                        )));
                    }
                    Some(logical.infidelity(&decoded))
                }
                None => {
                    if success_prob > 1e-14 {
                        return Err(Error::Invariant(format!(
                            "pattern {} anticommutes with a stabilizer but has weight {success_prob}",
                            crate::noise::pattern_string(&pattern)
                        )));
                    }
                    None
                }
            };
            Ok(LedgerEntry { pattern, probability, success_prob, class, action, infidelity })
        })
        .collect::<Result<_>>()?;

    let q = ledger.iter().map(|e| e.probability * e.success_prob).sum::<f64>().min(1.0);
    let err: f64 = ledger
        .iter()
        .filter_map(|e| e.infidelity.map(|inf| e.probability * e.success_prob * inf))
        .sum();
    let p = if q > 0.0 { err / q } else { 0.0 };
    Ok(OracleReport { n, channel, logical: *logical, q, p, ledger })
}

/// Log-log least-squares fit `log y = slope·log x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    /// Standard error of the slope (0 for exactly collinear points).
    pub stderr: f64,
}

pub fn slope_fit(xs: &[f64], ys: &[f64]) -> Result<SlopeFit> {
    if xs.len() != ys.len() {
        return arg(format!("slope fit needs equal lengths, got {} and {}", xs.len(), ys.len()));
    }
    if xs.len() < 3 {
        return arg("slope fit needs at least 3 points");
    }
    if xs.iter().chain(ys).any(|v| !(v.is_finite() && *v > 0.0)) {
        return arg("slope fit needs positive finite values");
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let m = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / m;
    let my = ly.iter().sum::<f64>() / m;
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return arg("slope fit needs distinct x values");
    }
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr: f64 = lx.iter().zip(&ly).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let stderr = (ssr / (m - 2.0) / sxx).sqrt();
    Ok(SlopeFit { slope, intercept, stderr })
}

/// Classical `R_n` repetition code by enumeration: the probability that a
/// word whose syndrome shows exactly `t` minority bits actually carried
/// `n − t` errors (so majority correction goes wrong).
pub fn classical_conditional_error(n: usize, t: usize, p: f64) -> Result<f64> {
    if n == 0 || n > 30 || 2 * t >= n {
        return arg(format!("need 2t < n ≤ 30, got n={n}, t={t}"));
    }
    let (mut identified, mut wrong) = (0.0, 0.0);
    for word in 0u64..1 << n {
        let w = word.count_ones() as usize;
        if w.min(n - w) != t {
            continue;
        }
        let prob = p.powi(w as i32) * (1.0 - p).powi((n - w) as i32);
        identified += prob;
        if w == n - t {
            wrong += prob;
        }
    }
    if identified == 0.0 {
        return arg(format!("no weight-{t} syndromes at p={p}"));
    }
    Ok(wrong / identified)
}
