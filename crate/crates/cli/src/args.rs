//! Command-line flags, config-file merging, and value-list parsing.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::{self, Deserializer, Visitor};
use serde::Deserialize;

use qreduce::harness::SweepMode;
use qreduce::{Backend, Complex64, Decision, DecoderMode, LogicalQubit};

#[derive(Debug, Parser)]
#[command(
    name = "qreduce",
    version,
    about = "Simulate error reduction with the concatenated repetition code R_n U R_n",
    long_about = "Simulate error reduction with the concatenated repetition code R_n U R_n.\n\n\
                  Units: probabilities are in [0, 1]; angles and drift products w_max·T are in radians.\n\
                  Exit codes: 0 success, 2 invalid arguments or I/O, 3 resource limit, 4 internal invariant breach."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form acceptance Q and conditional remainder error P for classical repetition reduction.
    Analytic(Flags),
    /// Monte Carlo estimate of Q and P at a single grid point.
    Simulate(Flags),
    /// Monte Carlo estimates of Q and P over grids of n and noise strength.
    Sweep(Flags),
    /// Chain of M projection stations along a drifting channel of total drift w_max·T.
    Zeno(Flags),
    /// Exact Q and P by enumerating every Pauli pattern (n = 2 or 3).
    Oracle(Flags),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Analytic(_) => "analytic",
            Command::Simulate(_) => "simulate",
            Command::Sweep(_) => "sweep",
            Command::Zeno(_) => "zeno",
            Command::Oracle(_) => "oracle",
        }
    }

    pub fn flags(&self) -> &Flags {
        match self {
            Command::Analytic(f)
            | Command::Simulate(f)
            | Command::Sweep(f)
            | Command::Zeno(f)
            | Command::Oracle(f) => f,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Structured,
    Table,
}

/// Flags shared by every subcommand. Config files use the same keys.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Flags {
    /// TOML file with default values for any of these flags (keys as flag names, e.g. `t-prime = 1`).
    #[arg(long, value_name = "FILE")]
    #[serde(skip)]
    pub config: Option<PathBuf>,

    /// Noise model for simulate/sweep: pauli | unitary | zeno | oracle.
    #[arg(long, value_name = "MODE")]
    pub mode: Option<SweepMode>,

    /// Repetition length n (N = n² physical qubits); comma list, e.g. `2,3`.
    #[arg(long, value_name = "LIST")]
    pub n: Option<ValueList<usize>>,

    /// Probability of each Pauli X, Y and Z per qubit, in [0, 1/3]; value, list or start:stop:count.
    #[arg(long, value_name = "GRID")]
    pub p: Option<Grid>,

    /// Bound on the random unitary angles θ, φ, η, in radians; value, list or start:stop:count.
    #[arg(long, value_name = "GRID")]
    pub chi: Option<Grid>,

    /// Drift product w_max·T, in radians; value, list or start:stop:count.
    #[arg(long, value_name = "GRID")]
    pub wt: Option<Grid>,

    /// Number of projection stations M (zeno); comma list, e.g. `1,2,4,8`.
    #[arg(long = "M", value_name = "LIST")]
    #[serde(rename = "M")]
    pub stations: Option<ValueList<usize>>,

    /// Space start:stop:count grids geometrically instead of linearly.
    #[arg(long)]
    #[serde(default)]
    pub log_grid: bool,

    /// Monte Carlo trials per grid point.
    #[arg(long, value_name = "COUNT")]
    pub trials: Option<usize>,

    /// Base seed of the per-trial random streams.
    #[arg(long)]
    pub seed: Option<u64>,

    /// expectation (exact projection weights) or sampled (drawn outcomes).
    #[arg(long, value_name = "MODE")]
    pub decision: Option<Decision>,

    /// State backend: dense (n ≤ 4) or factored (n ≤ 16).
    #[arg(long)]
    pub backend: Option<Backend>,

    /// Decoder: reduce (discard on any syndrome), correct, or hybrid.
    #[arg(long)]
    pub decoder: Option<DecoderMode>,

    /// Errors per layer the hybrid decoder corrects before discarding.
    #[arg(long, value_name = "COUNT")]
    pub t_prime: Option<usize>,

    /// Logical input: plus | zero | one | minus | `re_a,im_a,re_b,im_b` (normalized).
    #[arg(long, value_name = "STATE")]
    pub logical: Option<LogicalArg>,

    /// Worker threads (default: hardware parallelism).
    #[arg(long, env = "QREDUCE_THREADS", value_name = "COUNT")]
    pub threads: Option<usize>,

    /// Largest n accepted by the dense backend (at most 5).
    #[arg(long, value_name = "N")]
    pub dense_limit: Option<usize>,

    /// Output format: csv, structured (JSON) or table.
    #[arg(long, value_enum)]
    pub format: Option<Format>,

    /// Write output to FILE instead of standard output.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,

    /// Record wall-clock time in elapsed_ms (output is then no longer reproducible).
    #[arg(long)]
    #[serde(default)]
    pub timing: bool,

    /// Oracle only: emit the per-pattern ledger.
    #[arg(long)]
    #[serde(default)]
    pub ledger: bool,
}

impl Flags {
    /// Fills every unset flag from `base`.
    pub fn merged_over(self, base: Flags) -> Flags {
        Flags {
            config: self.config,
            mode: self.mode.or(base.mode),
            n: self.n.or(base.n),
            p: self.p.or(base.p),
            chi: self.chi.or(base.chi),
            wt: self.wt.or(base.wt),
            stations: self.stations.or(base.stations),
            log_grid: self.log_grid || base.log_grid,
            trials: self.trials.or(base.trials),
            seed: self.seed.or(base.seed),
            decision: self.decision.or(base.decision),
            backend: self.backend.or(base.backend),
            decoder: self.decoder.or(base.decoder),
            t_prime: self.t_prime.or(base.t_prime),
            logical: self.logical.or(base.logical),
            threads: self.threads.or(base.threads),
            dense_limit: self.dense_limit.or(base.dense_limit),
            format: self.format.or(base.format),
            out: self.out.or(base.out),
            timing: self.timing || base.timing,
            ledger: self.ledger || base.ledger,
        }
    }
}

pub fn load_config(path: &Path) -> Result<Flags, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    toml::from_str(&text).map_err(|e| format!("invalid config {}: {e}", path.display()))
}

/// Comma-separated values, or a scalar or array in a config file.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueList<T>(pub Vec<T>);

impl<T: FromStr> FromStr for ValueList<T>
where
    T::Err: fmt::Display,
{
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let items = s
            .split(',')
            .map(|x| x.trim().parse::<T>().map_err(|e| format!("invalid value `{}`: {e}", x.trim())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ValueList(items))
    }
}

impl<'de, T> Deserialize<'de> for ValueList<T>
where
    T: FromStr + Deserialize<'de>,
    T::Err: fmt::Display,
{
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw<T> {
            One(T),
            Many(Vec<T>),
            Text(String),
        }
        match Raw::<T>::deserialize(d)? {
            Raw::One(x) => Ok(ValueList(vec![x])),
            Raw::Many(v) => Ok(ValueList(v)),
            Raw::Text(s) => s.parse().map_err(de::Error::custom),
        }
    }
}

/// A noise grid: explicit values or an inclusive `start:stop:count` range.
#[derive(Debug, Clone, PartialEq)]
pub enum Grid {
    Values(Vec<f64>),
    Range { start: f64, stop: f64, count: usize },
}

impl Grid {
    pub fn values(&self, log: bool) -> Result<Vec<f64>, String> {
        match *self {
            Grid::Values(ref v) => Ok(v.clone()),
            Grid::Range { start, stop, count } => {
                if count == 0 {
                    return Err("grid count must be at least 1".into());
                }
                if count == 1 {
                    return Ok(vec![start]);
                }
                let steps = (count - 1) as f64;
                if log {
                    if !(start > 0.0 && stop > 0.0) {
                        return Err(format!("log grid needs positive bounds, got {start}:{stop}"));
                    }
                    let ratio = (stop / start).ln();
                    Ok((0..count).map(|i| start * (ratio * i as f64 / steps).exp()).collect())
                } else {
                    Ok((0..count).map(|i| start + (stop - start) * i as f64 / steps).collect())
                }
            }
        }
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        let num = |x: &str| x.parse::<f64>().map_err(|e| format!("invalid number `{x}`: {e}"));
        match parts.as_slice() {
            [start, stop, count] => Ok(Grid::Range {
                start: num(start)?,
                stop: num(stop)?,
                count: count.parse().map_err(|e| format!("invalid grid count `{count}`: {e}"))?,
            }),
            [_] => Ok(Grid::Values(s.parse::<ValueList<f64>>()?.0)),
            _ => Err(format!("grid `{s}` is neither a list nor start:stop:count")),
        }
    }
}

impl<'de> Deserialize<'de> for Grid {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct GridVisitor;

        impl<'de> Visitor<'de> for GridVisitor {
            type Value = Grid;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number, an array of numbers, or a \"start:stop:count\" string")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Grid, E> {
                Ok(Grid::Values(vec![v]))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Grid, E> {
                Ok(Grid::Values(vec![v as f64]))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Grid, E> {
                Ok(Grid::Values(vec![v as f64]))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Grid, E> {
                v.parse().map_err(E::custom)
            }

            fn visit_seq<A: de::SeqAccess<'de>>(self, mut seq: A) -> Result<Grid, A::Error> {
                let mut out = Vec::new();
                while let Some(x) = seq.next_element::<f64>()? {
                    out.push(x);
                }
                Ok(Grid::Values(out))
            }
        }

        d.deserialize_any(GridVisitor)
    }
}

/// A logical input state given by name or by its two complex amplitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogicalArg(pub LogicalQubit);

impl FromStr for LogicalArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let q = match s.trim() {
            "plus" => LogicalQubit::plus(),
            "zero" => LogicalQubit::zero(),
            "one" => LogicalQubit::one(),
            "minus" => {
                let h = std::f64::consts::FRAC_1_SQRT_2;
                LogicalQubit::new(Complex64::new(h, 0.0), Complex64::new(-h, 0.0)).map_err(|e| e.to_string())?
            }
            other => {
                let v = other.parse::<ValueList<f64>>()?.0;
                let [ar, ai, br, bi] = v[..] else {
                    return Err(format!("logical state `{other}` needs four numbers re_a,im_a,re_b,im_b"));
                };
                LogicalQubit::normalized(Complex64::new(ar, ai), Complex64::new(br, bi)).map_err(|e| e.to_string())?
            }
        };
        Ok(LogicalArg(q))
    }
}

impl<'de> Deserialize<'de> for LogicalArg {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_and_log_grids() {
        let g: Grid = "0.01:0.1:5".parse().unwrap();
        let v = g.values(false).unwrap();
        assert_eq!(v.len(), 5);
        assert!((v[4] - 0.1).abs() < 1e-15 && (v[1] - 0.0325).abs() < 1e-15);
        let l = g.values(true).unwrap();
        assert!((l[2] - (0.001f64).sqrt()).abs() < 1e-12);
        assert_eq!("0.1, 0.2".parse::<Grid>().unwrap(), Grid::Values(vec![0.1, 0.2]));
        assert!("1:2".parse::<Grid>().is_err());
        assert!("0:1:3".parse::<Grid>().unwrap().values(true).is_err());
    }

    #[test]
    fn config_values_and_unknown_keys() {
        let f: Flags = toml::from_str("n = [2, 3]\np = \"0.01:0.05:3\"\nchi = 0.1\nM = 4\nt-prime = 1\ndecoder = \"hybrid\"")
            .unwrap();
        assert_eq!(f.n, Some(ValueList(vec![2, 3])));
        assert_eq!(f.stations, Some(ValueList(vec![4])));
        assert_eq!(f.chi, Some(Grid::Values(vec![0.1])));
        assert_eq!(f.t_prime, Some(1));
        let err = toml::from_str::<Flags>("bogus-key = 1").unwrap_err().to_string();
        assert!(err.contains("bogus-key"), "{err}");
    }

    #[test]
    fn flags_override_config() {
        let base = Flags { trials: Some(5), seed: Some(9), ..Default::default() };
        let top = Flags { trials: Some(7), ..Default::default() };
        let m = top.merged_over(base);
        assert_eq!((m.trials, m.seed), (Some(7), Some(9)));
    }

    #[test]
    fn logical_states() {
        let q = "0,0,2,0".parse::<LogicalArg>().unwrap().0;
        assert!((q.beta.re - 1.0).abs() < 1e-15);
        assert!("1,2".parse::<LogicalArg>().is_err());
        assert_eq!("plus".parse::<LogicalArg>().unwrap().0, LogicalQubit::plus());
    }
}
