mod args;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{load_config, Cli, Command, Flags, Format};
use qreduce::harness::{brute_force_pauli, run_sweep, SweepMode, SweepSpec};
use qreduce::statevec::DENSE_MAX_N;
use qreduce::{Backend, Decision, DecoderMode, LogicalQubit};

const DEFAULT_TRIALS: usize = 10_000;
const DEFAULT_STATIONS: [usize; 4] = [1, 2, 4, 8];

#[derive(Debug)]
enum CliError {
    Usage(String),
    Core(qreduce::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(qreduce::Error::Argument(_)) => 2,
            CliError::Core(qreduce::Error::Resource(_)) => 3,
            CliError::Core(qreduce::Error::Contract(_) | qreduce::Error::Invariant(_)) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<qreduce::Error> for CliError {
    fn from(e: qreduce::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<String> for CliError {
    fn from(msg: String) -> Self {
        CliError::Usage(msg)
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qreduce {}: {e}", cli.command.name());
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: &Command) -> CliResult<()> {
    let mut flags = command.flags().clone();
    if let Some(path) = flags.config.clone() {
        flags = flags.merged_over(load_config(&path)?);
    }
    let (text, format) = match command {
        Command::Analytic(_) => analytic(&flags)?,
        Command::Simulate(_) => simulate(&flags, false)?,
        Command::Sweep(_) => simulate(&flags, true)?,
        Command::Zeno(_) => zeno(&flags)?,
        Command::Oracle(_) => oracle(&flags)?,
    };
    log::debug!("rendered {format:?} output");
    write_output(&flags, &text)
}

fn write_output(flags: &Flags, text: &str) -> CliResult<()> {
    match &flags.out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Usage(format!("cannot write output: {e}"))),
    }
}

fn grid_of(flags: &Flags, mode: SweepMode) -> CliResult<Vec<f64>> {
    let (name, grid, unused) = match mode {
        SweepMode::Pauli | SweepMode::Oracle => ("p", &flags.p, [("chi", &flags.chi), ("wt", &flags.wt)]),
        SweepMode::Unitary => ("chi", &flags.chi, [("p", &flags.p), ("wt", &flags.wt)]),
        SweepMode::Zeno => ("wt", &flags.wt, [("p", &flags.p), ("chi", &flags.chi)]),
    };
    for (other, value) in unused {
        if value.is_some() {
            return usage(format!("--{other} does not apply to {mode} mode (use --{name})"));
        }
    }
    let Some(grid) = grid else {
        return usage(format!("{mode} mode needs --{name}"));
    };
    let values = grid.values(flags.log_grid)?;
    if values.is_empty() {
        return usage(format!("--{name} is empty"));
    }
    Ok(values)
}

fn sweep_spec(flags: &Flags, mode: SweepMode) -> CliResult<SweepSpec> {
    if flags.ledger && mode != SweepMode::Oracle {
        return usage("--ledger only applies to the oracle subcommand");
    }
    let ns = flags.n.clone().map(|v| v.0).unwrap_or_else(|| vec![if mode == SweepMode::Oracle { 2 } else { 3 }]);
    let stations = match (&flags.stations, mode) {
        (Some(m), SweepMode::Zeno) => m.0.clone(),
        (None, SweepMode::Zeno) => DEFAULT_STATIONS.to_vec(),
        (Some(_), _) => return usage(format!("--M does not apply to {mode} mode")),
        (None, _) => vec![1],
    };
    Ok(SweepSpec {
        mode,
        ns,
        noise: grid_of(flags, mode)?,
        stations,
        trials: flags.trials.unwrap_or(DEFAULT_TRIALS),
        seed: flags.seed.unwrap_or(0),
        decision: flags.decision.unwrap_or(Decision::Expectation),
        backend: flags.backend.unwrap_or(Backend::Dense),
        decoder: flags.decoder.unwrap_or(DecoderMode::Reduce),
        t_prime: flags.t_prime.unwrap_or(0),
        logical: flags.logical.map(|l| l.0).unwrap_or_else(LogicalQubit::plus),
        threads: flags.threads,
        record_timing: flags.timing,
        dense_limit: flags.dense_limit.unwrap_or(DENSE_MAX_N),
    })
}

fn render_sweep(spec: &SweepSpec, format: Format) -> CliResult<String> {
    let stats = run_sweep(spec)?;
    Ok(match format {
        Format::Csv => stats.to_csv(),
        Format::Structured => stats.to_json() + "\n",
        Format::Table => output::sweep_table(&stats),
    })
}

fn simulate(flags: &Flags, sweep: bool) -> CliResult<(String, Format)> {
    let mode = flags.mode.unwrap_or(SweepMode::Pauli);
    let spec = sweep_spec(flags, mode)?;
    if !sweep && (spec.ns.len() != 1 || spec.noise.len() != 1 || spec.stations.len() != 1) {
        return usage("simulate runs a single point; use sweep for grids");
    }
    let format = flags.format.unwrap_or(if sweep { Format::Csv } else { Format::Table });
    Ok((render_sweep(&spec, format)?, format))
}

fn zeno(flags: &Flags) -> CliResult<(String, Format)> {
    if flags.mode.is_some_and(|m| m != SweepMode::Zeno) {
        return usage("the zeno subcommand always runs zeno mode");
    }
    let spec = sweep_spec(flags, SweepMode::Zeno)?;
    let format = flags.format.unwrap_or(Format::Table);
    Ok((render_sweep(&spec, format)?, format))
}

fn oracle(flags: &Flags) -> CliResult<(String, Format)> {
    if flags.mode.is_some_and(|m| m != SweepMode::Oracle) {
        return usage("the oracle subcommand always runs oracle mode");
    }
    let spec = sweep_spec(flags, SweepMode::Oracle)?;
    spec.validate()?;
    let format = flags.format.unwrap_or(Format::Table);
    let mut reports = Vec::new();
    for &n in &spec.ns {
        for &p in &spec.noise {
            reports.push(brute_force_pauli(n, p, p, p, &spec.logical)?);
        }
    }
    if flags.ledger && reports.len() != 1 {
        return usage("--ledger needs a single n and p");
    }
    Ok((output::oracle(&reports, flags.ledger, format), format))
}

fn analytic(flags: &Flags) -> CliResult<(String, Format)> {
    if flags.mode.is_some() || flags.chi.is_some() || flags.wt.is_some() || flags.ledger {
        return usage("analytic takes only --p, --n and --M");
    }
    let ps = grid_of(flags, SweepMode::Pauli)?;
    let ns = flags.n.clone().map(|v| v.0).unwrap_or_else(|| vec![3]);
    let stations = flags.stations.clone().map(|v| v.0).unwrap_or_default();
    if let Some(&bad) = ps.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return usage(format!("p must lie in [0, 1], got {bad}"));
    }
    if ns.contains(&0) || stations.contains(&0) {
        return usage("n and M must be at least 1");
    }
    let format = flags.format.unwrap_or(Format::Table);
    Ok((output::analytic(&ns, &ps, &stations, format)?, format))
}
