//! Command-line front end.
//!
//! Every subcommand produces a JSON object which is rendered as a table,
//! CSV, or JSON. `--sweep name:start:stop:step` re-runs the subcommand with
//! `--name` set to each grid value and emits one row per value.
//!
//! Exit codes: 0 success, 1 failed reproduction check or I/O error,
//! 2 argument error, 3 domain error, 4 Monte-Carlo configuration error.

mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::awgn::{self, Channel, CodeSpec, Convention};
use crate::fading::{self, CsiMode, QuasiStaticConfig};
use crate::protocols::{self, AlohaConfig, Decoding, DownlinkConfig, TwoWayConfig, TwoWayObjective};
use crate::{mcsim, reproduce, Error};

pub use output::Format;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_MC_CONFIG: i32 = 4;

const DEFAULT_SIM_TRIALS: u64 = 1_000_000;

#[derive(Debug, Parser)]
#[command(name = "shortpacket", version, about = "Finite-blocklength toolkit for short-packet links")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// SNR in dB (converted once to a linear ratio)
    #[arg(long, global = true, default_value_t = 10.0, allow_negative_numbers = true)]
    snr_db: f64,
    /// Channel-use convention [default: complex; real for reproduce-paper]
    #[arg(long, global = true, value_enum)]
    convention: Option<ConventionArg>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Seed for Monte-Carlo subcommands
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Trial count for Monte-Carlo subcommands
    #[arg(long, global = true)]
    trials: Option<u64>,
    /// Write output to a file instead of standard output
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Sweep one numeric flag: name:start:stop:step
    #[arg(long, global = true)]
    sweep: Option<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ConventionArg {
    Complex,
    Real,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Complex => Convention::Complex,
            ConventionArg::Real => Convention::Real,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Coherent,
    Noncoherent,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum QsMethod {
    /// Adaptive quadrature over the fading distribution
    Quad,
    /// Monte-Carlo average over fading draws
    Mc,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Normal approximation of the maximum coding rate (with capacity and dispersion)
    Rate {
        #[arg(long)]
        n: f64,
        #[arg(long)]
        eps: f64,
    },
    /// Packet error probability eps*(k, n)
    Eps {
        #[arg(long)]
        k: f64,
        #[arg(long)]
        n: f64,
    },
    /// Smallest blocklength meeting a target error probability
    MinN {
        #[arg(long)]
        k: f64,
        #[arg(long)]
        eps: f64,
    },
    /// SISO quasi-static Rayleigh outage probability
    Outage {
        #[arg(long)]
        rate: f64,
    },
    /// SISO quasi-static Rayleigh outage capacity
    OutageCap {
        #[arg(long)]
        eps: f64,
    },
    /// Finite-blocklength error approximation for quasi-static Rayleigh fading
    QsEps {
        #[arg(long)]
        rate: f64,
        #[arg(long)]
        n: f64,
        #[arg(long, value_enum, default_value_t = QsMethod::Quad)]
        method: QsMethod,
    },
    /// Monte-Carlo MIMO block-fading outage probability
    MimoOutage {
        #[arg(long, default_value_t = 1)]
        tx: usize,
        #[arg(long, default_value_t = 1)]
        rx: usize,
        #[arg(long, default_value_t = 1)]
        branches: u64,
        #[arg(long)]
        rate: f64,
    },
    /// Diversity-multiplexing tradeoff curve, optionally evaluated at a diversity gain
    Dmt {
        #[arg(long)]
        tx: usize,
        #[arg(long)]
        rx: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Coherent)]
        mode: ModeArg,
        #[arg(long)]
        nc: Option<u64>,
        #[arg(long)]
        d: Option<f64>,
    },
    /// Noncoherent block-fading capacity pre-log
    Prelog {
        #[arg(long)]
        tx: usize,
        #[arg(long)]
        rx: usize,
        #[arg(long)]
        nc: u64,
    },
    /// Two-way data/ACK split: optimize for a total --n or a --target reliability,
    /// or evaluate a given --n1 with --n
    TwowayOpt {
        #[arg(long)]
        data_bits: f64,
        #[arg(long)]
        ack_bits: f64,
        #[arg(long, default_value_t = 0.0)]
        info_bits: f64,
        #[arg(long, conflicts_with = "target", required_unless_present = "target")]
        n: Option<u64>,
        #[arg(long)]
        target: Option<f64>,
        #[arg(long, requires = "n")]
        n1: Option<u64>,
    },
    /// Fixed TDD exchange with equal slots
    TwowayTdd {
        #[arg(long)]
        bits: f64,
        #[arg(long)]
        info_bits: f64,
        #[arg(long)]
        slot: f64,
    },
    /// Downlink TDMA versus concatenation
    Downlink {
        #[arg(long)]
        devices: u64,
        #[arg(long)]
        bits: f64,
        #[arg(long)]
        slot: f64,
    },
    /// Framed ALOHA success metric for a given slot count
    Aloha {
        #[command(flatten)]
        aloha: AlohaArgs,
        #[arg(long)]
        slots: u64,
    },
    /// Framed ALOHA slot-count optimization
    AlohaOpt {
        #[command(flatten)]
        aloha: AlohaArgs,
        #[arg(long)]
        k_max: Option<u64>,
    },
    /// Monte-Carlo framed ALOHA
    SimAloha {
        #[command(flatten)]
        aloha: AlohaArgs,
        #[arg(long)]
        slots: u64,
    },
    /// Monte-Carlo two-way exchange
    SimTwoway {
        #[arg(long)]
        data_bits: f64,
        #[arg(long)]
        ack_bits: f64,
        #[arg(long)]
        n1: f64,
        #[arg(long)]
        n2: f64,
    },
    /// Run the bundled reference checks; exit 0 iff all pass
    ReproducePaper {
        /// Only list the check names
        #[arg(long)]
        list: bool,
    },
}

#[derive(Debug, Args)]
struct AlohaArgs {
    #[arg(long)]
    devices: u64,
    #[arg(long)]
    bits: f64,
    #[arg(long)]
    frame: f64,
    /// Treat collision-free packets as always decoded
    #[arg(long)]
    error_free: bool,
}

impl AlohaArgs {
    fn config(&self, ch: Channel) -> Result<AlohaConfig, Error> {
        let decoding = if self.error_free { Decoding::ErrorFree } else { Decoding::FiniteBlocklength };
        Ok(AlohaConfig::new(self.devices, self.bits, self.frame, ch)?.with_decoding(decoding))
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) => EXIT_MC_CONFIG,
        Error::Domain(_) | Error::Validity(_) | Error::Infeasible { .. } => EXIT_DOMAIN,
    }
}

/// Result of one command before rendering.
enum Outcome {
    Record(Value),
    /// Reproduction report; the flag is true when every check passed.
    Checks(Value, bool),
}

fn execute(common: &Common, command: &Command) -> Result<Outcome, Error> {
    let convention = |fallback: Convention| common.convention.map_or(fallback, Into::into);
    let channel = || Channel::from_db(common.snr_db, convention(Convention::Complex));
    let snr = || channel().map(|c| c.snr());
    let trials = common.trials.unwrap_or(DEFAULT_SIM_TRIALS);
    let seed = common.seed;

    let record = match command {
        Command::Rate { n, eps } => {
            let r = awgn::rate_na(&channel()?, *n, *eps)?;
            serde_json::to_value(r).expect("serializable")
        }
        Command::Eps { k, n } => {
            let ch = channel()?;
            let code = CodeSpec::new(*k, *n)?;
            json!({
                "eps": awgn::eps_star(&ch, &code)?,
                "ln_eps": awgn::ln_eps_star(&ch, &code)?,
            })
        }
        Command::MinN { k, eps } => json!({ "n": awgn::min_blocklength(&channel()?, *k, *eps)? }),
        Command::Outage { rate } => json!({ "outage": fading::outage_prob_siso(snr()?, *rate)? }),
        Command::OutageCap { eps } => json!({ "capacity": fading::outage_capacity_siso(snr()?, *eps)? }),
        Command::QsEps { rate, n, method } => match method {
            QsMethod::Quad => json!({ "eps": fading::eps_quasistatic(snr()?, *rate, *n)? }),
            QsMethod::Mc => report_value(&fading::eps_quasistatic_mc(snr()?, *rate, *n, trials, seed)?),
        },
        Command::MimoOutage { tx, rx, branches, rate } => {
            let cfg = QuasiStaticConfig::new(snr()?, *tx, *rx)?;
            report_value(&fading::outage_prob_mimo_mc(&cfg, *branches, *rate, trials, seed)?)
        }
        Command::Dmt { tx, rx, mode, nc, d } => {
            let mode = match mode {
                ModeArg::Coherent => CsiMode::Coherent,
                ModeArg::Noncoherent => CsiMode::Noncoherent,
            };
            let curve = fading::dmt_curve(*tx, *rx, mode, *nc)?;
            let mut v = serde_json::to_value(&curve).expect("serializable");
            if let Some(d) = d {
                v["multiplexing"] = json!(fading::dmt_eval(&curve, *d)?);
            }
            v
        }
        Command::Prelog { tx, rx, nc } => json!({ "prelog": fading::noncoherent_prelog(*tx, *rx, *nc)? }),
        Command::TwowayOpt { data_bits, ack_bits, info_bits, n, target, n1 } => {
            let objective = match (n, target) {
                (Some(n), _) => TwoWayObjective::MaxReliability { n: *n },
                (None, Some(t)) => TwoWayObjective::MinBlocklength { target: *t },
                (None, None) => unreachable!("clap requires --n or --target"),
            };
            let cfg = TwoWayConfig::new(*data_bits, *ack_bits, *info_bits, channel()?, objective)?;
            match (n1, n) {
                (Some(n1), Some(n)) => {
                    if *n1 >= *n {
                        return Err(Error::Domain(format!("--n1 {n1} must be below --n {n}")));
                    }
                    let reliability = protocols::twoway_reliability(&cfg, *n1 as f64, (n - n1) as f64)?;
                    json!({
                        "n": n,
                        "n1": n1,
                        "n2": n - n1,
                        "reliability": reliability,
                        "throughput": reliability.get() * info_bits / *n as f64,
                    })
                }
                _ => serde_json::to_value(protocols::twoway_optimize(&cfg)?).expect("serializable"),
            }
        }
        Command::TwowayTdd { bits, info_bits, slot } => {
            serde_json::to_value(protocols::twoway_tdd_eval(*bits, *info_bits, *slot, &channel()?)?)
                .expect("serializable")
        }
        Command::Downlink { devices, bits, slot } => {
            let cfg = DownlinkConfig::new(*devices, *bits, *slot, channel()?)?;
            serde_json::to_value(protocols::downlink_compare(&cfg)?).expect("serializable")
        }
        Command::Aloha { aloha, slots } => {
            let cfg = aloha.config(channel()?)?;
            json!({
                "slots": slots,
                "slot_length": cfg.frame / *slots as f64,
                "success": protocols::aloha_success(&cfg, *slots)?,
            })
        }
        Command::AlohaOpt { aloha, k_max } => {
            let plan = protocols::aloha_optimize(&aloha.config(channel()?)?, *k_max)?;
            let profile: Vec<Value> = plan.profile.iter().map(|(k, p)| json!({ "k": k, "success": p })).collect();
            json!({ "k_opt": plan.k_opt, "success": plan.success, "profile": profile })
        }
        Command::SimAloha { aloha, slots } => {
            let cfg = aloha.config(channel()?)?;
            let r = mcsim::sim_aloha(&cfg, *slots, trials, seed)?;
            json!({
                "per_slot_throughput": r.per_slot_throughput.estimate,
                "per_slot_std_error": r.per_slot_throughput.std_error,
                "per_device_success": r.per_device_success.estimate,
                "per_device_std_error": r.per_device_success.std_error,
                "trials": trials,
                "seed": seed,
            })
        }
        Command::SimTwoway { data_bits, ack_bits, n1, n2 } => {
            let objective = TwoWayObjective::MaxReliability { n: (n1 + n2).max(2.0) as u64 };
            let cfg = TwoWayConfig::new(*data_bits, *ack_bits, 0.0, channel()?, objective)?;
            report_value(&mcsim::sim_twoway(&cfg, *n1, *n2, trials, seed)?)
        }
        Command::ReproducePaper { list } => {
            if *list {
                let names: Vec<Value> = reproduce::checks().iter().map(|c| json!({ "name": c.name })).collect();
                return Ok(Outcome::Checks(json!({ "checks": names }), true));
            }
            let outcomes = reproduce::run_all(convention(Convention::Real));
            let passed = outcomes.iter().all(|o| o.passed);
            let rows = serde_json::to_value(&outcomes).expect("serializable");
            return Ok(Outcome::Checks(json!({ "checks": rows, "passed": passed }), passed));
        }
    };
    Ok(Outcome::Record(record))
}

/// Flat view of a Monte-Carlo report.
fn report_value(r: &mcsim::SimReport) -> Value {
    json!({
        "estimate": r.estimate,
        "std_error": r.std_error,
        "trials": r.trials,
        "seed": r.seed,
    })
}

/// Parsed sweep specification.
#[derive(Debug, Clone, PartialEq)]
struct Sweep {
    name: String,
    values: Vec<f64>,
}

fn parse_sweep(spec: &str) -> Result<Sweep, String> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [name, start, stop, step] = parts[..] else {
        return Err(format!("sweep must be name:start:stop:step, got {spec:?}"));
    };
    let num = |s: &str| s.parse::<f64>().map_err(|_| format!("invalid sweep number {s:?}"));
    let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
    if step.is_nan() || step <= 0.0 || stop < start || !start.is_finite() || !stop.is_finite() {
        return Err(format!("sweep needs start <= stop and step > 0, got {spec:?}"));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    if count > 1_000_000 {
        return Err("sweep has more than 10^6 points".into());
    }
    let name = name.trim_start_matches("--").to_owned();
    Ok(Sweep { name, values: (0..count).map(|i| start + i as f64 * step).collect() })
}

/// `args` with every `--flag value` / `--flag=value` occurrence removed.
fn strip_flag(args: &[OsString], flag: &str) -> Vec<OsString> {
    let long = format!("--{flag}");
    let prefix = format!("--{flag}=");
    let mut out = Vec::with_capacity(args.len());
    let mut skip = false;
    for a in args {
        if skip {
            skip = false;
            continue;
        }
        let s = a.to_string_lossy();
        if s == long {
            skip = true;
        } else if !s.starts_with(&prefix) {
            out.push(a.clone());
        }
    }
    out
}

/// Runs the command line `args` (including the program name), writing
/// results to `out` and diagnostics to `err`. Returns the process exit code.
fn parse(args: &[OsString]) -> std::result::Result<Cli, clap::Error> {
    let mut cmd = Cli::command().mut_subcommands(|s| s.allow_negative_numbers(true));
    let matches = cmd.try_get_matches_from_mut(args)?;
    Cli::from_arg_matches(&matches).map_err(|e| e.format(&mut cmd))
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match parse(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };

    let (rendered, code) = match &cli.common.sweep {
        None => match execute(&cli.common, &cli.command) {
            Ok(Outcome::Record(v)) => (output::render(&v, cli.common.format), EXIT_OK),
            Ok(Outcome::Checks(v, passed)) => {
                let text = match cli.common.format {
                    Format::Table => output::render_checks(&v),
                    f => output::render(&v, f),
                };
                (text, if passed { EXIT_OK } else { EXIT_FAILED })
            }
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                return exit_code(&e);
            }
        },
        Some(spec) => match run_sweep(&args, spec, &cli) {
            Ok(text) => (text, EXIT_OK),
            Err((code, msg)) => {
                let _ = writeln!(err, "{msg}");
                return code;
            }
        },
    };

    let written = match &cli.common.output {
        Some(path) => std::fs::write(path, rendered.as_bytes()),
        None => out.write_all(rendered.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: cannot write output: {e}");
        return EXIT_FAILED;
    }
    code
}

fn run_sweep(args: &[OsString], spec: &str, cli: &Cli) -> Result<String, (i32, String)> {
    if matches!(cli.command, Command::ReproducePaper { .. }) {
        return Err((EXIT_USAGE, "error: reproduce-paper cannot be swept".into()));
    }
    let sweep = parse_sweep(spec).map_err(|m| (EXIT_USAGE, format!("error: {m}")))?;
    let base = strip_flag(&strip_flag(args, "sweep"), &sweep.name);
    let mut rows = Vec::with_capacity(sweep.values.len());
    for &v in &sweep.values {
        let mut point_args = base.clone();
        point_args.push(format!("--{}", sweep.name).into());
        point_args.push(v.to_string().into());
        let point = parse(&point_args)
            .map_err(|e| (EXIT_USAGE, format!("error: cannot sweep --{}: {}", sweep.name, e.kind())))?;
        let record = match execute(&point.common, &point.command) {
            Ok(Outcome::Record(r)) => r,
            Ok(Outcome::Checks(..)) => unreachable!("reproduce-paper is rejected above"),
            Err(e) => return Err((exit_code(&e), format!("error at --{} {v}: {e}", sweep.name))),
        };
        let mut row = Map::new();
        row.insert(sweep.name.clone(), json!(v));
        if let Value::Object(fields) = record {
            for (k, val) in fields {
                if val.is_number() && k != sweep.name {
                    row.insert(k, val);
                }
            }
        }
        rows.push(row);
    }
    Ok(output::render_sweep(&sweep.name, &rows, cli.common.format))
}
