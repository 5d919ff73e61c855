//! `qboson` command-line front end.
//!
//! Exit codes: 0 success (or overall pass), 1 a verification check failed,
//! 2 usage error, 3 parameter degeneracy.

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qboson::coeffs::{self, CoeffVariant};
use qboson::hall_littlewood::{self, HlCache};
use qboson::lattice::{Partition, ShiftPair};
use qboson::operators::{self, LatticeEntry, LatticeFunction};
use qboson::params::{Mode, ParamJson, ParamSet};
use qboson::rational::{format_rational, parse_rational, Rational};
use qboson::suite::{self, Check, ParamSource, SuiteConfig};
use qboson::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "qboson", version, about = "Exact q-boson quantum integrals and their verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Three,
    Four,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Restricted,
    Literal,
}

impl From<VariantArg> for CoeffVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Restricted => CoeffVariant::RestrictedInnerSum,
            VariantArg::Literal => CoeffVariant::LiteralInnerSum,
        }
    }
}

#[derive(Args, Clone)]
struct Common {
    /// Parameter mode.
    #[arg(long, value_enum, default_value = "three")]
    mode: ModeArg,
    /// Inner-sum variant for U.
    #[arg(long, value_enum, default_value = "restricted")]
    variant: VariantArg,
    /// Parameters as `t=p/q,t0=..,t1=..,t2=..[,t3=..]`. When absent, one generic
    /// tuple is drawn from `--seed`.
    #[arg(long)]
    params: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 13)]
    bound: i64,
    /// Write the JSON result to this file instead of standard output.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args, Clone)]
struct LambdaArg {
    /// Partition as comma-separated parts, e.g. `2,1,0`.
    #[arg(long)]
    lambda: String,
}

#[derive(Args, Clone)]
struct PairArg {
    /// `J+` as comma-separated 1-based indices.
    #[arg(long, default_value = "")]
    plus: String,
    /// `J-` as comma-separated 1-based indices.
    #[arg(long, default_value = "")]
    minus: String,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suites and emit a JSON report.
    Suite {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        cutoff: u32,
        /// Largest order l (defaults to n).
        #[arg(long)]
        lmax: Option<usize>,
        /// Comma-separated subset of gauge,h1,commute,pieri,principal,degenerate.
        #[arg(long)]
        check: Option<String>,
        /// Number of random tuples per mode.
        #[arg(long, default_value_t = 3)]
        tuples: usize,
        /// Pin t2 = 0 on random tuples.
        #[arg(long)]
        t2_zero: bool,
        /// Include wall time per check (makes the report time-dependent).
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Operator coefficient W_{J+,J-}(λ).
    CoeffW {
        #[command(flatten)]
        lambda: LambdaArg,
        #[command(flatten)]
        pair: PairArg,
        #[command(flatten)]
        common: Common,
    },
    /// Diagonal coefficient U_{K,m}(λ).
    CoeffU {
        #[command(flatten)]
        lambda: LambdaArg,
        /// K as comma-separated 1-based indices.
        #[arg(long)]
        k: String,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Pieri coefficient V_{J+,J-}(λ).
    CoeffV {
        #[command(flatten)]
        lambda: LambdaArg,
        #[command(flatten)]
        pair: PairArg,
        #[command(flatten)]
        common: Common,
    },
    /// Gauge function h(λ).
    GaugeH {
        #[command(flatten)]
        lambda: LambdaArg,
        #[command(flatten)]
        common: Common,
    },
    /// Apply H_l to δ_λ or to a lattice function given as JSON.
    Apply {
        #[arg(long)]
        l: usize,
        /// Apply δ_λ.
        #[arg(long)]
        lambda: Option<String>,
        /// Lattice function as JSON `[{"partition":[..],"value":"p/q"},..]` or `@file`.
        #[arg(long)]
        f: Option<String>,
        /// Use the explicit second-order form of H_1.
        #[arg(long)]
        explicit: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Hall–Littlewood polynomial P_λ.
    Hl {
        #[command(flatten)]
        lambda: LambdaArg,
        #[command(flatten)]
        common: Common,
    },
    /// Pieri multiplier E_l.
    EPoly {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Check one Pieri identity and print the report.
    Pieri {
        #[command(flatten)]
        lambda: LambdaArg,
        #[arg(long)]
        l: usize,
        #[command(flatten)]
        common: Common,
    },
    /// P_λ at the principal specialisation point.
    Principal {
        #[command(flatten)]
        lambda: LambdaArg,
        #[command(flatten)]
        common: Common,
    },
    /// Constant relating H_1 to the particle Hamiltonian.
    ConstantShift {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Commutator [H_k, H_l] applied to δ_λ.
    Commute {
        #[command(flatten)]
        lambda: LambdaArg,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[command(flatten)]
        common: Common,
    },
}

enum Failure {
    Usage(String),
    Degenerate(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ParameterDegeneracy(_) => Failure::Degenerate(e.to_string()),
            Error::Invalid(_)
            | Error::Config(_)
            | Error::InvalidOrder { .. }
            | Error::IndexOutOfRange { .. }
            | Error::ArityMismatch(..) => Failure::Usage(e.to_string()),
            _ => Failure::Other(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn parse_list(s: &str) -> CliResult<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().map_err(|_| usage(format!("bad index {x:?}"))))
        .collect()
}

fn parse_partition(s: &str) -> CliResult<Partition> {
    let parts = s
        .split(',')
        .map(|x| x.trim().parse::<u32>().map_err(|_| usage(format!("bad part {x:?}"))))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Partition::new(parts)?)
}

fn parse_pair(p: &PairArg) -> CliResult<ShiftPair> {
    Ok(ShiftPair::new(parse_list(&p.plus)?, parse_list(&p.minus)?)?)
}

fn single_mode(m: ModeArg) -> CliResult<Mode> {
    match m {
        ModeArg::Three => Ok(Mode::ThreeParam),
        ModeArg::Four => Ok(Mode::FourParam),
        ModeArg::Both => Err(usage("this command needs --mode three or --mode four")),
    }
}

fn parse_param_json(s: &str) -> CliResult<ParamJson> {
    let mut vals: [Option<Rational>; 5] = Default::default();
    for kv in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        let (k, v) = kv.split_once('=').ok_or_else(|| usage(format!("expected k=v, got {kv:?}")))?;
        let idx = match k.trim() {
            "t" => 0,
            "t0" => 1,
            "t1" => 2,
            "t2" => 3,
            "t3" => 4,
            other => return Err(usage(format!("unknown parameter {other:?}"))),
        };
        vals[idx] = Some(parse_rational(v).map_err(|e| usage(e.to_string()))?);
    }
    let [t, t0, t1, t2, t3] = vals;
    let need = |v: Option<Rational>, name: &str| v.ok_or_else(|| usage(format!("missing {name}")));
    Ok(ParamJson {
        t: need(t, "t")?,
        t0: need(t0, "t0")?,
        t1: need(t1, "t1")?,
        t2: need(t2, "t2")?,
        t3: t3.unwrap_or_default(),
    })
}

/// Explicit tuple from `--params`, or one seeded random draw; guarded for size `n`.
fn params_for(common: &Common, mode: Mode, n: usize) -> CliResult<ParamSet> {
    let p = match &common.params {
        Some(s) => parse_param_json(s)?.into_params(mode)?,
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
            ParamSet::random(mode, n, common.bound, &mut rng)?.0
        }
    };
    p.check_generic(n)?;
    Ok(p)
}

fn rat_json(x: &Rational) -> Value {
    json!(format_rational(x))
}

fn emit(value: &Value, out: &Option<String>) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Other(e.to_string()))?;
    match out {
        Some(path) => fs::write(path, text + "\n").map_err(|e| Failure::Other(e.to_string())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn parse_function(spec: &str, n_hint: Option<usize>) -> CliResult<LatticeFunction> {
    let text = match spec.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| usage(e.to_string()))?,
        None => spec.to_string(),
    };
    let entries: Vec<LatticeEntry> =
        serde_json::from_str(&text).map_err(|e| usage(format!("bad lattice function: {e}")))?;
    let n = entries
        .first()
        .map(|e| e.partition.n())
        .or(n_hint)
        .ok_or_else(|| usage("empty lattice function needs --lambda to fix n"))?;
    Ok(LatticeFunction::from_entries(n, entries)?)
}

/// Returns whether the command "passed" (only meaningful for suite/pieri/commute).
fn run(cli: Cli) -> CliResult<bool> {
    match cli.command {
        Command::Suite { n, cutoff, lmax, check, tuples, t2_zero, timing, common } => {
            let mut cfg = SuiteConfig::new(n, cutoff, lmax.unwrap_or(n));
            cfg.modes = match common.mode {
                ModeArg::Three => vec![Mode::ThreeParam],
                ModeArg::Four => vec![Mode::FourParam],
                ModeArg::Both => vec![Mode::ThreeParam, Mode::FourParam],
            };
            cfg.variant = common.variant.into();
            cfg.timing = timing;
            if let Some(list) = check {
                cfg.checks = list
                    .split(',')
                    .map(|c| Check::parse(c.trim()))
                    .collect::<Result<_, _>>()?;
            }
            cfg.params = match &common.params {
                Some(s) => ParamSource::Explicit(
                    s.split(';').map(parse_param_json).collect::<CliResult<_>>()?,
                ),
                None => ParamSource::Random {
                    seed: common.seed,
                    count: tuples,
                    bound: common.bound,
                    zero_t2: t2_zero,
                },
            };
            let report = suite::run_suite(&cfg)?;
            eprint!("{}", report.summary());
            emit(&serde_json::to_value(&report).expect("report serializes"), &common.out)?;
            Ok(report.pass)
        }
        Command::CoeffW { lambda, pair, common } => {
            let lambda = parse_partition(&lambda.lambda)?;
            let p = params_for(&common, single_mode(common.mode)?, lambda.n())?;
            emit(&rat_json(&coeffs::coeff_w(&lambda, &parse_pair(&pair)?, &p)?), &common.out)?;
            Ok(true)
        }
        Command::CoeffV { lambda, pair, common } => {
            let lambda = parse_partition(&lambda.lambda)?;
            let p = params_for(&common, single_mode(common.mode)?, lambda.n())?;
            emit(&rat_json(&coeffs::coeff_v(&lambda, &parse_pair(&pair)?, &p)?), &common.out)?;
            Ok(true)
        }
        Command::CoeffU { lambda, k, m, common } => {
            let lambda = parse_partition(&lambda.lambda)?;
            let p = params_for(&common, single_mode(common.mode)?, lambda.n())?;
            let u = coeffs::coeff_u(&lambda, &parse_list(&k)?, m, &p, common.variant.into())?;
            emit(&rat_json(&u), &common.out)?;
            Ok(true)
        }
        Command::GaugeH { lambda, common } => {
            let lambda = parse_partition(&lambda.lambda)?;
            let p = params_for(&common, single_mode(common.mode)?, lambda.n())?;
            emit(&rat_json(&coeffs::gauge_h(&lambda, &p)?), &common.out)?;
            Ok(true)
        }
        Command::Apply { l, lambda, f, explicit, common } => {
            let lambda = lambda.as_deref().map(parse_partition).transpose()?;
            let f = match (&f, &lambda) {
                (Some(spec), _) => parse_function(spec, lambda.as_ref().map(Partition::n))?,
                (None, Some(mu)) => LatticeFunction::delta(mu),
                (None, None) => return Err(usage("apply needs --lambda or --f")),
            };
            let p = params_for(&common, single_mode(common.mode)?, f.n())?;
            let g = if explicit {
                if l != 1 {
                    return Err(usage("--explicit is only defined for l = 1"));
                }
                operators::apply_h1_explicit(&f, &p)?
            } else {
                operators::apply_h(l, &f, &p, common.variant.into())?
            };
            emit(&serde_json::to_value(&g).expect("serializes"), &common.out)?;
            Ok(true)
        }
        Command::Hl { lambda, common } => {
            let lambda = parse_partition(&lambda.lambda)?;
            let p = params_for(&common, single_mode(common.mode)?, lambda.n())?;
            let hl = hall_littlewood::hall_littlewood(&lambda, &p)?;
            emit(&serde_json::to_value(&hl).expect("serializes"), &common.out)?;
            Ok(true)
        }
        Command::EPoly { n, l, common } => {
            let p = params_for(&common, single_mode(common.mode)?, n)?;
            let e = hall_littlewood::e_poly(n, l, &p)?;
            emit(&serde_json::to_value(&e).expect("serializes"), &common.out)?;
            Ok(true)
        }
        Command::Pieri { lambda, l, common } => {
            let lambda = parse_partition(&lambda.lambda)?;
            let p = params_for(&common, single_mode(common.mode)?, lambda.n())?;
            let report =
                hall_littlewood::verify_pieri(&lambda, l, &HlCache::new(p), common.variant.into())?;
            emit(&serde_json::to_value(&report).expect("serializes"), &common.out)?;
            Ok(report.pass)
        }
        Command::Principal { lambda, common } => {
            let lambda = parse_partition(&lambda.lambda)?;
            let p = params_for(&common, single_mode(common.mode)?, lambda.n())?;
            emit(&rat_json(&hall_littlewood::principal_specialize(&lambda, &p)?), &common.out)?;
            Ok(true)
        }
        Command::ConstantShift { n, common } => {
            let p = params_for(&common, single_mode(common.mode)?, n)?;
            emit(&rat_json(&coeffs::constant_shift(n, &p)), &common.out)?;
            Ok(true)
        }
        Command::Commute { lambda, k, l, common } => {
            let lambda = parse_partition(&lambda.lambda)?;
            let p = params_for(&common, single_mode(common.mode)?, lambda.n())?;
            let c = operators::commutator(
                k,
                l,
                &LatticeFunction::delta(&lambda),
                &p,
                common.variant.into(),
            )?;
            emit(&serde_json::to_value(&c).expect("serializes"), &common.out)?;
            Ok(c.is_zero())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Degenerate(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
