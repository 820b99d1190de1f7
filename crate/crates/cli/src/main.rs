use std::collections::HashMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use loopsplit_core::james::{james_hopf, orbit_project, parse_relative};
use loopsplit_core::plocal::{vp, vp_binomial, vp_factorial};
use loopsplit_core::report::{named_series, named_subspace, run_verify, RunConfig, RunContext};
use loopsplit_core::{ArithError, PrimeConfig, RunError};

#[derive(Parser, Debug)]
#[command(
    name = "loopsplit",
    version,
    about = "Verify truncated loop-space splitting identities over F_p"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct GlobalArgs {
    /// Odd prime
    #[arg(long, global = true)]
    p: Option<u32>,
    /// Generators sit in degrees 2n-1 and 2n
    #[arg(long, global = true)]
    n: Option<u32>,
    /// Bockstein index
    #[arg(long, global = true)]
    r: Option<u32>,
    /// Truncation degree D
    #[arg(long, global = true)]
    max_degree: Option<u32>,
    /// Check to run (repeatable); default is every check
    #[arg(long = "check", global = true)]
    checks: Vec<String>,
    #[arg(long, env = "LOOPSPLIT_CACHE_DIR", global = true)]
    cache_dir: Option<PathBuf>,
    /// Where to write the JSON report
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    /// Worker threads
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// File of `key = value` lines using the flag names; flags win
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run verification checks and print the JSON report
    Verify,
    /// Print a Hilbert series as a JSON array
    Series {
        /// omega2, Vn, tensor, UL0, ULinf or truncated-<s>
        #[arg(long)]
        which: String,
    },
    /// Print the basis of a subspace in one degree
    Basis {
        /// L, L<k>, Linf, UL0 or ULinf
        #[arg(long)]
        name: String,
        #[arg(long)]
        degree: u32,
    },
    /// Print stage dimensions of the filtration
    Filtration,
    /// Explore a relative James word, e.g. `A = {a, b}; w = x a b`
    HopfWords {
        #[arg(long)]
        word: String,
        /// Only this James–Hopf invariant
        #[arg(long)]
        k: Option<usize>,
    },
    /// p-adic valuations of m, m! and optionally C(m, k)
    Valuation {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        k: Option<u64>,
    },
}

/// Invalid input; exits with code 2.
#[derive(Debug)]
struct UsageError(String);

impl From<ArithError> for UsageError {
    fn from(e: ArithError) -> Self {
        UsageError(e.to_string())
    }
}

fn parse_config_file(path: &PathBuf) -> Result<HashMap<String, String>, UsageError> {
    let text = fs::read_to_string(path)
        .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
    let mut out = HashMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            UsageError(format!(
                "{}:{}: expected key = value",
                path.display(),
                i + 1
            ))
        })?;
        out.insert(k.trim().replace('_', "-"), v.trim().to_string());
    }
    Ok(out)
}

fn merged(args: GlobalArgs) -> Result<RunConfig, UsageError> {
    let file = match &args.config {
        Some(path) => parse_config_file(path)?,
        None => HashMap::new(),
    };
    let num = |flag: Option<u32>, key: &str, default: u32| -> Result<u32, UsageError> {
        match (flag, file.get(key)) {
            (Some(v), _) => Ok(v),
            (None, Some(s)) => s
                .parse()
                .map_err(|_| UsageError(format!("config {key} = {s:?} is not a number"))),
            (None, None) => Ok(default),
        }
    };
    let prime = PrimeConfig::new(
        num(args.p, "p", 3)?,
        num(args.r, "r", 1)?,
        num(args.n, "n", 1)?,
        num(args.max_degree, "max-degree", 18)?,
    )?;
    let mut cfg = RunConfig::new(prime);
    cfg.checks = if args.checks.is_empty() {
        file.get("check")
            .map(|s| s.split(',').map(|c| c.trim().to_string()).collect())
            .unwrap_or_default()
    } else {
        args.checks
    };
    cfg.cache_dir = args
        .cache_dir
        .or_else(|| file.get("cache-dir").map(PathBuf::from));
    cfg.report = args
        .report
        .or_else(|| file.get("report").map(PathBuf::from));
    cfg.jobs = match (args.jobs, file.get("jobs")) {
        (Some(j), _) => Some(j),
        (None, Some(s)) => Some(
            s.parse()
                .map_err(|_| UsageError(format!("config jobs = {s:?} is not a number")))?,
        ),
        (None, None) => None,
    };
    cfg.validate().map_err(|e| UsageError(e.to_string()))?;
    Ok(cfg)
}

fn context(cfg: &RunConfig) -> RunContext {
    RunContext::new(
        cfg.prime,
        cfg.cache_dir
            .clone()
            .map(loopsplit_core::cache::BasisCache::new),
    )
}

fn run(cli: Cli) -> Result<ExitCode, RunError> {
    let cfg = match merged(cli.global) {
        Ok(c) => c,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            return Ok(ExitCode::from(2));
        }
    };
    if let Some(j) = cfg.jobs {
        if let Err(e) = loopsplit_core::report::configure_threads(j) {
            log::warn!("thread pool: {e}");
        }
    }
    match cli.command {
        Command::Verify => {
            let report = run_verify(&cfg)?;
            println!("{}", report.to_json());
            for c in report.checks.iter().filter(|c| !c.passed()) {
                eprintln!("FAIL {} (first failing degree {:?})", c.name, c.first_fail);
            }
            return Ok(ExitCode::from(report.exit_code() as u8));
        }
        Command::Series { which } => {
            let ctx = context(&cfg);
            let s = named_series(&ctx, &which)?;
            println!(
                "{}",
                serde_json::to_string(s.coeffs()).expect("integers serialize")
            );
        }
        Command::Basis { name, degree } => {
            let ctx = context(&cfg);
            let s = named_subspace(&ctx, &name)?;
            if degree > cfg.prime.max_degree {
                return Err(RunError::Config(format!(
                    "degree {degree} is above the max degree {}",
                    cfg.prime.max_degree
                )));
            }
            for v in s.basis(degree) {
                println!("{}", s.algebra().format_poly(&v));
            }
        }
        Command::Filtration => {
            let ctx = context(&cfg);
            let m = ctx.model()?;
            let cap = cfg.prime.max_degree;
            let header: Vec<String> = (0..=cap).map(|d| format!("{d:>5}")).collect();
            println!("{:<8}{}", "d", header.join(""));
            for s in &m.stages {
                let row: Vec<String> = (0..=cap)
                    .map(|d| format!("{:>5}", s.subspace.dim(d)))
                    .collect();
                println!("{:<8}{}", format!("L({})", s.k), row.join(""));
            }
        }
        Command::HopfWords { word, k } => {
            let (al, w) = parse_relative(&word).map_err(|e| RunError::Config(e.to_string()))?;
            println!("word: {}", al.format(&w));
            let proj = orbit_project(&al, &w).map_or("*", |l| al.name(l));
            println!("orbit class: {proj}");
            let ks: Vec<usize> = match k {
                Some(k) => vec![k],
                None => (1..=w.len().max(1)).collect(),
            };
            for k in ks {
                let h = james_hopf(&al, w.letters(), k);
                let parts: Vec<String> = h
                    .iter()
                    .map(|s| {
                        let names: Vec<&str> = s.0.iter().map(|&l| al.name(l)).collect();
                        format!("({})", names.join("∧"))
                    })
                    .collect();
                println!(
                    "H_{k}: {}",
                    if parts.is_empty() {
                        "1".into()
                    } else {
                        parts.join(" ")
                    }
                );
            }
        }
        Command::Valuation { m, k } => {
            let p = cfg.prime.p as u64;
            let mut out = serde_json::Map::new();
            out.insert("p".into(), p.into());
            out.insert("m".into(), m.into());
            if m > 0 {
                out.insert("vp".into(), vp(p, &m.into())?.into());
            }
            out.insert("vp_factorial".into(), vp_factorial(p, m).into());
            if let Some(k) = k {
                out.insert("k".into(), k.into());
                out.insert("vp_binomial".into(), vp_binomial(p, m, k)?.into());
            }
            println!("{}", serde_json::Value::Object(out));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(RunError::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(RunError::Arith(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
