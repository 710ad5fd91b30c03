//! Command-line front end: convergence tables and exactness checks for
//! distance-k graphs of Cartesian graph powers.
//!
//! Exit codes: 0 success, 1 check failure or certification mismatch,
//! 2 usage error, 3 engine error.

use clap::{ArgGroup, Parser, ValueEnum};
use distk::brute;
use distk::graph::Graph;
use distk::report::{
    self, CheckKind, EngineKind, GraphSource, HistSpec, OutputFormat, ReportError, RunConfig,
};
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    Tensor,
    Brute,
    Both,
}

impl From<EngineArg> for EngineKind {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Tensor => EngineKind::Tensor,
            EngineArg::Brute => EngineKind::Brute,
            EngineArg::Both => EngineKind::Both,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckArg {
    Decomposition,
    Identity38,
    Lln,
    Clt,
    Zdecay,
}

impl From<CheckArg> for CheckKind {
    fn from(c: CheckArg) -> Self {
        match c {
            CheckArg::Decomposition => CheckKind::Decomposition,
            CheckArg::Identity38 => CheckKind::Identity38,
            CheckArg::Lln => CheckKind::Lln,
            CheckArg::Clt => CheckKind::Clt,
            CheckArg::Zdecay => CheckKind::Zdecay,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutArg {
    Json,
    Csv,
}

/// Exact spectral moments of distance-k graphs of Cartesian graph powers.
#[derive(Debug, Parser)]
#[command(name = "distk", version, group = ArgGroup::new("source").required(true))]
struct Cli {
    /// Edge-list file: one "u v" pair per line, "#" comments, optional
    /// "n <count>" header line fixing the vertex count.
    #[arg(long, group = "source", value_name = "PATH")]
    graph: Option<PathBuf>,

    /// Built-in family tag: K:n, P:n, C:n, or S:n.
    #[arg(long, group = "source", value_name = "TAG")]
    family: Option<String>,

    /// Distance parameter of the product graph.
    #[arg(long, value_name = "K")]
    k: u32,

    /// Largest moment power in the table.
    #[arg(long, default_value_t = 6, value_name = "M")]
    mmax: u32,

    /// Copy counts, comma separated, strictly ascending.
    #[arg(
        long = "N",
        default_value = "1,2,4,8,16,32",
        value_delimiter = ',',
        value_name = "N,..."
    )]
    schedule: Vec<u64>,

    /// Moment engine: the tensor-power engine, the explicit brute-force
    /// engine, or both with exact cross-certification.
    #[arg(long, value_enum, default_value_t = EngineArg::Tensor)]
    engine: EngineArg,

    /// Named exactness checks to run (repeatable).
    #[arg(long = "check", value_enum, action = clap::ArgAction::Append)]
    checks: Vec<CheckArg>,

    /// Output format on stdout.
    #[arg(long, value_enum, default_value_t = OutArg::Json)]
    out: OutArg,

    /// Spectral histogram spec "BINS:LO:HI" (needs an explicit-size N).
    #[arg(long, value_name = "BINS:LO:HI")]
    hist: Option<String>,

    /// Seed for the histogram overlay sampler.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Largest explicit matrix dimension the brute engine may build
    /// (default from DISTK_EXPLICIT_CEILING, else 4096).
    #[arg(long, value_name = "DIM")]
    explicit_ceiling: Option<u64>,
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn parse_hist(raw: &str) -> Result<HistSpec, String> {
    let parts: Vec<&str> = raw.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("--hist expects BINS:LO:HI, got '{raw}'"));
    }
    let bins: u32 = parts[0]
        .parse()
        .map_err(|_| format!("--hist bin count '{}' is not a positive integer", parts[0]))?;
    let lo: f64 = parts[1]
        .parse()
        .map_err(|_| format!("--hist lower edge '{}' is not a number", parts[1]))?;
    let hi: f64 = parts[2]
        .parse()
        .map_err(|_| format!("--hist upper edge '{}' is not a number", parts[2]))?;
    if bins == 0 || !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(format!(
            "--hist needs BINS >= 1 and finite LO < HI, got '{raw}'"
        ));
    }
    Ok(HistSpec { bins, lo, hi })
}

fn load_graph(cli: &Cli) -> Result<(GraphSource, Graph), String> {
    if let Some(tag) = &cli.family {
        let g = Graph::family(tag).map_err(|e| format!("--family {tag}: {e}"))?;
        return Ok((GraphSource::Family(tag.clone()), g));
    }
    let path = cli.graph.as_ref().expect("clap enforces the source group");
    let text =
        std::fs::read_to_string(path).map_err(|e| format!("--graph {}: {e}", path.display()))?;
    let g = Graph::parse(&text).map_err(|e| format!("--graph {}: {e}", path.display()))?;
    Ok((GraphSource::File(path.clone()), g))
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    let hist = match cli.hist.as_deref().map(parse_hist).transpose() {
        Ok(h) => h,
        Err(msg) => return usage_error(&msg),
    };
    let (source, graph) = match load_graph(&cli) {
        Ok(pair) => pair,
        Err(msg) => return usage_error(&msg),
    };
    let explicit_ceiling = match cli.explicit_ceiling {
        Some(v) => v,
        None => match std::env::var(report::CEILING_ENV_VAR) {
            Ok(s) => match s.parse() {
                Ok(v) => v,
                Err(_) => {
                    return usage_error(&format!(
                        "{} must be a positive integer, got '{s}'",
                        report::CEILING_ENV_VAR
                    ))
                }
            },
            Err(_) => brute::DEFAULT_EXPLICIT_CEILING,
        },
    };

    let cfg = RunConfig {
        source,
        k: cli.k,
        m_max: cli.mmax,
        schedule: cli.schedule.clone(),
        engine: cli.engine.into(),
        checks: cli.checks.iter().map(|&c| c.into()).collect(),
        output: match cli.out {
            OutArg::Json => OutputFormat::Json,
            OutArg::Csv => OutputFormat::Csv,
        },
        hist,
        seed: cli.seed,
        explicit_ceiling,
    };

    let report = match report::run(&cfg, &graph) {
        Ok(r) => r,
        Err(ReportError::Config(msg)) => return usage_error(&msg),
        Err(e) => {
            let hint = match root_cause_is_ceiling(&e) {
                true => " (raise --explicit-ceiling or shrink --N)",
                false => "",
            };
            eprintln!("error: {e}{hint}");
            return ExitCode::from(3);
        }
    };

    let out = report::emit(&report, cfg.output);
    if std::io::stdout().write_all(out.as_bytes()).is_err() {
        return ExitCode::from(3);
    }
    for check in &report.checks {
        eprintln!(
            "check {}: {} ({})",
            check.name,
            if check.pass { "PASS" } else { "FAIL" },
            check.detail
        );
    }
    if cfg.engine == EngineKind::Both {
        let bad = report
            .rows
            .iter()
            .filter(|r| r.certified == Some(false))
            .count();
        if bad > 0 {
            eprintln!("certification: {bad} row(s) disagree between engines");
        } else {
            eprintln!(
                "certification: all {} rows agree exactly",
                report.rows.len()
            );
        }
    }
    ExitCode::from(report.exit_code())
}

fn root_cause_is_ceiling(e: &ReportError) -> bool {
    match e {
        ReportError::Brute(brute::BruteError::SizeCeilingExceeded { .. }) => true,
        ReportError::Row { source, .. } => root_cause_is_ceiling(source),
        _ => false,
    }
}
