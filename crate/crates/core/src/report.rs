//! Run configuration, convergence/check execution, and report emission.
//!
//! The report renders the limit theorem as a table: for each copy count N
//! and moment power m, the exact normalized moment of the distance-k
//! adjacency of the N-th Cartesian power next to its Gaussian/Hermite
//! limit, plus optional partition tables, spectra, and named exactness
//! checks. Output is deterministic: identical configuration yields
//! byte-identical bytes (timestamps come only from `SOURCE_DATE_EPOCH`).

use crate::brute::{self, BruteError, Histogram};
use crate::graph::Graph;
use crate::hermite;
use crate::moments::{self, MomentError};
use crate::scaled::{rational_to_f64, ScaledValue};
use crate::Rational;
use num_traits::{Signed as _, Zero};
use rand::{Rng as _, SeedableRng as _};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;
use std::fmt;
use std::fmt::Write as _;

/// Sample count for the heuristic limit-law overlay.
pub const HIST_SAMPLES: u32 = 65536;

/// Environment variable supplying the default explicit-size ceiling.
pub const CEILING_ENV_VAR: &str = "DISTK_EXPLICIT_CEILING";

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Moment(#[from] MomentError),
    #[error(transparent)]
    Brute(#[from] BruteError),
    #[error("at N = {n_copies}, m = {m}: {source}")]
    Row {
        n_copies: u64,
        m: u32,
        source: Box<ReportError>,
    },
    #[error("output write failed: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EngineKind {
    Tensor,
    Brute,
    Both,
}

impl EngineKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EngineKind::Tensor => "tensor",
            EngineKind::Brute => "brute",
            EngineKind::Both => "both",
        }
    }
}

impl fmt::Display for EngineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CheckKind {
    Decomposition,
    Identity38,
    Lln,
    Clt,
    Zdecay,
}

impl CheckKind {
    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Decomposition => "decomposition",
            CheckKind::Identity38 => "identity38",
            CheckKind::Lln => "lln",
            CheckKind::Clt => "clt",
            CheckKind::Zdecay => "zdecay",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HistSpec {
    pub bins: u32,
    pub lo: f64,
    pub hi: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum GraphSource {
    Family(String),
    File(std::path::PathBuf),
}

impl fmt::Display for GraphSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSource::Family(tag) => write!(f, "family {tag}"),
            GraphSource::File(path) => write!(f, "file {}", path.display()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub source: GraphSource,
    pub k: u32,
    pub m_max: u32,
    pub schedule: Vec<u64>,
    pub engine: EngineKind,
    pub checks: Vec<CheckKind>,
    pub output: OutputFormat,
    pub hist: Option<HistSpec>,
    pub seed: u64,
    pub explicit_ceiling: u64,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ReportError> {
        if self.schedule.is_empty() {
            return Err(ReportError::Config("--N needs at least one value".into()));
        }
        if self.schedule.iter().any(|&n| n == 0) {
            return Err(ReportError::Config("--N values must be positive".into()));
        }
        if !self.schedule.windows(2).all(|w| w[0] < w[1]) {
            return Err(ReportError::Config(
                "--N values must be strictly ascending".into(),
            ));
        }
        if self.m_max == 0 {
            return Err(ReportError::Config("--mmax must be at least 1".into()));
        }
        if let Some(h) = &self.hist {
            if h.bins == 0 || !(h.lo < h.hi) {
                return Err(ReportError::Config(
                    "--hist needs BINS >= 1 and LO < HI".into(),
                ));
            }
        }
        if self.explicit_ceiling < 2 {
            return Err(ReportError::Config(
                "--explicit-ceiling must be at least 2".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphMeta {
    pub source: String,
    pub vertices: u32,
    pub edges: u64,
    pub diameter: u32,
    pub mean_degree: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub tool: &'static str,
    pub version: &'static str,
    pub timestamp: Option<u64>,
    pub graph: GraphMeta,
    pub k: u32,
    pub m_max: u32,
    pub schedule: Vec<u64>,
    pub engine: String,
    pub explicit_ceiling: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub n_copies: u64,
    pub m: u32,
    pub raw_exact: String,
    pub normalized: f64,
    pub limit_exact: String,
    pub limit: f64,
    pub gap: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certified: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PartitionRow {
    pub n_copies: u64,
    pub lambda: String,
    pub raw_exact: String,
    pub normalized: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct HistBlock {
    pub n_copies: u64,
    pub scale: f64,
    pub samples: u32,
    pub note: String,
    pub spectrum: Histogram,
    pub overlay: Histogram,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub meta: Meta,
    pub rows: Vec<Row>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partitions: Option<Vec<PartitionRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub histogram: Option<HistBlock>,
    pub checks: Vec<CheckResult>,
}

impl Report {
    /// Process exit code for this report: 1 when a check failed or a
    /// certification mismatch occurred, 0 otherwise.
    pub fn exit_code(&self) -> u8 {
        let check_fail = self.checks.iter().any(|c| !c.pass);
        let cert_fail = self.rows.iter().any(|r| r.certified == Some(false));
        u8::from(check_fail || cert_fail)
    }
}

/// Verifies that the explicit dimension for `n_copies` stays within the
/// ceiling and narrows the count for the explicit builders.
fn feasible_copies(g: &Graph, n_copies: u64, ceiling: u64) -> Result<u32, BruteError> {
    let mut dim: u128 = 1;
    for _ in 0..n_copies {
        dim = dim.saturating_mul(g.vertex_count() as u128);
        if dim > ceiling as u128 {
            return Err(BruteError::SizeCeilingExceeded {
                required: dim,
                ceiling,
            });
        }
    }
    Ok(n_copies as u32)
}

fn with_row_context<T>(n_copies: u64, m: u32, r: Result<T, ReportError>) -> Result<T, ReportError> {
    r.map_err(|e| ReportError::Row {
        n_copies,
        m,
        source: Box::new(e),
    })
}

struct ConvergenceData {
    rows: Vec<Row>,
    partitions: Option<Vec<PartitionRow>>,
    histogram: Option<HistBlock>,
}

/// The main table: for each (N, m), the exact moment of the distance-k
/// adjacency, its N^(km/2)-normalization, and the Hermite limit.
pub fn run_convergence(cfg: &RunConfig, g: &Graph) -> Result<Report, ReportError> {
    cfg.validate()?;
    let data = convergence_data(cfg, g)?;
    Ok(Report {
        meta: build_meta(cfg, g),
        rows: data.rows,
        partitions: data.partitions,
        histogram: data.histogram,
        checks: Vec::new(),
    })
}

fn convergence_data(cfg: &RunConfig, g: &Graph) -> Result<ConvergenceData, ReportError> {
    let c = g.mean_degree();
    let mut rows = Vec::new();
    for &n in &cfg.schedule {
        // One explicit build per N covers every m on the brute side.
        let oracle: Option<Vec<Rational>> = if cfg.engine == EngineKind::Tensor {
            None
        } else {
            let nc = feasible_copies(g, n, cfg.explicit_ceiling)?;
            let explicit = brute::distance_k_adjacency(g, nc, cfg.k, cfg.explicit_ceiling)?;
            Some(brute::trace_moments(&explicit, cfg.m_max)?)
        };
        for m in 1..=cfg.m_max {
            let fast = if cfg.engine == EngineKind::Brute {
                None
            } else {
                Some(with_row_context(
                    n,
                    m,
                    moments::moment_distance_k(g, n, cfg.k, m).map_err(ReportError::from),
                )?)
            };
            let (raw, normalized) = match (&fast, &oracle) {
                (Some(r), _) => (r.raw.clone(), r.normalized),
                (None, Some(tr)) => {
                    let sv = ScaledValue::from_rational(tr[m as usize].clone());
                    let norm = moments::normalized_f64(&sv, &c, n, cfg.k * m);
                    (sv, norm)
                }
                (None, None) => unreachable!("some engine always runs"),
            };
            let certified = match (&fast, &oracle) {
                (Some(r), Some(tr)) => Some(r.raw.as_rational() == Some(&tr[m as usize])),
                _ => None,
            };
            let limit_exact = hermite::limit_moment(&c, cfg.k, m);
            let limit = rational_to_f64(&limit_exact);
            rows.push(Row {
                n_copies: n,
                m,
                raw_exact: raw.to_string(),
                normalized,
                limit_exact: limit_exact.to_string(),
                limit,
                gap: (normalized - limit).abs(),
                certified,
            });
        }
    }

    let partitions = if cfg.checks.contains(&CheckKind::Decomposition) && cfg.k >= 1 {
        Some(partition_table(cfg, g)?)
    } else {
        None
    };
    let histogram = cfg
        .hist
        .map(|spec| histogram_block(cfg, g, spec))
        .transpose()?;
    Ok(ConvergenceData {
        rows,
        partitions,
        histogram,
    })
}

/// Per-partition second moments: how the weight-k decomposition splits the
/// distance-k variable at each N.
fn partition_table(cfg: &RunConfig, g: &Graph) -> Result<Vec<PartitionRow>, ReportError> {
    let mut out = Vec::new();
    for &n in &cfg.schedule {
        for lam in moments::partitions(cfg.k) {
            let r = with_row_context(
                n,
                2,
                moments::moment_partition(g, n, &lam, 2).map_err(ReportError::from),
            )?;
            out.push(PartitionRow {
                n_copies: n,
                lambda: lam.to_string(),
                raw_exact: r.raw.to_string(),
                normalized: r.normalized,
            });
        }
    }
    Ok(out)
}

fn histogram_block(cfg: &RunConfig, g: &Graph, spec: HistSpec) -> Result<HistBlock, ReportError> {
    // Largest scheduled N whose explicit dimension fits the ceiling.
    let mut chosen: Option<u32> = None;
    for &n in cfg.schedule.iter().rev() {
        if let Ok(nc) = feasible_copies(g, n, cfg.explicit_ceiling) {
            chosen = Some(nc);
            break;
        }
    }
    let nc = match chosen {
        Some(nc) => nc,
        None => {
            return Err(feasible_copies(g, cfg.schedule[0], cfg.explicit_ceiling)
                .expect_err("no scheduled N fits the ceiling")
                .into())
        }
    };
    let explicit = brute::distance_k_adjacency(g, nc, cfg.k, cfg.explicit_ceiling)?;
    let eigs = brute::jacobi_eigenvalues_default(&explicit)?;
    let scale = (nc as f64).powf(cfg.k as f64 / 2.0);
    let spectrum = brute::spectral_histogram(&eigs, scale, spec.bins, spec.lo, spec.hi);

    // Seeded sampler of the limit law c^(k/2)·H_k(g)/k!, g standard normal.
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let poly = hermite::monic_hermite(cfg.k);
    let cf = rational_to_f64(&g.mean_degree());
    let factorial: f64 = (1..=cfg.k).fold(1.0, |a, i| a * i as f64);
    let factor = cf.sqrt().powi(cfg.k as i32) / factorial;
    let samples: Vec<f64> = (0..HIST_SAMPLES)
        .map(|_| {
            let gv: f64 = rng.sample(StandardNormal);
            factor * poly.eval_f64(gv)
        })
        .collect();
    let overlay = brute::spectral_histogram(&samples, 1.0, spec.bins, spec.lo, spec.hi);
    Ok(HistBlock {
        n_copies: nc as u64,
        scale,
        samples: HIST_SAMPLES,
        note: "overlay is a seeded sampler of the limit law; the theorem guarantees \
               moment convergence, not pointwise densities"
            .into(),
        spectrum,
        overlay,
    })
}

/// Runs the requested named checks (deduplicated, in request order).
pub fn run_checks(cfg: &RunConfig, g: &Graph) -> Result<Vec<CheckResult>, ReportError> {
    cfg.validate()?;
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for &check in cfg.checks.iter().filter(|c| seen.insert(**c)) {
        let result = match check {
            CheckKind::Decomposition => check_decomposition(cfg, g)?,
            CheckKind::Identity38 => check_identity38(cfg, g)?,
            CheckKind::Lln => check_lln(cfg, g)?,
            CheckKind::Clt => check_clt(cfg, g)?,
            CheckKind::Zdecay => check_zdecay(g)?,
        };
        out.push(result);
    }
    Ok(out)
}

/// The weight-k partition terms, built explicitly, must sum to the
/// explicit distance-k adjacency entrywise, at every scheduled N.
fn check_decomposition(cfg: &RunConfig, g: &Graph) -> Result<CheckResult, ReportError> {
    let name = CheckKind::Decomposition.name();
    if cfg.k == 0 {
        return Ok(CheckResult {
            name,
            pass: true,
            detail: "k = 0 is the identity matrix; nothing to decompose".into(),
        });
    }
    for &n in &cfg.schedule {
        let nc = feasible_copies(g, n, cfg.explicit_ceiling)?;
        let want = brute::distance_k_adjacency(g, nc, cfg.k, cfg.explicit_ceiling)?;
        let mut sum = brute::partition_term_matrix(
            g,
            nc,
            moments::partitions(cfg.k)[0].counts(),
            cfg.explicit_ceiling,
        )?;
        for lam in moments::partitions(cfg.k).iter().skip(1) {
            sum.add_assign(&brute::partition_term_matrix(
                g,
                nc,
                lam.counts(),
                cfg.explicit_ceiling,
            )?);
        }
        if sum != want {
            let dim = want.dim();
            for x in 0..dim {
                for y in 0..dim {
                    if sum.get(x, y) != want.get(x, y) {
                        return Ok(CheckResult {
                            name,
                            pass: false,
                            detail: format!(
                                "N={n}: entry ({x},{y}) sums to {} but distance matrix has {}",
                                sum.get(x, y),
                                want.get(x, y)
                            ),
                        });
                    }
                }
            }
        }
    }
    Ok(CheckResult {
        name,
        pass: true,
        detail: format!(
            "sum over the {} weight-{} partition terms equals the distance-{} adjacency \
             entrywise at N in {:?}",
            moments::partitions(cfg.k).len(),
            cfg.k,
            cfg.k,
            cfg.schedule
        ),
    })
}

/// Three-term recurrence between consecutive normalized elementary sums,
/// checked entrywise on explicit scaled matrices at N = 3, n = 1, 2:
/// `b1·b_n = (n+1)·b_{n+1} + (N−n+1)·b_{n−1} + F_n(b²−1)`.
fn check_identity38(cfg: &RunConfig, g: &Graph) -> Result<CheckResult, ReportError> {
    let name = CheckKind::Identity38.name();
    let n_copies: u32 = 3;
    feasible_copies(g, n_copies as u64, cfg.explicit_ceiling)?;
    let c = g.mean_degree();
    let ceiling = cfg.explicit_ceiling;
    for n in 1..=2u32 {
        let b1 = brute::scaled_elementary_matrix(g, n_copies, 1, ceiling)?;
        let bn = brute::scaled_elementary_matrix(g, n_copies, n, ceiling)?;
        let lhs = b1.matmul(&bn, &c);
        let up = brute::scaled_elementary_matrix(g, n_copies, n + 1, ceiling)?
            .scale(&Rational::from_integer((n as i64 + 1).into()));
        let down = brute::scaled_elementary_matrix(g, n_copies, n - 1, ceiling)?.scale(
            &Rational::from_integer((n_copies as i64 - n as i64 + 1).into()),
        );
        let corr = brute::correction_sum_matrix(g, n_copies, n, ceiling)?;
        let rhs = up
            .add(&down)
            .and_then(|s| s.add(&corr))
            .expect("all three terms share dimension and half-power parity");
        let dim = lhs.dim();
        for x in 0..dim {
            for y in 0..dim {
                if lhs.entry(x, y) != rhs.entry(x, y) {
                    return Ok(CheckResult {
                        name,
                        pass: false,
                        detail: format!(
                            "N={n_copies}, n={n}: entry ({x},{y}) is {} on the left, {} on the right",
                            lhs.entry(x, y),
                            rhs.entry(x, y)
                        ),
                    });
                }
            }
        }
    }
    Ok(CheckResult {
        name,
        pass: true,
        detail: format!("entrywise exact for n in {{1, 2}} at N = {n_copies}"),
    })
}

/// Law of large numbers for the normalized adjacency mean: the first
/// moment vanishes and the second moment of `b^(N,1)/N` is exactly 1/N.
fn check_lln(cfg: &RunConfig, g: &Graph) -> Result<CheckResult, ReportError> {
    let name = CheckKind::Lln.name();
    let c = g.mean_degree();
    for &n in &cfg.schedule {
        let m1 = moments::moment_elementary(g, n, 1, 1)?;
        if !m1.raw.is_zero() {
            return Ok(CheckResult {
                name,
                pass: false,
                detail: format!("N={n}: first moment is {}, expected 0", m1.raw),
            });
        }
        let m2 = moments::moment_elementary(g, n, 1, 2)?;
        let big_n = Rational::from_integer(n.into());
        let value =
            m2.raw.as_rational().expect("integer-matrix moment").clone() / (&c * &big_n * &big_n);
        let want = Rational::from_integer(1.into()) / &big_n;
        if value != want {
            return Ok(CheckResult {
                name,
                pass: false,
                detail: format!("N={n}: second moment of the mean is {value}, expected {want}"),
            });
        }
    }
    Ok(CheckResult {
        name,
        pass: true,
        detail: format!(
            "mean of the normalized adjacency has moment (0, 1/N) at N in {:?}",
            cfg.schedule
        ),
    })
}

/// Central limit behavior of `b^(N,1)/sqrt(N)`: moments (0, 1) exactly, and
/// the fourth moment within 1/100 of the Gaussian value 3 at the largest
/// scheduled N.
fn check_clt(cfg: &RunConfig, g: &Graph) -> Result<CheckResult, ReportError> {
    let name = CheckKind::Clt.name();
    let n = *cfg.schedule.last().expect("validated nonempty");
    let m1 = moments::moment_b(g, n, 1, 1)?;
    if !m1.raw.is_zero() {
        return Ok(CheckResult {
            name,
            pass: false,
            detail: format!("N={n}: first moment is {}, expected 0", m1.raw),
        });
    }
    let m2 = moments::moment_b(g, n, 1, 2)?;
    let one = Rational::from_integer(1.into());
    if m2.normalized_exact().as_ref() != Some(&one) {
        return Ok(CheckResult {
            name,
            pass: false,
            detail: format!("N={n}: second moment is {}, expected 1", m2.raw),
        });
    }
    let m4 = moments::moment_b(g, n, 1, 4)?;
    let val = m4
        .normalized_exact()
        .expect("even power keeps the value rational");
    let gap = (val - Rational::from_integer(3.into())).abs();
    let threshold = Rational::new(1.into(), 100.into());
    if gap >= threshold {
        return Ok(CheckResult {
            name,
            pass: false,
            detail: format!("N={n}: fourth moment differs from 3 by {gap} (threshold 1/100)"),
        });
    }
    Ok(CheckResult {
        name,
        pass: true,
        detail: format!("moments (0, 1) exact; fourth-moment gap {gap} < 1/100 at N={n}"),
    })
}

/// Correction decay: the second moment of the normalized correction term at
/// n = 1 is strictly decreasing over N = 4, 16, 64 (or identically zero).
fn check_zdecay(g: &Graph) -> Result<CheckResult, ReportError> {
    let name = CheckKind::Zdecay.name();
    let ns = [4u64, 16, 64];
    let mut vals = Vec::new();
    for &n in &ns {
        let r = moments::moment_z(g, n, 1, 2)?;
        vals.push(
            r.normalized_exact()
                .expect("even scale keeps the value rational"),
        );
    }
    let all_zero = vals.iter().all(Zero::is_zero);
    let decreasing = vals.windows(2).all(|w| w[0] > w[1]);
    let shown: Vec<String> = vals.iter().map(Rational::to_string).collect();
    if all_zero {
        Ok(CheckResult {
            name,
            pass: true,
            detail: format!("identically zero at N in {ns:?} (correction vanishes)"),
        })
    } else if decreasing {
        Ok(CheckResult {
            name,
            pass: true,
            detail: format!("strictly decreasing: {} at N in {ns:?}", shown.join(" > ")),
        })
    } else {
        Ok(CheckResult {
            name,
            pass: false,
            detail: format!(
                "sequence {} at N in {ns:?} fails to decrease",
                shown.join(", ")
            ),
        })
    }
}

fn build_meta(cfg: &RunConfig, g: &Graph) -> Meta {
    Meta {
        tool: "distk",
        version: env!("CARGO_PKG_VERSION"),
        timestamp: std::env::var("SOURCE_DATE_EPOCH")
            .ok()
            .and_then(|s| s.parse().ok()),
        graph: GraphMeta {
            source: cfg.source.to_string(),
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            diameter: g.diameter(),
            mean_degree: g.mean_degree().to_string(),
        },
        k: cfg.k,
        m_max: cfg.m_max,
        schedule: cfg.schedule.clone(),
        engine: cfg.engine.as_str().to_string(),
        explicit_ceiling: cfg.explicit_ceiling,
        seed: cfg.seed,
    }
}

/// Full run: convergence table plus requested checks.
pub fn run(cfg: &RunConfig, g: &Graph) -> Result<Report, ReportError> {
    let mut report = run_convergence(cfg, g)?;
    report.checks = run_checks(cfg, g)?;
    Ok(report)
}

pub fn emit_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

pub fn emit_csv(report: &Report) -> String {
    let mut s = String::new();
    let certified = report.meta.engine == "both";
    s.push_str("N,m,raw_exact,normalized,limit_exact,limit,gap");
    if certified {
        s.push_str(",certified");
    }
    s.push('\n');
    for row in &report.rows {
        let _ = write!(
            s,
            "{},{},{},{},{},{},{}",
            row.n_copies, row.m, row.raw_exact, row.normalized, row.limit_exact, row.limit, row.gap
        );
        if certified {
            let _ = write!(s, ",{}", row.certified.unwrap_or(false));
        }
        s.push('\n');
    }
    if let Some(parts) = &report.partitions {
        s.push_str("#\n# partitions (m = 2)\n# N,lambda,raw_exact,normalized\n");
        for p in parts {
            let _ = writeln!(
                s,
                "# {},{},{},{}",
                p.n_copies, p.lambda, p.raw_exact, p.normalized
            );
        }
    }
    if let Some(h) = &report.histogram {
        let _ = writeln!(
            s,
            "#\n# histogram N={} scale={} samples={}",
            h.n_copies, h.scale, h.samples
        );
        let join = |v: &[f64]| v.iter().map(f64::to_string).collect::<Vec<_>>().join(",");
        let join_u = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        let _ = writeln!(s, "# edges: {}", join(&h.spectrum.edges));
        let _ = writeln!(s, "# counts: {}", join_u(&h.spectrum.counts));
        let _ = writeln!(s, "# overlay_counts: {}", join_u(&h.overlay.counts));
        let _ = writeln!(
            s,
            "# out_of_range: spectrum {}/{} overlay {}/{}",
            h.spectrum.below, h.spectrum.above, h.overlay.below, h.overlay.above
        );
        let _ = writeln!(s, "# note: {}", h.note);
    }
    for check in &report.checks {
        let _ = writeln!(
            s,
            "# check {}: {}: {}",
            check.name,
            if check.pass { "PASS" } else { "FAIL" },
            check.detail
        );
    }
    s
}

pub fn emit(report: &Report, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => emit_json(report),
        OutputFormat::Csv => emit_csv(report),
    }
}
