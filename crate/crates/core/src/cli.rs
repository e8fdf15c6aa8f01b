//! The `symplorbit` command line: enumerate, verify, hasse, degenerate and
//! compare.
//!
//! Every command builds its whole document in memory and writes it once, to
//! `--output` or standard output. Exit codes: 0 success, 1 a verification
//! failed, 2 usage or configuration error.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::orbits::{
    exchange_curve_with_spectators, exchange_display_order, exchange_expected_coefficients, dual_action,
    f_sigma, orbit_dimension, pi_rank, random_unipotent, verify_curve, Functional,
};
use crate::perm::{enumerate_involutions, BruhatPoset, Involution, WeylType, DEFAULT_MAX_N};
use crate::rank_order::{
    leq_r, leq_rstar, rank_matrix, rank_matrix_counted, rook_placement, verify_equivalences,
    HasseFormat, InvolutionPoset, RankMatrix,
};
use crate::matrix::index_at;
use crate::roots::{support, OrthogonalSet, Root};
use crate::scalar::{Laurent, Rational};

/// Environment variable overriding the largest accepted n.
pub const MAX_N_ENV: &str = "SYMPLORBIT_MAX_N";

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Equivalences,
    Dimension,
    RankInvariance,
    Exchange,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Equivalences => "equivalences",
            Suite::Dimension => "dimension",
            Suite::RankInvariance => "rank-invariance",
            Suite::Exchange => "exchange",
        }
    }

    pub fn statement(self, mode: WeylType) -> &'static str {
        match (self, mode) {
            (Suite::Equivalences, WeylType::C) => {
                "for involutions of W(C_n): sigma <= tau in Bruhat order iff R_sigma <= R_tau iff R*_sigma <= R*_tau"
            }
            (Suite::Equivalences, WeylType::A) => {
                "for involutions of S_n: sigma <= tau in Bruhat order iff R_sigma <= R_tau iff R*_sigma <= R*_tau"
            }
            (Suite::Dimension, _) => "dim of the B-orbit of f_sigma equals the length of sigma",
            (Suite::RankInvariance, _) => "rk pi_{i,j}(u.f_sigma) = (R*_sigma)_{i,j} for u in U",
            (Suite::Exchange, _) => {
                "g(s).f_tau has coefficients 1 at e_i+e_j and 2e_k, 0 at e_k+e_j, -s at e_i+e_k, s^2 at 2e_i, f_tau elsewhere, and tends to f_sigma"
            }
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "symplorbit", version, about = "Bruhat order, rank matrices and B-orbits for involutions in W(C_n)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Rank of the group.
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// C for W(C_n), A for S_n.
    #[arg(long, default_value = "C")]
    pub mode: WeylType,
    /// Seed for every random sample.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write the document here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List involutions with supports, lengths and R* matrices.
    Enumerate(Common),
    /// Run the verification suites.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Suites to run; all of them by default.
        #[arg(long = "suite", value_enum)]
        suites: Vec<Suite>,
        /// Random unipotent elements per involution in the rank-invariance suite.
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Hasse diagram of the involution poset.
    Hasse(Common),
    /// The degeneration curve for indices i < k < j.
    Degenerate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        j: usize,
    },
    /// Compare two involutions under the three orders.
    Compare {
        #[command(flatten)]
        common: Common,
        sigma: Involution,
        tau: Involution,
    },
}

/// Resolved settings shared by all commands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub n: usize,
    pub mode: WeylType,
    pub seed: u64,
    pub max_n: usize,
    pub output: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn new(n: usize, mode: WeylType, seed: u64, format: Format) -> Self {
        Self { n, mode, seed, max_n: DEFAULT_MAX_N, output: None, format }
    }

    fn from_common(c: &Common, default: Format, allowed: &[Format]) -> std::result::Result<Self, String> {
        let format = c.format.unwrap_or(default);
        if !allowed.contains(&format) {
            let names: Vec<_> = allowed.iter().map(|f| format!("{f:?}").to_lowercase()).collect();
            return Err(format!("format {} is not available here; use one of {}", format!("{format:?}").to_lowercase(), names.join(", ")));
        }
        let max_n = max_n_from_env()?;
        let cfg = Self { n: c.n, mode: c.mode, seed: c.seed, max_n, output: c.output.clone(), format };
        cfg.validate().map_err(|e| e.to_string())?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        crate::perm::check_bound(self.n, self.max_n)
    }
}

fn max_n_from_env() -> std::result::Result<usize, String> {
    match std::env::var(MAX_N_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| format!("{MAX_N_ENV}={v} is not a nonnegative integer")),
        Err(_) => Ok(DEFAULT_MAX_N),
    }
}

/// A finished command: the document and the exit code it implies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub document: String,
    pub passed: bool,
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn rstar_rows(m: &RankMatrix) -> Vec<String> {
    m.rstar.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")).collect()
}

#[derive(Serialize)]
struct EnumerateRow {
    window: String,
    length: usize,
    support: OrthogonalSet,
    rstar: Vec<Vec<u32>>,
}

/// Involutions sorted by length, then window, with support and R*.
pub fn cmd_enumerate(cfg: &RunConfig) -> Result<Outcome> {
    cfg.validate()?;
    let rows = enumerate_involutions(cfg.n, cfg.mode, cfg.max_n)?
        .into_iter()
        .map(|s| {
            let m = rank_matrix_counted(&rook_placement(&s, cfg.mode)?);
            Ok(EnumerateRow { window: s.window(), length: s.length_in(cfg.mode), support: support(&s)?.set, rstar: m.rstar })
        })
        .collect::<Result<Vec<_>>>()?;
    let document = match cfg.format {
        Format::Json => to_json(&json!({ "n": cfg.n, "mode": cfg.mode, "involutions": rows })),
        Format::Csv => {
            let mut out = String::from("window,length,support,rstar\n");
            for r in &rows {
                let rstar: Vec<String> = r.rstar.iter().map(|row| row.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")).collect();
                let _ = writeln!(out, "\"{}\",{},\"{}\",\"{}\"", r.window, r.length, r.support, rstar.join(";"));
            }
            out
        }
        _ => {
            let mut out = String::new();
            for r in &rows {
                let _ = writeln!(out, "{}  length {}  support {}", r.window, r.length, r.support);
                for line in r.rstar.iter() {
                    let cells: Vec<String> = line.iter().map(|x| x.to_string()).collect();
                    let _ = writeln!(out, "    {}", cells.join(" "));
                }
            }
            out
        }
    };
    Ok(Outcome { document, passed: true })
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub statement: &'static str,
    pub passed: bool,
    pub details: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub mode: WeylType,
    pub seed: u64,
    pub passed: bool,
    pub suites: Vec<SuiteResult>,
}

impl VerifyReport {
    pub fn to_json(&self) -> String {
        to_json(self)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("symplorbit verify n={} mode={} seed={}\n", self.n, self.mode, self.seed);
        for s in &self.suites {
            let _ = writeln!(out, "{} {}: {}", if s.passed { "PASS" } else { "FAIL" }, s.name, s.statement);
        }
        let _ = writeln!(out, "{}", if self.passed { "all suites passed" } else { "some suites failed" });
        out
    }
}

fn suite_equivalences(cfg: &RunConfig) -> Result<(bool, Value)> {
    let r = verify_equivalences(cfg.n, cfg.mode, cfg.max_n)?;
    Ok((r.passed(), serde_json::to_value(&r).expect("serializable")))
}

fn suite_dimension(cfg: &RunConfig) -> Result<(bool, Value)> {
    let invs = enumerate_involutions(cfg.n, WeylType::C, cfg.max_n)?;
    let results = invs
        .par_iter()
        .map(|s| Ok((s.window(), s.length(), orbit_dimension(s)?)))
        .collect::<Result<Vec<_>>>()?;
    let failures: Vec<Value> = results
        .iter()
        .filter(|(_, l, d)| l != d)
        .map(|(w, l, d)| json!({ "sigma": w, "length": l, "dimension": d }))
        .collect();
    Ok((failures.is_empty(), json!({ "involutions": results.len(), "failures": failures })))
}

/// A per-task seed that does not depend on scheduling.
pub fn task_seed(seed: u64, task: u64) -> u64 {
    seed ^ task.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Every π-rank of `u.f_σ` at a strictly lower position against R*_σ, for
/// `samples` seeded random `u ∈ U`. Returns the number of mismatches.
pub fn rank_invariance_mismatches(sigma: &Involution, samples: usize, seed: u64) -> Result<usize> {
    let n = sigma.n();
    let f: Functional<Rational> = f_sigma(sigma)?;
    let rstar = rank_matrix(&rook_placement(sigma, WeylType::C)?)?.rstar;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = 0;
    for _ in 0..samples {
        let u = random_unipotent(n, &mut rng);
        let moved = dual_action(&u, &f)?;
        for p in 0..2 * n {
            for q in 0..p {
                if pi_rank(&moved, index_at(n, p), index_at(n, q)) != rstar[p][q] as usize {
                    bad += 1;
                }
            }
        }
    }
    Ok(bad)
}

fn suite_rank_invariance(cfg: &RunConfig, samples: usize) -> Result<(bool, Value)> {
    let invs = enumerate_involutions(cfg.n, WeylType::C, cfg.max_n)?;
    let results = invs
        .par_iter()
        .enumerate()
        .map(|(t, s)| Ok((s.window(), rank_invariance_mismatches(s, samples, task_seed(cfg.seed, t as u64))?)))
        .collect::<Result<Vec<_>>>()?;
    let failures: Vec<Value> = results
        .iter()
        .filter(|(_, bad)| *bad > 0)
        .map(|(w, bad)| json!({ "sigma": w, "mismatched_entries": bad }))
        .collect();
    Ok((
        failures.is_empty(),
        json!({ "involutions": results.len(), "samples_per_involution": samples, "failures": failures }),
    ))
}

/// Index triples `i < k < j ≤ n`.
pub fn exchange_triples(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for i in 1..=n {
        for k in i + 1..=n {
            for j in k + 1..=n {
                out.push((i, k, j));
            }
        }
    }
    out
}

/// Long roots on the indices outside `{i, k, j}`.
pub fn long_spectators(n: usize, i: usize, k: usize, j: usize) -> OrthogonalSet {
    OrthogonalSet::new((1..=n).filter(|m| ![i, k, j].contains(m)).map(Root::Long)).expect("orthogonal")
}

/// Whether the curve for `(i, k, j)` with the given spectators matches the
/// coefficient case split and has limit `f_σ`.
pub fn check_exchange(n: usize, i: usize, k: usize, j: usize, spectators: &OrthogonalSet) -> Result<bool> {
    let curve = exchange_curve_with_spectators(i, k, j, n, spectators)?;
    let report = verify_curve(&curve)?;
    Ok(report.limit_ok && report.coefficients == exchange_expected_coefficients(&curve, i, k, j)?)
}

fn suite_exchange(cfg: &RunConfig) -> Result<(bool, Value)> {
    let mut checked = Vec::new();
    for (i, k, j) in exchange_triples(cfg.n) {
        let extra = long_spectators(cfg.n, i, k, j);
        let variants = if extra.is_empty() { vec![extra] } else { vec![OrthogonalSet::empty(), extra] };
        for spectators in variants {
            let ok = check_exchange(cfg.n, i, k, j, &spectators)?;
            checked.push(json!({ "i": i, "k": k, "j": j, "spectators": spectators, "ok": ok }));
        }
    }
    let passed = checked.iter().all(|c| c["ok"] == json!(true));
    Ok((passed, json!({ "curves": checked })))
}

/// Run the selected suites and assemble the report in a fixed order.
pub fn cmd_verify(cfg: &RunConfig, suites: &[Suite], samples: usize) -> Result<VerifyReport> {
    cfg.validate()?;
    let mut selected: Vec<Suite> = if suites.is_empty() {
        vec![Suite::Equivalences, Suite::Dimension, Suite::RankInvariance, Suite::Exchange]
    } else {
        suites.to_vec()
    };
    selected.sort();
    selected.dedup();
    if cfg.mode == WeylType::A {
        selected.retain(|s| *s == Suite::Equivalences);
    }
    let results = selected
        .par_iter()
        .map(|&suite| {
            let (passed, details) = match suite {
                Suite::Equivalences => suite_equivalences(cfg)?,
                Suite::Dimension => suite_dimension(cfg)?,
                Suite::RankInvariance => suite_rank_invariance(cfg, samples)?,
                Suite::Exchange => suite_exchange(cfg)?,
            };
            Ok(SuiteResult { name: suite.name(), statement: suite.statement(cfg.mode), passed, details })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerifyReport {
        n: cfg.n,
        mode: cfg.mode,
        seed: cfg.seed,
        passed: results.iter().all(|s| s.passed),
        suites: results,
    })
}

pub fn cmd_hasse(cfg: &RunConfig) -> Result<Outcome> {
    cfg.validate()?;
    let format = match cfg.format {
        Format::Dot => HasseFormat::Dot,
        Format::Json => HasseFormat::Json,
        other => return Err(Error::UnknownFormat(format!("{other:?}").to_lowercase())),
    };
    let poset = InvolutionPoset::build(cfg.n, cfg.mode, cfg.max_n)?;
    Ok(Outcome { document: poset.export_hasse(format), passed: true })
}

#[derive(Clone, Debug, Serialize)]
pub struct CoefficientRow {
    pub root: Root,
    pub value: Laurent,
    pub expected: Laurent,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegenerateReport {
    pub n: usize,
    pub i: usize,
    pub k: usize,
    pub j: usize,
    pub sigma: Involution,
    pub tau: Involution,
    pub curve: Vec<String>,
    pub coefficients: Vec<CoefficientRow>,
    pub case_split_ok: bool,
    pub limit_ok: bool,
}

impl DegenerateReport {
    pub fn passed(&self) -> bool {
        self.case_split_ok && self.limit_ok
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("tau = {}  sigma = {}\ng(s) = {}\n", self.tau, self.sigma, self.curve.join(" "));
        let _ = writeln!(out, "{:<10} {:<16} expected", "root", "g(s).f_tau");
        for row in &self.coefficients {
            let _ = writeln!(out, "{:<10} {:<16} {}", row.root.to_string(), row.value.to_string(), row.expected);
        }
        let _ = writeln!(out, "case split {}", if self.case_split_ok { "ok" } else { "MISMATCH" });
        let _ = writeln!(out, "limit s -> 0 {}", if self.limit_ok { "is f_sigma" } else { "is NOT f_sigma" });
        out
    }
}

pub fn cmd_degenerate(i: usize, k: usize, j: usize, n: usize) -> Result<DegenerateReport> {
    let curve = exchange_curve_with_spectators(i, k, j, n, &OrthogonalSet::empty())?;
    let report = verify_curve(&curve)?;
    let expected = exchange_expected_coefficients(&curve, i, k, j)?;
    let coefficients = exchange_display_order(n, i, k, j)
        .into_iter()
        .map(|root| CoefficientRow {
            root,
            value: report.coefficients.get(&root).cloned().unwrap_or_default(),
            expected: expected.get(&root).cloned().unwrap_or_default(),
        })
        .collect();
    Ok(DegenerateReport {
        n,
        i,
        k,
        j,
        sigma: curve.sigma.clone(),
        tau: curve.tau.clone(),
        curve: curve.factors.iter().map(ToString::to_string).collect(),
        coefficients,
        case_split_ok: report.coefficients == expected,
        limit_ok: report.limit_ok,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CompareReport {
    pub sigma: Involution,
    pub tau: Involution,
    pub mode: WeylType,
    pub bruhat: bool,
    pub leq_r: bool,
    pub leq_rstar: bool,
    pub rstar_sigma: Vec<Vec<u32>>,
    pub rstar_tau: Vec<Vec<u32>>,
}

pub fn cmd_compare(cfg: &RunConfig, sigma: &Involution, tau: &Involution) -> Result<CompareReport> {
    if sigma.n() != tau.n() {
        return Err(Error::RankMismatch { left: sigma.n(), right: tau.n() });
    }
    crate::perm::check_bound(sigma.n(), cfg.max_n)?;
    let poset = BruhatPoset::build(sigma.n(), cfg.mode, cfg.max_n)?;
    let a = rank_matrix(&rook_placement(sigma, cfg.mode)?)?;
    let b = rank_matrix(&rook_placement(tau, cfg.mode)?)?;
    Ok(CompareReport {
        sigma: sigma.clone(),
        tau: tau.clone(),
        mode: cfg.mode,
        bruhat: poset.leq(sigma, tau)?,
        leq_r: leq_r(&a, &b)?,
        leq_rstar: leq_rstar(&a, &b)?,
        rstar_sigma: a.rstar,
        rstar_tau: b.rstar,
    })
}

impl CompareReport {
    pub fn to_text(&self) -> String {
        let mut out = format!("sigma = {}  tau = {}  mode {}\n", self.sigma, self.tau, self.mode);
        let _ = writeln!(out, "bruhat {}\nleq_r {}\nleq_rstar {}", self.bruhat, self.leq_r, self.leq_rstar);
        for (name, m) in [("R*_sigma", &self.rstar_sigma), ("R*_tau", &self.rstar_tau)] {
            let _ = writeln!(out, "{name}");
            for row in rstar_rows(&RankMatrix { r: Vec::new(), rstar: m.clone() }) {
                let _ = writeln!(out, "    {row}");
            }
        }
        out
    }
}

fn dispatch(cli: Cli) -> std::result::Result<(Outcome, Option<PathBuf>), (i32, String)> {
    let usage = |e: String| (EXIT_USAGE, e);
    let run_err = |e: Error| match e {
        Error::RankBound { .. } | Error::ZeroRank | Error::IndexOrder { .. } | Error::UnknownFormat(_) | Error::RankMismatch { .. } | Error::UnsupportedType(_) => {
            (EXIT_USAGE, e.to_string())
        }
        other => (EXIT_FAIL, other.to_string()),
    };
    match cli.command {
        Command::Enumerate(c) => {
            let cfg = RunConfig::from_common(&c, Format::Text, &[Format::Json, Format::Csv, Format::Text]).map_err(usage)?;
            Ok((cmd_enumerate(&cfg).map_err(run_err)?, cfg.output))
        }
        Command::Verify { common, suites, samples } => {
            let cfg = RunConfig::from_common(&common, Format::Json, &[Format::Json, Format::Text]).map_err(usage)?;
            let report = cmd_verify(&cfg, &suites, samples).map_err(run_err)?;
            let document = match cfg.format {
                Format::Text => report.to_text(),
                _ => report.to_json(),
            };
            Ok((Outcome { document, passed: report.passed }, cfg.output))
        }
        Command::Hasse(c) => {
            let cfg = RunConfig::from_common(&c, Format::Dot, &[Format::Dot, Format::Json]).map_err(usage)?;
            Ok((cmd_hasse(&cfg).map_err(run_err)?, cfg.output))
        }
        Command::Degenerate { common, i, k, j } => {
            let cfg = RunConfig::from_common(&common, Format::Text, &[Format::Json, Format::Text]).map_err(usage)?;
            let report = cmd_degenerate(i, k, j, cfg.n).map_err(run_err)?;
            let document = match cfg.format {
                Format::Json => to_json(&report),
                _ => report.to_text(),
            };
            Ok((Outcome { document, passed: report.passed() }, cfg.output))
        }
        Command::Compare { common, sigma, tau } => {
            let mut c = common;
            c.n = sigma.n();
            let cfg = RunConfig::from_common(&c, Format::Text, &[Format::Json, Format::Text]).map_err(usage)?;
            let report = cmd_compare(&cfg, &sigma, &tau).map_err(run_err)?;
            let document = match cfg.format {
                Format::Json => to_json(&report),
                _ => report.to_text(),
            };
            Ok((Outcome { document, passed: true }, cfg.output))
        }
    }
}

/// Parse arguments, run the command and write its document. Returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn std::io::Write, stderr: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_PASS { stdout.write_all(rendered.as_bytes()) } else { stderr.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli) {
        Ok((outcome, output)) => {
            let written = match output {
                Some(path) => std::fs::write(&path, &outcome.document).map_err(|e| format!("{}: {e}", path.display())),
                None => stdout.write_all(outcome.document.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) if outcome.passed => EXIT_PASS,
                Ok(()) => EXIT_FAIL,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    EXIT_USAGE
                }
            }
        }
        Err((code, msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            code
        }
    }
}
