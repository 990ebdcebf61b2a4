//! Subcommand dispatch for the `ifnls` binary. Every subcommand builds a
//! [`Report`]; the exit code is 0 when no verdict failed, 1 when one did and
//! 2 for usage, input or I/O errors.

pub mod report;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use ifnls_core::alpha_norms::{self, AlphaError, AlphaLevel, NormFamily};
use ifnls_core::continuity::{self, BuiltinMap, ContinuityError, ContinuityGrids, SampledMap};
use ifnls_core::corpus::{generate_corpus, CorpusError, CorpusKind};
use ifnls_core::ifn_space::{verify_extended_conditions, verify_ifn_axioms, IfnError};
use ifnls_core::sequence_analysis::{self as seqa, SequenceError, VectorSequence};
use ifnls_core::topology::{self, SampledSet, TopologyError};
use ifnls_core::{Check, IfnSpace, SpaceSpec, Status, ToleranceConfig, Vector, Verdict, Witness};

pub use report::{Report, RunManifest};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
    #[error("invalid config: {0}")]
    Config(String),
    #[error(transparent)]
    Ifn(#[from] IfnError),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error(transparent)]
    Alpha(#[from] AlphaError),
    #[error(transparent)]
    Continuity(#[from] ContinuityError),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
}

#[derive(Debug, Parser)]
#[command(name = "ifnls", version, about = "Verification suites for intuitionistic fuzzy normed linear spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Tolerance config JSON; missing keys take defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample the eleven defining conditions of the space's fuzzy norm.
    VerifyAxioms {
        #[arg(long)]
        space: PathBuf,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Also check (xii)-(xiv).
        #[arg(long)]
        extended: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Membership and non-membership alpha-norms of a vector.
    AlphaNorm {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        alpha: f64,
        /// Comma-separated coordinates.
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
        /// Also sample the norm axioms at this alpha.
        #[arg(long)]
        check_axioms: bool,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Increasing alpha levels for the family check, comma-separated.
        #[arg(long, value_delimiter = ',')]
        family: Vec<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Estimate the comparability constant over a basis.
    Comparability {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        alpha: f64,
        /// Basis vectors as `1,0;0,1`; defaults to the standard basis.
        #[arg(long, allow_hyphen_values = true)]
        basis: Option<String>,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Convergence, Cauchy, boundedness and crisp agreement for a CSV sequence.
    AnalyzeSequence {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        sequence: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        /// Basis for limit extraction, as `1,0;0,1`.
        #[arg(long, allow_hyphen_values = true)]
        basis: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Boundedness, compactness and closure membership for a sampled set.
    CheckSet {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        set: PathBuf,
        /// Point to test for closure membership; repeatable.
        #[arg(long = "point", allow_hyphen_values = true)]
        points: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Continuity notions of a builtin map at points.
    CheckContinuity {
        /// identity, scale:<c>, step or example33.
        #[arg(long)]
        map: String,
        /// Domain space.
        #[arg(long)]
        space: PathBuf,
        /// Codomain space; defaults to the domain.
        #[arg(long)]
        codomain: Option<PathBuf>,
        /// Base point x0; repeatable.
        #[arg(long = "point", allow_hyphen_values = true, required = true)]
        points: Vec<String>,
        /// Sampled domain set for the compact-image check.
        #[arg(long)]
        domain_set: Option<PathBuf>,
        #[arg(long)]
        probe_points: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Generate a corpus sequence as CSV.
    Corpus {
        /// harmonic, geometric, alternating, constant or partial-sums.
        #[arg(long)]
        kind: String,
        #[arg(long)]
        length: usize,
        #[arg(long, default_value_t = 1)]
        dimension: usize,
        /// Output CSV path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

/// Result of one invocation.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub report: Option<Report>,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(message: String) -> Self {
        Outcome { code: 2, report: None, stdout: String::new(), stderr: message }
    }
}

/// Runs one subcommand; `argv` excludes the program name.
pub fn run_subcommand<S: AsRef<str>>(argv: &[S]) -> Outcome {
    let args: Vec<String> = argv.iter().map(|s| s.as_ref().to_owned()).collect();
    let cli = match Cli::try_parse_from(std::iter::once("ifnls".to_owned()).chain(args.iter().cloned())) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Outcome { code: 0, report: None, stdout: e.to_string(), stderr: String::new() }
                }
                _ => Outcome::error(e.to_string()),
            };
        }
    };
    match execute(cli.command, manifest_command(&args)) {
        Ok(o) => o,
        Err(e) => Outcome::error(format!("error: {e}\n")),
    }
}

/// The argument list with `--json` and its value removed.
fn manifest_command(args: &[String]) -> String {
    let mut out = Vec::new();
    let mut skip = false;
    for a in args {
        if skip {
            skip = false;
            continue;
        }
        if a == "--json" {
            skip = true;
            continue;
        }
        if a.starts_with("--json=") {
            continue;
        }
        out.push(a.as_str());
    }
    out.join(" ")
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

fn load_space(path: &Path) -> Result<(IfnSpace, SpaceSpec), CliError> {
    let spec = SpaceSpec::from_json(&read(path)?)?;
    Ok((IfnSpace::from_spec(&spec)?, spec))
}

fn load_config(path: Option<&Path>) -> Result<ToleranceConfig, CliError> {
    let cfg: ToleranceConfig = match path {
        Some(p) => serde_json::from_str(&read(p)?).map_err(|e| CliError::Config(e.to_string()))?,
        None => ToleranceConfig::default(),
    };
    cfg.validate().map_err(|e| CliError::Config(e.to_string()))?;
    Ok(cfg)
}

fn parse_vector(text: &str, dim: usize) -> Result<Vector, CliError> {
    let v = Vector::parse_csv(text)?;
    if v.dim() != dim {
        return Err(IfnError::DimensionMismatch { expected: dim, found: v.dim() }.into());
    }
    Ok(v)
}

fn parse_basis(text: Option<&str>, dim: usize) -> Result<Vec<Vector>, CliError> {
    match text {
        Some(t) => t.split(';').map(|row| parse_vector(row, dim)).collect(),
        None => Ok((0..dim)
            .map(|i| {
                let mut e = vec![0.0; dim];
                e[i] = 1.0;
                Vector::new(e).expect("unit vector is finite")
            })
            .collect()),
    }
}

fn alpha_level(a: f64) -> Result<AlphaLevel, CliError> {
    Ok(AlphaLevel::new(a)?)
}

/// Rounds to the bisection resolution for display.
fn display_value(v: f64) -> f64 {
    (v * 1e9).round() / 1e9
}

/// Reports an operation that could not run on otherwise valid input.
fn not_run(subject: String, reason: String) -> Verdict {
    Verdict::new(subject).with_check(Check::new("precondition", Status::Inconclusive).with_detail(reason))
}

struct Run {
    spec: Option<SpaceSpec>,
    config: ToleranceConfig,
    seed: u64,
    json: Option<PathBuf>,
    verdicts: Vec<Verdict>,
    extra_text: String,
}

fn execute(command: Command, command_line: String) -> Result<Outcome, CliError> {
    let run = match command {
        Command::VerifyAxioms { space, samples, extended, common } => {
            let config = load_config(common.config.as_deref())?;
            let (s, spec) = load_space(&space)?;
            let mut verdicts = vec![verify_ifn_axioms(&s, samples, common.seed, &config)];
            if extended {
                verdicts.push(verify_extended_conditions(&s, samples, common.seed, &config));
            }
            Run { spec: Some(spec), config, seed: common.seed, json: common.json, verdicts, extra_text: String::new() }
        }
        Command::AlphaNorm { space, alpha, vector, check_axioms, samples, family, common } => {
            let config = load_config(common.config.as_deref())?;
            let (s, spec) = load_space(&space)?;
            let a = alpha_level(alpha)?;
            let x = parse_vector(&vector, s.dimension())?;
            let mut text = String::new();
            let mut v = Verdict::new(format!("alpha-norms of {x} at alpha={alpha}"));
            for fam in NormFamily::BOTH {
                let r = alpha_norms::alpha_norm(&s, &x, a, fam, &config)?;
                text.push_str(&format!("{} {:?}\n", fam.name(), display_value(r.value)));
                v.push(
                    Check::pass(fam.name()).with_witness(
                        Witness::new()
                            .scalar("value", r.value)
                            .scalar("lo", r.bracket.0)
                            .scalar("hi", r.bracket.1)
                            .scalar("iterations", r.iterations as f64),
                    ),
                );
            }
            v.deviation(ifnls_core::Deviation::NonMembershipAlphaNormInfimum);
            let mut verdicts = vec![v];
            if check_axioms {
                verdicts.push(alpha_norms::verify_alpha_norm_axioms(&s, a, samples, common.seed, &config));
            }
            if !family.is_empty() {
                let levels = family.iter().map(|&l| alpha_level(l)).collect::<Result<Vec<_>, _>>()?;
                verdicts.push(alpha_norms::verify_ascending_family(&s, &x, &levels, &config)?);
            }
            Run { spec: Some(spec), config, seed: common.seed, json: common.json, verdicts, extra_text: text }
        }
        Command::Comparability { space, alpha, basis, samples, common } => {
            let config = load_config(common.config.as_deref())?;
            let (s, spec) = load_space(&space)?;
            let a = alpha_level(alpha)?;
            let b = parse_basis(basis.as_deref(), s.dimension())?;
            let est = alpha_norms::estimate_comparability_constant(&s, &b, a, samples, common.seed, &config)?;
            let text = format!("C_alpha estimate {:?} over {} coefficient vectors\n", est.constant, est.evaluated);
            let v = Verdict::new(format!("comparability constant at alpha={alpha}")).with_check(
                Check::pass("estimate")
                    .with_witness(Witness::new().scalar("constant", est.constant).vector("argmin", &est.argmin))
                    .with_detail("statistical lower-bound estimate"),
            );
            Run { spec: Some(spec), config, seed: common.seed, json: common.json, verdicts: vec![v], extra_text: text }
        }
        Command::AnalyzeSequence { space, sequence, target, basis, common } => {
            let config = load_config(common.config.as_deref())?;
            let (s, spec) = load_space(&space)?;
            let seq = VectorSequence::parse_csv(&read(&sequence)?)?;
            if seq.dim() != s.dimension() {
                return Err(IfnError::DimensionMismatch { expected: s.dimension(), found: seq.dim() }.into());
            }
            let x = parse_vector(&target, s.dimension())?;
            let mut verdicts = vec![
                seqa::check_convergence_to(&s, &seq, &x, &config)?.to_verdict("converges to target"),
                seqa::check_cauchy(&s, &seq, config.cauchy_p_max, &config)?.to_verdict("cauchy"),
                seqa::check_bounded(&s, &seq, &config)?,
                seqa::crisp_fuzzy_equivalence(&s, &seq, &x, &config)?,
            ];
            if let Some(b) = basis {
                let b = parse_basis(Some(&b), s.dimension())?;
                match seqa::findim_limit_extraction(&s, &seq, &b, &config) {
                    Ok((_, v)) => verdicts.push(v),
                    Err(e @ (SequenceError::PreconditionFailed(_) | SequenceError::TailNotSettled { .. })) => {
                        verdicts.push(not_run("finite-dimensional limit".into(), e.to_string()))
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            Run { spec: Some(spec), config, seed: common.seed, json: common.json, verdicts, extra_text: String::new() }
        }
        Command::CheckSet { space, set, points, common } => {
            let config = load_config(common.config.as_deref())?;
            let (s, spec) = load_space(&space)?;
            let set = SampledSet::from_json(&read(&set)?)?;
            let mut verdicts = vec![
                topology::check_set_bounded(&s, &set, &config)?,
                topology::compactness_verdict(&s, &set, &config)?,
            ];
            for p in &points {
                let x = parse_vector(p, s.dimension())?;
                verdicts.push(topology::closure_membership(&s, &set, &x, &config)?);
            }
            Run { spec: Some(spec), config, seed: common.seed, json: common.json, verdicts, extra_text: String::new() }
        }
        Command::CheckContinuity { map, space, codomain, points, domain_set, probe_points, common } => {
            let config = load_config(common.config.as_deref())?;
            let (dom, spec) = load_space(&space)?;
            let cod = match &codomain {
                Some(p) => load_space(p)?.0,
                None => dom.clone(),
            };
            let m: BuiltinMap = map.parse()?;
            let f = SampledMap::builtin(m, dom.clone(), cod)?;
            let mut grids = ContinuityGrids { seed: common.seed, ..ContinuityGrids::default() };
            if let Some(n) = probe_points {
                grids.probe_points = n;
            }
            let xs = points.iter().map(|p| parse_vector(p, dom.dimension())).collect::<Result<Vec<_>, _>>()?;
            let mut verdicts = Vec::new();
            for x0 in &xs {
                verdicts.push(continuity::check_strong_default(&f, x0, &grids)?.verdict);
                verdicts.push(continuity::check_ifc_default(&f, x0, &grids)?.verdict);
                match continuity::check_sequential_default(&f, x0, &config) {
                    Ok(cv) => verdicts.push(cv.verdict),
                    Err(ContinuityError::PreconditionFailed(e)) => {
                        verdicts.push(not_run(format!("{} sequentially IFC at {x0}", f.describe()), e))
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            for check in [continuity::verify_thm32_implication, continuity::verify_thm34_equivalence] {
                match check(&f, &xs, &grids, &config) {
                    Ok(v) => verdicts.push(v),
                    Err(ContinuityError::PreconditionFailed(e)) => verdicts.push(not_run("continuity theorem".into(), e)),
                    Err(e) => return Err(e.into()),
                }
            }
            if let Some(path) = domain_set {
                let set = SampledSet::from_json(&read(&path)?)?;
                match continuity::compact_image_check(&f, &set, &grids, &config) {
                    Ok(v) => verdicts.push(v),
                    Err(ContinuityError::PreconditionFailed(e)) => {
                        verdicts.push(not_run(format!("{} maps {} to a compact set", f.describe(), set.label), e))
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            Run { spec: Some(spec), config, seed: common.seed, json: common.json, verdicts, extra_text: String::new() }
        }
        Command::Corpus { kind, length, dimension, out, common } => {
            let config = load_config(common.config.as_deref())?;
            let k: CorpusKind = kind.parse()?;
            let entry = generate_corpus(k, length, dimension, common.seed)?;
            let csv = entry.sequence.to_csv();
            let text = match &out {
                Some(p) => {
                    fs::write(p, &csv).map_err(|source| CliError::Io { path: p.clone(), source })?;
                    let limit = entry.known_limit.as_ref().map_or("none (divergent)".to_owned(), |l| l.to_string());
                    format!("wrote {} terms of {} to {}; known limit {limit}\n", length, entry.sequence.label(), p.display())
                }
                None => csv,
            };
            Run { spec: None, config, seed: common.seed, json: common.json, verdicts: Vec::new(), extra_text: text }
        }
    };
    finish(run, command_line)
}

fn finish(run: Run, command_line: String) -> Result<Outcome, CliError> {
    let is_corpus_stdout = run.verdicts.is_empty();
    let report = Report::new(RunManifest::new(command_line, run.spec, run.config, run.seed), run.verdicts);
    if let Some(path) = &run.json {
        fs::write(path, report.to_json()).map_err(|source| CliError::Io { path: path.clone(), source })?;
    }
    let mut stdout = run.extra_text;
    if !is_corpus_stdout {
        stdout.push_str(&report.to_text());
    }
    let code = if report.has_failures() { 1 } else { 0 };
    Ok(Outcome { code, report: Some(report), stdout, stderr: String::new() })
}
