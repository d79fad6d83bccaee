//! Command-line front end.
//!
//! Exit status: 0 on success, 1 on malformed input or arguments, 2 when a
//! result fails a numerical validity check (the result is still written).

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::complex_coeffs::{
    compute_complex_coeffs, reconstruct_complex, ComplexSchoenbergSequence, IMAG_TOL,
};
use crate::disk::{disk_quadrature, disk_quadrature_for_degree, DiskPoint};
use crate::error::SchoenbergError;
use crate::io::{
    complex_to_json, parse_complex_sequence, parse_real_sequence, parse_sequence, real_to_json,
    to_pretty_string, SequenceFile,
};
use crate::library::{FunctionSpec, DEFAULT_SEED};
use crate::quadrature::{default_nodes, IntervalRule};
use crate::real_coeffs::{compute_real_coeffs, reconstruct, RealSchoenbergSequence};
use crate::selftest::run_all;
use crate::spd::{
    check_progressions, support_pattern, transfer_class, ClassEvidence, Membership, Space,
    SpdSummary, DEFAULT_THRESHOLD,
};
use crate::walk_complex::{walk_down_complex, walk_up_complex};
use crate::walk_real::{cross_project, walk_down, walk_up, DEFAULT_TAIL_TOL};

#[derive(Debug, Parser)]
#[command(
    name = "schoenberg",
    version,
    about = "Schoenberg sequences on real and complex spheres"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Coefficients b_{n,d} of a library function on S^d.
    Coeffs(CoeffsArgs),
    /// Evaluate the function represented by a sequence file.
    Reconstruct(ReconstructArgs),
    /// Real walk S^d -> S^{d+2}.
    WalkUp(Io),
    /// Real walk S^{d+2} -> S^d through the inverse series.
    WalkDown(WalkDownArgs),
    /// Project a real sequence on S^d to S^{d'} with d' < d.
    Project(ProjectArgs),
    /// Complex walk Ω_{2q} -> Ω_{2(q+1)}.
    CwalkUp(Io),
    /// Complex walk Ω_{2(q+1)} -> Ω_{2q} through the inverse series.
    CwalkDown(CwalkDownArgs),
    /// Coefficients a_{m,n} of a library function on Ω_{2q}.
    Ccoeffs(CcoeffsArgs),
    /// Arithmetic-progression diagnostics for strict positive definiteness.
    SpdCheck(SpdArgs),
    /// Run the invariant suite.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
struct Io {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long = "out")]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Family {
    Constant,
    Cosine,
    Poisson,
    GegenbauerMixture,
    DiskMonomial,
    DiskMixture,
}

#[derive(Debug, Args)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Poisson parameter in (0, 1).
    #[arg(long, default_value_t = 0.5)]
    r: f64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Degree of a random mixture (defaults to the requested truncation).
    #[arg(long = "mix-degree")]
    mix_degree: Option<usize>,
    /// Sphere of a random mixture (defaults to the requested sphere).
    #[arg(long = "mix-dim")]
    mix_dim: Option<usize>,
    /// Exponents of z^m conj(z)^n for disk-monomial.
    #[arg(long, default_value_t = 0)]
    m: usize,
    #[arg(long, default_value_t = 0)]
    n: usize,
}

impl FamilyArgs {
    fn spec(&self, dim: usize, degree: usize) -> FunctionSpec {
        let mix_degree = self.mix_degree.unwrap_or(degree);
        let mix_dim = self.mix_dim.unwrap_or(dim);
        match self.family {
            Family::Constant => FunctionSpec::Constant,
            Family::Cosine => FunctionSpec::Cosine,
            Family::Poisson => FunctionSpec::Poisson { r: self.r },
            Family::GegenbauerMixture => FunctionSpec::GegenbauerMixture {
                seed: self.seed,
                n_max: mix_degree,
                d: mix_dim,
            },
            Family::DiskMonomial => FunctionSpec::DiskMonomial {
                m: self.m,
                n: self.n,
            },
            Family::DiskMixture => FunctionSpec::DiskMixture {
                seed: self.seed,
                max_degree: mix_degree,
                q: mix_dim,
            },
        }
    }
}

#[derive(Debug, Args)]
struct CoeffsArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    d: usize,
    #[arg(long = "N")]
    n_max: usize,
    /// Quadrature nodes; default max(128, 2N + 32).
    #[arg(long)]
    nodes: Option<usize>,
    #[arg(long = "out")]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CcoeffsArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    q: usize,
    #[arg(long = "M")]
    max_degree: usize,
    /// Radial quadrature nodes; default sized for degree M.
    #[arg(long)]
    nodes: Option<usize>,
    /// Angular quadrature nodes; default 4M + 8.
    #[arg(long)]
    angular: Option<usize>,
    #[arg(long = "out")]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ReconstructArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Geodesic distances for a real sequence.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    theta: Vec<f64>,
    /// Disk points `x:y` for a complex sequence.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    z: Vec<String>,
    #[arg(long = "out")]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct WalkDownArgs {
    #[command(flatten)]
    io: Io,
    /// Output truncation; defaults to the input truncation.
    #[arg(long = "N")]
    n_out: Option<usize>,
    #[arg(long = "tail-tol", default_value_t = DEFAULT_TAIL_TOL)]
    tail_tol: f64,
}

#[derive(Debug, Args)]
struct CwalkDownArgs {
    #[command(flatten)]
    io: Io,
    #[arg(long = "tail-tol", default_value_t = DEFAULT_TAIL_TOL)]
    tail_tol: f64,
}

#[derive(Debug, Args)]
struct ProjectArgs {
    #[command(flatten)]
    io: Io,
    /// Target dimension d'.
    #[arg(long)]
    d: usize,
    #[arg(long)]
    nodes: Option<usize>,
}

#[derive(Debug, Args)]
struct SpdArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Largest modulus tested; defaults to the max degree.
    #[arg(long = "K")]
    max_modulus: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
    threshold: f64,
    /// Evidence about another class, `complex:Q:STATUS` or `real:D:STATUS`
    /// with STATUS one of member, strict, non-strict.
    #[arg(long)]
    other: Vec<String>,
    #[arg(long = "out")]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SelftestArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Print outcomes as JSON.
    #[arg(long)]
    json: bool,
}

/// Failure carrying its exit status.
struct Failure {
    code: i32,
    message: String,
}

impl From<SchoenbergError> for Failure {
    fn from(e: SchoenbergError) -> Self {
        let code = match e {
            SchoenbergError::Domain(_)
            | SchoenbergError::InvalidField { .. }
            | SchoenbergError::TruncationTooSmall { .. } => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn emit(value: &Value, output: &Option<PathBuf>) -> Result<(), Failure> {
    let text = to_pretty_string(value);
    match output {
        Some(path) => fs::write(path, text + "\n")
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

/// Writes the sequence, then reports exit status 2 if it lacks valid mass.
fn emit_real(
    seq: &RealSchoenbergSequence,
    output: &Option<PathBuf>,
    what: &str,
) -> Result<i32, Failure> {
    emit(&real_to_json(seq), output)?;
    Ok(validity_status(seq.valid_mass(), what))
}

fn emit_complex(
    seq: &ComplexSchoenbergSequence,
    output: &Option<PathBuf>,
    what: &str,
) -> Result<i32, Failure> {
    emit(&complex_to_json(seq), output)?;
    Ok(validity_status(seq.valid_mass(), what))
}

fn validity_status(valid: bool, what: &str) -> i32 {
    if valid {
        0
    } else {
        eprintln!("warning: {what} has negative entries or mass above one; not a certified Schoenberg sequence");
        2
    }
}

fn parse_evidence(text: &str) -> Result<ClassEvidence, Failure> {
    let bad = || {
        usage(format!(
            "--other expects complex:Q:STATUS or real:D:STATUS, got `{text}`"
        ))
    };
    let parts: Vec<_> = text.split(':').collect();
    let [kind, index, status] = parts[..] else {
        return Err(bad());
    };
    let index: usize = index.parse().map_err(|_| bad())?;
    let space = match kind {
        "complex" if index >= 2 => Space::Complex { q: index },
        "real" if index >= 1 => Space::Real { d: index },
        _ => return Err(bad()),
    };
    let status = match status {
        "member" => Membership::Member,
        "strict" => Membership::Strict,
        "non-strict" => Membership::NonStrict,
        "inconclusive" => Membership::Inconclusive,
        _ => return Err(bad()),
    };
    Ok(ClassEvidence::new(space, status))
}

fn execute(command: Command) -> Result<i32, Failure> {
    match command {
        Command::Coeffs(a) => {
            let spec = a.family.spec(a.d, a.n_max);
            let psi = spec.real_function()?;
            let degree = spec.polynomial_degree();
            let size = a.n_max.max(degree.unwrap_or(0));
            let rule =
                IntervalRule::for_dimension(a.d, a.nodes.unwrap_or_else(|| default_nodes(size)))?;
            let mut seq = compute_real_coeffs(&psi, a.d, a.n_max, &rule)?;
            if let Some(deg) = degree.filter(|&deg| deg <= a.n_max) {
                let mut coeffs = seq.into_coeffs();
                coeffs[deg + 1..].fill(0.0);
                seq = RealSchoenbergSequence::new(a.d, coeffs)?.with_finite_support(true);
            }
            emit_real(&seq, &a.output, &spec.label())
        }
        Command::Ccoeffs(a) => {
            let spec = a.family.spec(a.q, a.max_degree);
            let phi = spec.disk_function()?;
            let degree = spec.polynomial_degree();
            let default = disk_quadrature_for_degree(a.q, a.max_degree.max(degree.unwrap_or(0)))?;
            let rule = disk_quadrature(
                a.q,
                a.nodes.unwrap_or(default.radial_nodes()),
                a.angular.unwrap_or(default.angular_nodes()),
            )?;
            let mut c = compute_complex_coeffs(&phi, a.q, a.max_degree, &rule)?;
            if let Some(deg) = degree.filter(|&deg| deg <= a.max_degree) {
                let kept: Vec<_> = c
                    .sequence
                    .entries()
                    .filter(|&((m, n), _)| m + n <= deg)
                    .collect();
                c.sequence = ComplexSchoenbergSequence::new(a.q, a.max_degree, kept)?
                    .with_finite_support(true);
            }
            if !c.imag_ok() {
                eprintln!(
                    "warning: largest imaginary part {:.3e} exceeds {IMAG_TOL:e}",
                    c.max_imag
                );
            }
            let status = emit_complex(&c.sequence, &a.output, &spec.label())?;
            Ok(if c.imag_ok() { status } else { 2 })
        }
        Command::Reconstruct(a) => {
            let text = read(&a.input)?;
            let values: Vec<Value> = match parse_sequence(&text)? {
                SequenceFile::Real(seq) => {
                    if a.theta.is_empty() {
                        return Err(usage("reconstruct on a real sequence needs --theta"));
                    }
                    a.theta
                        .iter()
                        .map(|&t| Ok(json!({"theta": t, "value": reconstruct(&seq, t)?})))
                        .collect::<Result<_, SchoenbergError>>()?
                }
                SequenceFile::Complex(seq) => {
                    if a.z.is_empty() {
                        return Err(usage("reconstruct on a complex sequence needs --z x:y"));
                    }
                    a.z.iter()
                        .map(|s| {
                            let (x, y) = s
                                .split_once(':')
                                .and_then(|(x, y)| {
                                    Some((x.parse::<f64>().ok()?, y.parse::<f64>().ok()?))
                                })
                                .ok_or_else(|| usage(format!("--z expects x:y, got `{s}`")))?;
                            let v = reconstruct_complex(&seq, DiskPoint::new(x, y)?);
                            Ok(json!({"x": x, "y": y, "re": v.re, "im": v.im}))
                        })
                        .collect::<Result<_, Failure>>()?
                }
            };
            emit(&Value::Array(values), &a.output)?;
            Ok(0)
        }
        Command::WalkUp(io) => {
            let seq = parse_real_sequence(&read(&io.input)?)?;
            emit_real(&walk_up(&seq)?, &io.output, "walked-up sequence")
        }
        Command::WalkDown(a) => {
            let seq = parse_real_sequence(&read(&a.io.input)?)?;
            let report = walk_down(&seq, a.n_out.unwrap_or(seq.truncation()), a.tail_tol)?;
            if report.early_stopped || report.unresolved > 0.0 {
                eprintln!(
                    "note: largest unresolved tail term {:.3e}",
                    report.unresolved
                );
            }
            emit_real(&report.sequence, &a.io.output, "walked-down sequence")
        }
        Command::Project(a) => {
            let seq = parse_real_sequence(&read(&a.io.input)?)?;
            let rule = IntervalRule::for_dimension(
                a.d,
                a.nodes.unwrap_or_else(|| default_nodes(seq.truncation())),
            )?;
            emit_real(
                &cross_project(&seq, a.d, &rule)?,
                &a.io.output,
                "projected sequence",
            )
        }
        Command::CwalkUp(io) => {
            let seq = parse_complex_sequence(&read(&io.input)?)?;
            emit_complex(&walk_up_complex(&seq)?, &io.output, "walked-up sequence")
        }
        Command::CwalkDown(a) => {
            let seq = parse_complex_sequence(&read(&a.io.input)?)?;
            let report = walk_down_complex(&seq, a.tail_tol)?;
            if report.early_stopped || report.unresolved > 0.0 {
                eprintln!(
                    "note: largest unresolved tail term {:.3e}",
                    report.unresolved
                );
            }
            emit_complex(&report.sequence, &a.io.output, "walked-down sequence")
        }
        Command::SpdCheck(a) => {
            let seq = parse_complex_sequence(&read(&a.input)?)?;
            let pattern = support_pattern(&seq, a.threshold);
            let mut report =
                check_progressions(&pattern, a.max_modulus.unwrap_or(seq.max_degree()).max(1))?;
            for other in &a.other {
                let notes = transfer_class(&seq, &report, parse_evidence(other)?)?;
                report.transfer_notes.extend(notes);
            }
            let value = json!({
                "pattern": pattern,
                "verdicts": report.verdicts,
                "summary": report.summary,
                "implications": report.transfer_notes,
            });
            emit(&value, &a.output)?;
            Ok(match report.summary {
                SpdSummary::Inconclusive { .. } => 2,
                _ => 0,
            })
        }
        Command::Selftest(a) => {
            let outcomes = run_all(a.seed);
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            if a.json {
                println!(
                    "{}",
                    to_pretty_string(
                        &json!({"seed": a.seed, "outcomes": outcomes, "failed": failed})
                    )
                );
            } else {
                for o in &outcomes {
                    let status = if o.passed { "PASS" } else { "FAIL" };
                    println!(
                        "[{status}] {}: worst {:.3e} (tol {:.0e}) {}",
                        o.name, o.worst, o.tolerance, o.detail
                    );
                }
                println!("{} passed, {failed} failed", outcomes.len() - failed);
            }
            Ok(if failed == 0 { 0 } else { 2 })
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}
