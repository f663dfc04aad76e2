//! `seshadri`: certified Seshadri constant bounds from the command line.
//!
//! Reports are JSON by default; `--format text` prints human-readable tables.
//! Exit codes: 0 success, 1 reference mismatch in `verify-paper`, 2 input
//! error, 3 certificate rejected.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use seshadri::degeneration::{
    best_exponent_matrix, ci_fano_exact_value, fano_table, multipoint_hypersurface_bound, render_fano_table,
    CIDescriptor, DegenerationError,
};
use seshadri::estimator::{FunctionalSource, SearchStrategy};
use seshadri::fixtures::{fixtures, run_fixtures};
use seshadri::orbit::{bound_at_orbit, orbit_profile, profile_to_json};
use seshadri::polytope::io::parse_polytope_json;
use seshadri::rational::format_rational;
use seshadri::{estimate_interior, verify_certificate, BoundReport, Certificate, LatticePolytope};

#[derive(Parser)]
#[command(name = "seshadri", version, about = "Certified bounds for Seshadri constants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(clap::Args)]
struct StrategyArgs {
    /// Add primitive functionals with entries in [-H, H] to the facet normals.
    #[arg(long = "box", value_name = "H")]
    box_size: Option<u32>,
    /// Use facet normals only.
    #[arg(long, conflicts_with = "box_size")]
    facet_normals_only: bool,
    /// Maximum number of projection levels.
    #[arg(long, value_name = "D")]
    max_depth: Option<usize>,
}

impl StrategyArgs {
    fn strategy(&self, rank: usize) -> SearchStrategy {
        let mut s = SearchStrategy::default_for_rank(rank);
        if self.facet_normals_only {
            s.functional_source = FunctionalSource::FacetNormals;
        } else if let Some(h) = self.box_size {
            s.functional_source = FunctionalSource::FacetNormalsPlusBox(h);
        }
        s.max_depth = self.max_depth;
        s
    }
}

#[derive(Subcommand)]
enum Command {
    /// Bounds at the identity point or at a point of a face's torus orbit.
    ToricBound {
        polytope: PathBuf,
        /// `interior`, or `face:I,J,...` with vertex indices.
        #[arg(long, default_value = "interior")]
        point: String,
        #[command(flatten)]
        strategy: StrategyArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Bounds at every torus orbit.
    OrbitProfile {
        polytope: PathBuf,
        #[command(flatten)]
        strategy: StrategyArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Bounds for a very general hypersurface at very general points.
    Hypersurface {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u64,
        /// Point weights.
        #[arg(long, value_delimiter = ',', default_value = "1")]
        weights: Vec<u64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Toric lower bound for a very general complete intersection.
    CompleteIntersection {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Seshadri constants of Fano 3-folds of Picard number one.
    FanoTable {
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Re-verify a certificate, or the lower certificate of a report.
    VerifyCert { polytope: PathBuf, certificate: PathBuf },
    /// Recompute every reference fixture and compare exactly.
    VerifyPaper {
        /// Only fixtures whose name contains this string.
        #[arg(long)]
        filter: Option<String>,
        /// Replace the expected value of a fixture, as NAME=VALUE.
        #[arg(long, value_name = "NAME=VALUE")]
        expect: Vec<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

enum Failure {
    Input(String),
    Certificate(Value),
    Mismatch,
}

impl Failure {
    fn input(e: impl std::fmt::Display) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_polytope(path: &Path) -> Result<LatticePolytope, Failure> {
    parse_polytope_json(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn report_text(r: &BoundReport) -> String {
    format!("lower: {}\nupper: {}\nexact: {}\n", format_rational(&r.lower), r.upper, r.exact)
}

fn toric_bound(path: &Path, point: &str, args: &StrategyArgs, format: Format) -> Outcome {
    let p = load_polytope(path)?;
    let strategy = args.strategy(p.rank());
    let report = if point == "interior" {
        estimate_interior(&p, &strategy).map_err(Failure::input)?
    } else {
        let list = point
            .strip_prefix("face:")
            .ok_or_else(|| Failure::Input(format!("--point must be `interior` or `face:I,J,...`, got `{point}`")))?;
        let idx = list
            .split(',')
            .map(|s| s.trim().parse::<usize>().map_err(|_| Failure::Input(format!("invalid vertex index `{s}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        let face = p.face(&idx).map_err(Failure::input)?;
        bound_at_orbit(&p, &face, &strategy).map_err(Failure::input)?
    };
    Ok(match format {
        Format::Json => pretty(&serde_json::to_value(&report).expect("serializable")),
        Format::Text => report_text(&report),
    })
}

fn orbit_profile_cmd(path: &Path, args: &StrategyArgs, format: Format) -> Outcome {
    let p = load_polytope(path)?;
    let profile = orbit_profile(&p, &args.strategy(p.rank())).map_err(Failure::input)?;
    Ok(match format {
        Format::Json => pretty(&profile_to_json(&profile)),
        Format::Text => {
            let mut out = String::from("face\tdim\tlower\tupper\texact\n");
            for (f, r) in &profile {
                let face: Vec<String> = f.vertex_indices.iter().map(usize::to_string).collect();
                let _ = writeln!(out, "{}\t{}\t{}\t{}\t{}", face.join(","), f.dim, format_rational(&r.lower), r.upper, r.exact);
            }
            out
        }
    })
}

fn hypersurface(n: usize, d: u64, weights: &[u64], format: Format) -> Outcome {
    let r = multipoint_hypersurface_bound(n, d, weights).map_err(Failure::input)?;
    Ok(match format {
        Format::Json => pretty(&serde_json::to_value(&r).expect("serializable")),
        Format::Text => {
            let split: Vec<String> = r.split.iter().map(u64::to_string).collect();
            format!(
                "floor: {}\nlower: {}\nupper: {}\nsplit: {}\n",
                format_rational(&r.floor),
                format_rational(&r.lower),
                r.upper,
                split.join(" + ")
            )
        }
    })
}

fn complete_intersection(n: usize, degrees: &[u64], format: Format) -> Outcome {
    let desc = CIDescriptor::new(n, degrees).map_err(Failure::input)?;
    let choice = best_exponent_matrix(&desc);
    let fano = match ci_fano_exact_value(&desc) {
        Ok(v) => Some(v),
        Err(DegenerationError::NotFano | DegenerationError::DegreeTooSmall) => None,
        Err(e) => return Err(Failure::input(e)),
    };
    Ok(match format {
        Format::Json => pretty(&json!({
            "descriptor": desc,
            "choice": choice,
            "fano": fano,
        })),
        Format::Text => {
            let mut out = format!("lower: {}\n", format_rational(&choice.bound.bound));
            for row in &choice.matrix.entries {
                let row: Vec<String> = row.iter().map(u64::to_string).collect();
                let _ = writeln!(out, "  [{}]", row.join(" "));
            }
            if let Some(v) = fano {
                let _ = writeln!(out, "exact: {}", format_rational(&v.value));
            }
            out
        }
    })
}

fn fano_table_cmd(format: Format) -> Outcome {
    let rows = fano_table();
    Ok(match format {
        Format::Json => pretty(&serde_json::to_value(&rows).expect("serializable")),
        Format::Text => render_fano_table(&rows),
    })
}

fn verify_cert(polytope: &Path, cert_path: &Path) -> Outcome {
    let p = load_polytope(polytope)?;
    let doc: Value = serde_json::from_str(&read(cert_path)?)
        .map_err(|e| Failure::Input(format!("{}: line {}, column {}: {e}", cert_path.display(), e.line(), e.column())))?;
    let cert_value = doc.get("lower_certificate").cloned().unwrap_or(doc);
    let cert: Certificate = serde_json::from_value(cert_value)
        .map_err(|e| Failure::Input(format!("{}: invalid certificate: {e}", cert_path.display())))?;
    match verify_certificate(&p, &cert) {
        Ok(v) => Ok(pretty(&json!({ "valid": true, "value": format_rational(&v) }))),
        Err(e) => Err(Failure::Certificate(json!({
            "valid": false,
            "code": e.code.as_str(),
            "message": e.message,
        }))),
    }
}

fn verify_paper(filter: Option<&str>, expect: &[String], format: Format) -> Outcome {
    let mut all = fixtures();
    for entry in expect {
        let (name, value) =
            entry.split_once('=').ok_or_else(|| Failure::Input(format!("--expect needs NAME=VALUE, got `{entry}`")))?;
        let f = all
            .iter_mut()
            .find(|f| f.name == name)
            .ok_or_else(|| Failure::Input(format!("unknown fixture `{name}`")))?;
        *f = f.with_expected(value);
    }
    let outcomes = run_fixtures(&all, filter);
    if outcomes.is_empty() {
        return Err(Failure::Input("no fixture matches the filter".into()));
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    let body = match format {
        Format::Json => pretty(&json!({
            "total": outcomes.len(),
            "failed": failed,
            "fixtures": outcomes,
        })),
        Format::Text => {
            let mut out = String::new();
            for o in &outcomes {
                if o.passed {
                    let _ = writeln!(out, "ok    {}  {}", o.name, o.actual);
                } else {
                    let _ = writeln!(out, "FAIL  {}  expected {}  got {}", o.name, o.expected, o.actual);
                }
            }
            let _ = writeln!(out, "{} of {} fixtures passed", outcomes.len() - failed, outcomes.len());
            out
        }
    };
    print!("{}", ensure_newline(body));
    if failed > 0 {
        Err(Failure::Mismatch)
    } else {
        Ok(String::new())
    }
}

fn ensure_newline(mut s: String) -> String {
    if !s.is_empty() && !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("SESHADRI_THREADS") else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Input(format!("SESHADRI_THREADS must be a positive integer, got `{v}`")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(Failure::input)
}

fn run(cli: Cli) -> Outcome {
    configure_threads()?;
    match cli.command {
        Command::ToricBound { polytope, point, strategy, format } => toric_bound(&polytope, &point, &strategy, format),
        Command::OrbitProfile { polytope, strategy, format } => orbit_profile_cmd(&polytope, &strategy, format),
        Command::Hypersurface { n, d, weights, format } => hypersurface(n, d, &weights, format),
        Command::CompleteIntersection { n, degrees, format } => complete_intersection(n, &degrees, format),
        Command::FanoTable { format } => fano_table_cmd(format),
        Command::VerifyCert { polytope, certificate } => verify_cert(&polytope, &certificate),
        Command::VerifyPaper { filter, expect, format } => verify_paper(filter.as_deref(), &expect, format),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{}", ensure_newline(out));
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Certificate(v)) => {
            println!("{}", pretty(&v));
            ExitCode::from(3)
        }
        Err(Failure::Mismatch) => ExitCode::from(1),
    }
}
