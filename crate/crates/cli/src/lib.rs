//! Command-line front end. [`run`] is the whole program; `main` only wires
//! it to the process streams.

mod args;
mod pretty;

use std::io::{Read, Write};
use std::sync::Arc;

use clap::error::ErrorKind;
use clap::Parser;
use serde::Serialize;
use serde_json::{json, Value};

use lattice_orbit::classify::{ClassificationJson, WitnessOutcome};
use lattice_orbit::dilatation::{source_for_base, HalfVector};
use lattice_orbit::lattice::BUILTIN_NAMES;
use lattice_orbit::oracle::{self, Status, SuiteReport};
use lattice_orbit::vector::VectorJson;
use lattice_orbit::{
    builtin, classify, even_witness, heegner_report, heegner_report_by_norm, is_even_type, phi, phi_inverse,
    representative_in, LatticeError, LatticeVector, OrbitLabel,
};

pub use args::{parse_coords, Cli, Command, Coords};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "LATTICE_ORBIT_THREADS";

enum Failure {
    Usage(String),
    Domain(LatticeError),
}

impl From<LatticeError> for Failure {
    fn from(e: LatticeError) -> Self {
        Failure::Domain(e)
    }
}

/// A successful command: the document plus whether an oracle property was
/// violated.
struct Outcome {
    doc: Value,
    violation: bool,
}

impl Outcome {
    fn ok<T: Serialize>(doc: T) -> Result<Self, Failure> {
        Ok(Outcome { doc: to_value(doc)?, violation: false })
    }

    fn suite(report: SuiteReport) -> Result<Self, Failure> {
        let violation = report.status == Status::Fail;
        Ok(Outcome { doc: to_value(report)?, violation })
    }
}

fn to_value<T: Serialize>(doc: T) -> Result<Value, Failure> {
    serde_json::to_value(doc).map_err(|e| Failure::Usage(format!("serialization failed: {e}")))
}

/// Sets up the global worker pool from `LATTICE_ORBIT_THREADS`.
pub fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var(THREADS_ENV) else { return Ok(()) };
    let n: usize = raw.trim().parse().map_err(|_| format!("{THREADS_ENV} must be a positive integer, got {raw:?}"))?;
    if n == 0 {
        return Err(format!("{THREADS_ENV} must be a positive integer, got 0"));
    }
    // a pool that already exists (repeated calls in one process) is kept
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Runs one invocation; returns the process exit code.
pub fn run<I, S>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_OK
                }
                _ => EXIT_USAGE,
            };
        }
    };
    if let Err(msg) = configure_threads() {
        let _ = writeln!(stderr, "error: {msg}");
        return EXIT_USAGE;
    }
    match execute(&cli.command) {
        Ok(outcome) => {
            emit(stdout, &outcome.doc, cli.pretty);
            if outcome.violation {
                EXIT_VIOLATION
            } else {
                EXIT_OK
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Domain(e)) => {
            let doc = json!({ "error": e.code(), "message": e.to_string() });
            emit(stdout, &doc, cli.pretty);
            EXIT_DOMAIN
        }
    }
}

fn emit(out: &mut dyn Write, doc: &Value, pretty: bool) {
    let text = if pretty { pretty::render(doc) } else { format!("{doc}\n") };
    let _ = out.write_all(text.as_bytes());
}

fn read_input(path: &str) -> Result<String, Failure> {
    let mut s = String::new();
    if path == "-" {
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
    } else {
        s = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("reading {path}: {e}")))?;
    }
    Ok(s)
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::Usage(format!("invalid {what} JSON: {e}")))
}

fn vector(lattice: &str, coords: &[i64]) -> Result<LatticeVector, Failure> {
    Ok(LatticeVector::new(Arc::new(builtin(lattice)?), coords.to_vec())?)
}

fn execute(command: &Command) -> Result<Outcome, Failure> {
    match command {
        Command::Info { lattice } => match lattice {
            None => Outcome::ok(json!({ "builtins": BUILTIN_NAMES })),
            Some(name) => {
                let l = builtin(name)?;
                let sig = l.signature();
                Outcome::ok(json!({
                    "name": l.name(),
                    "rank": l.rank(),
                    "gram": l.gram().rows(),
                    "signature": [sig.positive, sig.negative],
                    "degenerate_directions": sig.zero,
                    "determinant": l.determinant().to_string(),
                    "even": l.is_even(),
                    "unimodular": l.is_unimodular(),
                }))
            }
        },
        Command::Classify { lattice, coords, vector: vector_file, validate } => {
            if let Some(path) = validate {
                let given: ClassificationJson = parse_json(&read_input(path)?, "classification report")?;
                let recomputed = classify(&vector(lattice, &given.coords)?)?.to_json();
                let violation = recomputed != given;
                return Ok(Outcome { doc: to_value(recomputed)?, violation });
            }
            let v = match (vector_file, coords) {
                (Some(path), _) => {
                    let j: VectorJson = parse_json(&read_input(path)?, "vector")?;
                    LatticeVector::from_json(&j)?
                }
                (None, Some(c)) => vector(lattice, &c.0)?,
                (None, None) => return Err(Failure::Usage("one of --coords, --vector, --validate is required".into())),
            };
            Outcome::ok(classify(&v)?.to_json())
        }
        Command::Rep { lattice, norm, n, class } => {
            let norm = match (norm, n) {
                (Some(m), _) => *m,
                (None, Some(n)) => n.checked_mul(2).ok_or(LatticeError::Overflow)?,
                (None, None) => return Err(Failure::Usage("--norm or --n is required".into())),
            };
            let rep = representative_in(Arc::new(builtin(lattice)?), norm, *class)?;
            Outcome::ok(json!({
                "lattice": rep.lattice().name(),
                "norm": norm,
                "n": norm / 2,
                "label": class,
                "coords": rep.coords(),
            }))
        }
        Command::Phi(a) => Outcome::ok(phi(&vector(&a.lattice, &a.coords.0)?)?.to_json()),
        Command::PhiInv { base, doubled } => {
            let base = Arc::new(builtin(base)?);
            let source = Arc::new(source_for_base(&base)?);
            let h = HalfVector::new(base, doubled.0.clone())?;
            Outcome::ok(phi_inverse(&h, source)?.to_json())
        }
        Command::EvenType(a) => {
            let v = vector(&a.lattice, &a.coords.0)?;
            let even = is_even_type(&v)?;
            let norm = v.norm()?;
            Outcome::ok(json!({ "coords": v.coords(), "norm": norm, "n": norm / 2, "even_type": even }))
        }
        Command::Witness { coords, bound } => {
            let v = vector("Lminus", &coords.0)?;
            let norm = v.norm()?;
            let doc = match even_witness(&v, *bound)? {
                WitnessOutcome::Found { witness, sum, source } => json!({
                    "coords": v.coords(), "norm": norm, "n": norm / 2, "bound": bound,
                    "status": "found", "source": source, "witness": witness.coords(), "sum": sum.coords(),
                    "obstruction": null,
                }),
                WitnessOutcome::NotFound { obstruction } => json!({
                    "coords": v.coords(), "norm": norm, "n": norm / 2, "bound": bound,
                    "status": "not_found", "source": null, "witness": null, "sum": null,
                    "obstruction": obstruction,
                }),
            };
            Outcome::ok(doc)
        }
        Command::Heegner { from, to, norm_from, norm_to } => {
            let reports = match (from, to, norm_from, norm_to) {
                (Some(a), Some(b), _, _) => heegner_report(*a, *b)?,
                (_, _, Some(a), Some(b)) => heegner_report_by_norm(*a, *b)?,
                _ => return Err(Failure::Usage("give --from/--to or --norm-from/--norm-to".into())),
            };
            Outcome::ok(reports)
        }
        Command::OracleInvariance { lattice, samples, seed, bound, word_length } => Outcome::suite(
            oracle::invariance_suite(Arc::new(builtin(lattice)?), *samples, *seed, *bound, *word_length)?,
        ),
        Command::OracleEnumerate { lattice, bound, norm } => {
            let scan = oracle::enumerate_primitive(Arc::new(builtin(lattice)?), *bound, Some(*norm))?;
            let vectors: Vec<&[i64]> = scan.vectors.iter().map(|v| v.coords()).collect();
            let stats = [
                ("lattice".to_string(), json!(lattice)),
                ("bound".to_string(), json!(bound)),
                ("norm".to_string(), json!(norm)),
                ("count".to_string(), json!(vectors.len())),
                ("vectors".to_string(), json!(vectors)),
            ];
            Outcome::suite(SuiteReport {
                suite: "enumerate".into(),
                status: Status::Pass,
                counterexample: None,
                stats: stats.into_iter().collect(),
            })
        }
        Command::OracleConnectivity { lattice, norm, bound, seed, walks, word_length } => {
            let report =
                oracle::connectivity_experiment(Arc::new(builtin(lattice)?), *norm, *bound, *seed, *walks, *word_length)?;
            let mixed = report.mixed_label_components;
            let mut stats: std::collections::BTreeMap<String, Value> = match to_value(&report)? {
                Value::Object(m) => m.into_iter().collect(),
                _ => unreachable!("report serializes to an object"),
            };
            stats.insert("lattice".into(), json!(lattice));
            stats.insert("seed".into(), json!(seed));
            stats.insert("bound".into(), json!(bound));
            stats.insert("word_length".into(), json!(word_length));
            Outcome::suite(SuiteReport {
                suite: "connectivity".into(),
                status: if mixed == 0 { Status::Pass } else { Status::Fail },
                counterexample: None,
                stats,
            })
        }
        Command::OracleWall { s, t, bound } => Outcome::suite(oracle::wall_scan(*s, *t, *bound)?),
        Command::OracleE8 { norm } => match norm {
            None => Outcome::suite(oracle::e8_suite()?),
            Some(m) => Outcome::suite(SuiteReport {
                suite: "e8".into(),
                status: Status::Pass,
                counterexample: None,
                stats: [("norm".to_string(), json!(m)), ("count".to_string(), json!(oracle::e8_count(*m)?))]
                    .into_iter()
                    .collect(),
            }),
        },
    }
}

/// Parses a label name as the CLI does.
pub fn parse_label(s: &str) -> Option<OrbitLabel> {
    s.parse().ok()
}
