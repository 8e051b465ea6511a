//! Command-line driver for `swcalc`.
//!
//! [`run`] parses arguments, delegates to the library and writes either a
//! human-readable report or, under `--json`, a stable JSON document.
//! Exit codes: 0 on success, 1 on domain errors, 2 on usage errors.

pub mod doc;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::value::RawValue;

use swcalc::blocks::{basic_class_table, recognizable_set, BuildingBlock};
use swcalc::cohomotopy::{
    blowup, invariant, nonvanishing_criteria, odd_basic_fingerprint, split_verdict,
    FingerprintEntry, InvariantClass, SplitQuery, SplitVerdict,
};
use swcalc::lattice::SpinC;
use swcalc::recognize::{
    distinguish, recognize_candidate, recognize_oracle, Distinction, OracleBounds, Pattern,
};
use swcalc::stems::is_nonzero;

pub use doc::{parse_manifold, BlockDescriptor, ClassDescriptor, ManifoldDoc, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "swcalc",
    version,
    about = "Stable cohomotopy Seiberg-Witten calculator"
)]
struct Cli {
    /// Emit a machine-readable JSON document.
    #[arg(long, global = true)]
    json: bool,
    /// Include rule traces.
    #[arg(long, global = true)]
    trace: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Basic classes and Seiberg-Witten values of E(p_g; m, n).
    BasicClasses {
        #[arg(long)]
        pg: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
    },
    /// Fiber multiples with odd Seiberg-Witten invariant on E(p_g; m, n).
    Recognizable {
        #[arg(long)]
        pg: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
    },
    /// Recover (p_g, m, n) from a pattern of recognizable fiber multiples.
    Recognize {
        /// Comma-separated fiber multiples, e.g. "-2,2".
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        classes: Vec<i64>,
        /// Cross-check with the brute-force oracle over p_g ≤ PG and n ≤ N.
        #[arg(long, value_name = "PG,N", value_parser = parse_bounds)]
        bounds: Option<(u64, u64)>,
    },
    /// Stable cohomotopy invariant of a connected sum.
    Invariant { file: PathBuf },
    /// Nonvanishing criterion for a connected sum of almost complex blocks.
    Nonvanishing { file: PathBuf },
    /// Connected sum with a diagonal negative definite manifold.
    Blowup {
        file: PathBuf,
        #[arg(long)]
        rank: u64,
        /// Comma-separated odd coordinates of the characteristic vector.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            conflicts_with = "c_square"
        )]
        c: Option<Vec<i64>>,
        #[arg(long, allow_hyphen_values = true)]
        c_square: Option<i64>,
    },
    /// Splitting obstruction for a summand with b⁺ ≡ RESIDUE (mod MODULUS).
    SplitCheck {
        file: PathBuf,
        #[arg(long)]
        modulus: u8,
        #[arg(long)]
        residue: u8,
    },
    /// Compare two connected sums of elliptic surfaces.
    Distinguish { first: PathBuf, second: PathBuf },
    /// Per-summand sets of classes with odd Seiberg-Witten invariant.
    Fingerprint { file: PathBuf },
}

fn parse_bounds(s: &str) -> Result<(u64, u64), String> {
    let (pg, n) = s.split_once(',').ok_or("expected PG,N")?;
    let pg = pg.trim().parse::<u64>().map_err(|e| format!("PG: {e}"))?;
    let n = n.trim().parse::<u64>().map_err(|e| format!("N: {e}"))?;
    Ok((pg, n))
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Domain(#[from] swcalc::Error),
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Rendered command output: human text and the JSON document.
struct Report {
    text: Vec<String>,
    json: String,
}

impl Report {
    fn new<T: Serialize>(text: Vec<String>, doc: &T) -> Self {
        Report {
            text,
            json: serde_json::to_string_pretty(doc).expect("report serializes"),
        }
    }
}

/// Runs the CLI with `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    EXIT_USAGE
                }
            };
        }
    };
    let mut warnings = Vec::new();
    match execute(&cli, &mut warnings) {
        Ok(report) => {
            for w in &warnings {
                let _ = writeln!(err, "warning: {w}");
            }
            let written = if cli.json {
                writeln!(out, "{}", report.json)
            } else {
                report.text.iter().try_for_each(|l| writeln!(out, "{l}"))
            };
            if written.is_err() {
                return EXIT_DOMAIN;
            }
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DOMAIN
        }
    }
}

fn load(path: &Path, warnings: &mut Vec<String>) -> CliResult<ManifoldDoc> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: shown.clone(),
        source,
    })?;
    let doc = parse_manifold(&text).map_err(|source| CliError::Parse {
        path: shown.clone(),
        source,
    })?;
    warnings.extend(doc.warnings().into_iter().map(|w| format!("{shown}: {w}")));
    Ok(doc)
}

fn load_sum(
    path: &Path,
    warnings: &mut Vec<String>,
) -> CliResult<swcalc::cohomotopy::ConnectedSum> {
    let doc = load(path, warnings)?;
    doc.connected_sum().map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })
}

fn raw_integer(v: &impl ToString) -> Box<RawValue> {
    RawValue::from_string(v.to_string()).expect("integers are valid JSON")
}

fn with_trace(trace: bool, lines: &[String]) -> Option<Vec<String>> {
    trace.then(|| lines.to_vec())
}

#[derive(Serialize)]
struct ClassEntry {
    key: i64,
    value: Box<RawValue>,
}

#[derive(Serialize)]
struct BasicClassesDoc {
    p_g: u64,
    m: u64,
    n: u64,
    classes: Vec<ClassEntry>,
}

#[derive(Serialize)]
struct RecognizableDoc {
    p_g: u64,
    m: u64,
    n: u64,
    recognizable: Vec<i64>,
}

#[derive(Serialize)]
struct RecognizeDoc {
    pattern: Vec<i64>,
    p_g: u64,
    m: u64,
    n: u64,
    validated: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<Vec<[u64; 3]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<Vec<String>>,
}

#[derive(Serialize)]
struct InvariantDoc {
    total_d: i64,
    total_b_plus: u64,
    expected_dimension: i64,
    stem_degree: i64,
    class: String,
    class_nonzero: &'static str,
    nonvanishing: &'static str,
    gamma_power: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<Vec<String>>,
}

impl InvariantDoc {
    fn new(inv: &InvariantClass, trace: bool) -> CliResult<Self> {
        Ok(InvariantDoc {
            total_d: inv.total_d,
            total_b_plus: inv.total_b_plus,
            expected_dimension: inv.expected_dimension()?,
            stem_degree: inv.stem_degree,
            class: inv.nonequiv_class.to_string(),
            class_nonzero: is_nonzero(&inv.nonequiv_class).as_str(),
            nonvanishing: inv.equivariant_nonzero.as_str(),
            gamma_power: inv.gamma_power,
            trace: with_trace(trace, &inv.trace),
        })
    }
}

fn invariant_line(inv: &InvariantClass) -> String {
    let mut line = format!(
        "stem degree {}, class {}, nonvanishing: {}",
        inv.stem_degree, inv.nonequiv_class, inv.equivariant_nonzero
    );
    if inv.gamma_power > 0 {
        line.push_str(&format!(" (γ-power {})", inv.gamma_power));
    }
    line
}

fn trace_lines(trace: bool, lines: &[String]) -> Vec<String> {
    if trace {
        lines.iter().map(|l| format!("  {l}")).collect()
    } else {
        Vec::new()
    }
}

#[derive(Serialize)]
struct NonvanishingDoc {
    nonvanishing: &'static str,
    almost_complex_summands: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<Vec<String>>,
}

#[derive(Serialize)]
struct BlowupDoc {
    invariant: InvariantDoc,
    sw_preserved: &'static str,
}

#[derive(Serialize)]
struct SplitDoc {
    query: String,
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<Vec<String>>,
}

#[derive(Serialize)]
struct DistinguishDoc {
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum FingerprintDocEntry {
    Elliptic { multiples: Vec<i64> },
    Declared { classes: Vec<ClassDescriptor> },
}

#[derive(Serialize)]
struct FingerprintDoc {
    entries: Vec<FingerprintDocEntry>,
}

fn execute(cli: &Cli, warnings: &mut Vec<String>) -> CliResult<Report> {
    let trace = cli.trace;
    match &cli.command {
        Command::BasicClasses { pg, m, n } => {
            let (m, n) = if m > n {
                warnings.push(format!(
                    "multiplicities given as ({m}, {n}); using ({n}, {m})"
                ));
                (*n, *m)
            } else {
                (*m, *n)
            };
            let table = basic_class_table(*pg, m, n)?;
            let text = table.iter().map(|(k, v)| format!("{k}: {v}")).collect();
            let doc = BasicClassesDoc {
                p_g: table.p_g,
                m: table.m,
                n: table.n,
                classes: table
                    .iter()
                    .map(|(key, v)| ClassEntry {
                        key,
                        value: raw_integer(v),
                    })
                    .collect(),
            };
            Ok(Report::new(text, &doc))
        }
        Command::Recognizable { pg, m, n } => {
            let block = BuildingBlock::elliptic(*pg, *m, *n)?;
            let (p_g, m, n) = block.elliptic_triple().expect("elliptic block");
            let keys = recognizable_set(p_g, m, n)?;
            let text = vec![keys
                .iter()
                .map(i64::to_string)
                .collect::<Vec<_>>()
                .join(", ")];
            Ok(Report::new(
                text,
                &RecognizableDoc {
                    p_g,
                    m,
                    n,
                    recognizable: keys,
                },
            ))
        }
        Command::Recognize { classes, bounds } => {
            let pattern = Pattern::new(classes.clone())?;
            let result = recognize_candidate(&pattern)?;
            if !result.validated {
                return Err(swcalc::Error::NotAnEllipticPattern(format!(
                    "{pattern}: {}",
                    result.diagnostics.join("; ")
                ))
                .into());
            }
            let oracle = match bounds {
                Some((pg_max, n_max)) => Some(recognize_oracle(
                    &pattern,
                    OracleBounds::new(*pg_max, *n_max)?,
                )),
                None => None,
            };
            let mut text = vec![format!(
                "p_g={} m={} n={} (validated)",
                result.p_g, result.m, result.n
            )];
            if let Some(found) = &oracle {
                let list: Vec<String> = found
                    .iter()
                    .map(|(p, m, n)| format!("({p}, {m}, {n})"))
                    .collect();
                text.push(format!(
                    "oracle: {}",
                    if list.is_empty() {
                        "none".into()
                    } else {
                        list.join(", ")
                    }
                ));
            }
            text.extend(trace_lines(trace, &result.diagnostics));
            let doc = RecognizeDoc {
                pattern: pattern.multiples().to_vec(),
                p_g: result.p_g,
                m: result.m,
                n: result.n,
                validated: result.validated,
                oracle: oracle.map(|v| v.into_iter().map(|(p, m, n)| [p, m, n]).collect()),
                trace: with_trace(trace, &result.diagnostics),
            };
            Ok(Report::new(text, &doc))
        }
        Command::Invariant { file } => {
            let inv = invariant(&load_sum(file, warnings)?)?;
            let mut text = vec![invariant_line(&inv)];
            text.extend(trace_lines(trace, &inv.trace));
            Ok(Report::new(text, &InvariantDoc::new(&inv, trace)?))
        }
        Command::Nonvanishing { file } => {
            let c = nonvanishing_criteria(&load_sum(file, warnings)?)?;
            let mut text = vec![format!(
                "nonvanishing: {} ({} almost complex summand{})",
                c.verdict,
                c.summands,
                if c.summands == 1 { "" } else { "s" }
            )];
            text.extend(trace_lines(trace, &c.trace));
            let doc = NonvanishingDoc {
                nonvanishing: c.verdict.as_str(),
                almost_complex_summands: c.summands,
                trace: with_trace(trace, &c.trace),
            };
            Ok(Report::new(text, &doc))
        }
        Command::Blowup {
            file,
            rank,
            c,
            c_square,
        } => {
            let inv = invariant(&load_sum(file, warnings)?)?;
            let spin_c = match (c, c_square) {
                (Some(coords), _) => SpinC::from_diagonal_coords(coords.clone())?,
                (None, Some(sq)) => SpinC::from_square(*sq),
                (None, None) => SpinC::unit_diagonal(*rank)?,
            };
            let b = blowup(&inv, &BuildingBlock::negative_definite(*rank), &spin_c)?;
            let mut text = vec![
                invariant_line(&b.invariant),
                format!("SW preserved: {}", b.sw_preserved),
            ];
            text.extend(trace_lines(trace, &b.invariant.trace));
            let doc = BlowupDoc {
                invariant: InvariantDoc::new(&b.invariant, trace)?,
                sw_preserved: b.sw_preserved.as_str(),
            };
            Ok(Report::new(text, &doc))
        }
        Command::SplitCheck {
            file,
            modulus,
            residue,
        } => {
            let query = SplitQuery::new(*modulus, *residue)?;
            let v = split_verdict(&load_sum(file, warnings)?, query)?;
            let (verdict, reason, headline) = match &v {
                SplitVerdict::Impossible { .. } => ("impossible", None, "IMPOSSIBLE".to_string()),
                SplitVerdict::ForcesNegativeDefiniteComplement { .. } => (
                    "forces_negative_definite_complement",
                    None,
                    "FORCES NEGATIVE DEFINITE COMPLEMENT".to_string(),
                ),
                SplitVerdict::Unknown { reason, .. } => (
                    "unknown",
                    Some(reason.clone()),
                    format!("UNKNOWN: {reason}"),
                ),
            };
            let mut text = vec![format!("{query}: {headline}")];
            text.extend(trace_lines(trace, v.trace()));
            let doc = SplitDoc {
                query: query.to_string(),
                verdict,
                reason,
                trace: with_trace(trace, v.trace()),
            };
            Ok(Report::new(text, &doc))
        }
        Command::Distinguish { first, second } => {
            let a = load(first, warnings)?;
            let b = load(second, warnings)?;
            let blocks = |doc: &ManifoldDoc, path: &Path| {
                doc.blocks().map_err(|source| CliError::Parse {
                    path: path.display().to_string(),
                    source,
                })
            };
            let d = distinguish(&blocks(&a, first)?, &blocks(&b, second)?);
            let (verdict, reason, line) = match d {
                Distinction::SameSummands => ("same_summands", None, "SAME SUMMANDS".to_string()),
                Distinction::DifferentSummands => (
                    "different_summands",
                    None,
                    "DIFFERENT SUMMANDS: not diffeomorphic".to_string(),
                ),
                Distinction::OutOfRegime(r) => {
                    let line = format!("OUT OF REGIME: {r}");
                    ("out_of_regime", Some(r), line)
                }
            };
            Ok(Report::new(vec![line], &DistinguishDoc { verdict, reason }))
        }
        Command::Fingerprint { file } => {
            let f = odd_basic_fingerprint(&load_sum(file, warnings)?)?;
            let text = if f.is_empty() {
                vec!["(empty)".to_string()]
            } else {
                f.entries().iter().map(ToString::to_string).collect()
            };
            let entries = f
                .entries()
                .iter()
                .map(|e| match e {
                    FingerprintEntry::Elliptic(keys) => FingerprintDocEntry::Elliptic {
                        multiples: keys.clone(),
                    },
                    FingerprintEntry::Declared(classes) => FingerprintDocEntry::Declared {
                        classes: classes
                            .iter()
                            .map(|c| ClassDescriptor {
                                label: c.label.clone(),
                                c_square: c.c_square,
                            })
                            .collect(),
                    },
                })
                .collect();
            Ok(Report::new(text, &FingerprintDoc { entries }))
        }
    }
}
