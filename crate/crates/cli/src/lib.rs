//! The `steinhaus` command-line tool.
//!
//! Exit codes: `0` on success, `1` for usage errors, `2` for domain errors
//! (the diagnostic names the error kind, e.g. `EvenModulus`).

pub mod render;

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use steinhaus::par::available_workers;
use steinhaus::search::DEFAULT_MAX_STATES;
use steinhaus::{
    admissible_classes, alpha, beta, brute_force_balanced, classify_even_aps, construct_balanced_ap, count_balanced,
    coverage_fraction, molluzzo_probe, Error, Family, Modulus, SearchBudget, Sequence,
};

pub use render::render_triangle;

/// Environment variable holding the default `--max-states` budget.
pub const MAX_STATES_ENV: &str = "STEINHAUS_MAX_STATES";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Alpha,
    Beta,
}

#[derive(Debug, Parser)]
#[command(name = "steinhaus", version, about = "Steinhaus triangles and balanced sequences over Z/nZ")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    format: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the Steinhaus triangle of a sequence.
    Triangle {
        #[arg(long)]
        n: u64,
        /// Comma-separated residues, e.g. 0,1,2,2.
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
    },
    /// Print an iterated derived sequence.
    Derive {
        #[arg(long)]
        n: u64,
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
        /// Number of derivations.
        #[arg(long, default_value_t = 1)]
        times: usize,
    },
    /// Check whether a sequence is balanced.
    Balanced {
        #[arg(long)]
        n: u64,
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
    },
    /// Multiplicative order of 2^n modulo an odd n.
    Alpha {
        #[arg(long)]
        n: u64,
    },
    /// Least e with 2^(en) = ±1 modulo an odd n.
    Beta {
        #[arg(long)]
        n: u64,
    },
    /// Residue classes of lengths m with n | C(m+1, 2).
    Admissible {
        #[arg(long)]
        n: u64,
        /// Also list every admissible m up to this bound.
        #[arg(long)]
        max: Option<u64>,
    },
    /// Build a balanced arithmetic progression for odd n.
    Construct {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: usize,
        /// Common difference, must be invertible modulo n.
        #[arg(long)]
        d: Option<u64>,
        #[arg(long, value_enum, default_value_t = FamilyArg::Beta)]
        family: FamilyArg,
        /// First term (alpha family only).
        #[arg(long)]
        a: Option<u64>,
    },
    /// Enumerate all balanced sequences of length m.
    Search {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        count_only: bool,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, env = MAX_STATES_ENV, default_value_t = DEFAULT_MAX_STATES)]
        max_states: u64,
    },
    /// List every balanced arithmetic progression with length up to max-m.
    ClassifyEven {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 40)]
        max_m: usize,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Decide whether a balanced sequence of length m exists.
    Probe {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, env = MAX_STATES_ENV, default_value_t = DEFAULT_MAX_STATES)]
        max_states: u64,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(msg) => Failure::Usage(msg),
            other => Failure::Domain(other),
        }
    }
}

type Outcome = std::result::Result<String, Failure>;

/// Parses `args` (including the program name), runs the command and writes
/// the result to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    1
                }
            };
        }
    };
    match execute(&cli) {
        Ok(text) => {
            let _ = writeln!(out, "{text}");
            0
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn emit<T: Serialize>(format: OutputFormat, value: &T, text: impl FnOnce() -> String) -> Outcome {
    Ok(match format {
        OutputFormat::Json => serde_json::to_string(value).expect("serializable output"),
        OutputFormat::Text => text(),
    })
}

fn parse_seq(n: u64, text: &str) -> std::result::Result<Sequence, Failure> {
    let modulus = Modulus::new(n)?;
    Ok(Sequence::parse(modulus, text)?)
}

fn join<T: ToString>(values: &[T]) -> String {
    values.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn workers_or_default(workers: Option<usize>) -> usize {
    workers.unwrap_or_else(available_workers).max(1)
}

#[derive(Serialize)]
struct TriangleOut {
    n: u64,
    m: usize,
    rows: Vec<Vec<u64>>,
    multiplicities: Vec<u64>,
}

#[derive(Serialize)]
struct DeriveOut {
    n: u64,
    m: usize,
    times: usize,
    seq: Vec<u64>,
}

#[derive(Serialize)]
struct BalancedOut {
    n: u64,
    m: usize,
    balanced: bool,
    multiplicities: Vec<u64>,
}

#[derive(Serialize)]
struct AlphaOut {
    n: u64,
    alpha: u64,
}

#[derive(Serialize)]
struct BetaOut {
    n: u64,
    beta: u64,
}

#[derive(Serialize)]
struct AdmissibleOut {
    n: u64,
    period: u64,
    classes: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    coverage: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lengths: Option<Vec<u64>>,
}

#[derive(Serialize)]
struct ConstructOut {
    n: u64,
    m: usize,
    family: &'static str,
    a: u64,
    d: u64,
    seq: Vec<u64>,
    balanced: bool,
    multiplicities: Vec<u64>,
}

#[derive(Serialize)]
struct SearchOut {
    n: u64,
    m: usize,
    count: u64,
    states_examined: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    found: Option<Vec<Vec<u64>>>,
}

#[derive(Serialize)]
struct ApOut {
    a: u64,
    d: u64,
    m: usize,
    seq: Vec<u64>,
}

#[derive(Serialize)]
struct ClassifyOut {
    n: u64,
    max_m: usize,
    count: usize,
    found: Vec<ApOut>,
}

#[derive(Serialize)]
struct ProbeOut {
    n: u64,
    m: usize,
    exists: bool,
    method: &'static str,
    seq: Option<Vec<u64>>,
}

fn execute(cli: &Cli) -> Outcome {
    let format = cli.format;
    match &cli.command {
        Command::Triangle { n, seq } => {
            let x = parse_seq(*n, seq)?;
            let t = x.triangle();
            let out = TriangleOut {
                n: *n,
                m: x.len(),
                rows: t.rows().to_vec(),
                multiplicities: x.multiplicities().into_counts(),
            };
            emit(format, &out, || render_triangle(&t))
        }
        Command::Derive { n, seq, times } => {
            let x = parse_seq(*n, seq)?;
            let derived = if *times == 1 { x.derive()? } else { x.derive_n(*times)? };
            let out = DeriveOut {
                n: *n,
                m: x.len(),
                times: *times,
                seq: derived.terms().to_vec(),
            };
            emit(format, &out, || derived.to_string())
        }
        Command::Balanced { n, seq } => {
            let x = parse_seq(*n, seq)?;
            let out = BalancedOut {
                n: *n,
                m: x.len(),
                balanced: x.is_balanced(),
                multiplicities: x.multiplicities().into_counts(),
            };
            emit(format, &out, || {
                format!("balanced: {}\nmultiplicities: {}", out.balanced, join(&out.multiplicities))
            })
        }
        Command::Alpha { n } => {
            let out = AlphaOut { n: *n, alpha: alpha(*n)? };
            emit(format, &out, || out.alpha.to_string())
        }
        Command::Beta { n } => {
            let out = BetaOut { n: *n, beta: beta(*n)? };
            emit(format, &out, || out.beta.to_string())
        }
        Command::Admissible { n, max } => {
            let classes = admissible_classes(*n)?;
            let out = AdmissibleOut {
                n: *n,
                period: classes.period(),
                classes: classes.residues().to_vec(),
                coverage: coverage_fraction(*n).ok().map(|f| f.to_string()),
                lengths: max.map(|max| classes.lengths_up_to(max)),
            };
            emit(format, &out, || {
                let mut text = format!("period: {}\nclasses: {}", out.period, join(&out.classes));
                if let Some(c) = &out.coverage {
                    text.push_str(&format!("\ncoverage: {c}"));
                }
                if let Some(lengths) = &out.lengths {
                    text.push_str(&format!("\nlengths: {}", join(lengths)));
                }
                text
            })
        }
        Command::Construct { n, m, d, family, a } => {
            let family = match (family, a) {
                (FamilyArg::Alpha, a) => Family::Alpha { a: a.unwrap_or(0) },
                (FamilyArg::Beta, None) => Family::Beta,
                (FamilyArg::Beta, Some(_)) => {
                    return Err(Failure::Usage("--a requires --family alpha".into()));
                }
            };
            let ap = construct_balanced_ap(*n, *m, *d, family)?;
            let x = ap.to_sequence();
            let out = ConstructOut {
                n: *n,
                m: *m,
                family: family.name(),
                a: ap.first().value(),
                d: ap.difference().value(),
                seq: x.terms().to_vec(),
                balanced: x.is_balanced(),
                multiplicities: x.multiplicities().into_counts(),
            };
            emit(format, &out, || {
                format!(
                    "{ap}\nseq: {x}\nbalanced: {}\nmultiplicities: {}",
                    out.balanced,
                    join(&out.multiplicities)
                )
            })
        }
        Command::Search {
            n,
            m,
            count_only,
            workers,
            max_states,
        } => {
            let budget = SearchBudget::new(*max_states, workers_or_default(*workers));
            let report = if *count_only {
                count_balanced(*n, *m, &budget)?
            } else {
                brute_force_balanced(*n, *m, &budget)?
            };
            let out = SearchOut {
                n: *n,
                m: *m,
                count: report.count,
                states_examined: report.states_examined,
                found: (!count_only).then(|| report.found.iter().map(|s| s.terms().to_vec()).collect()),
            };
            emit(format, &out, || {
                let mut text = format!("count: {}\nstates_examined: {}", out.count, out.states_examined);
                for s in &report.found {
                    text.push_str(&format!("\n{s}"));
                }
                text
            })
        }
        Command::ClassifyEven { n, max_m, workers } => {
            let aps = classify_even_aps(*n, *max_m, workers_or_default(*workers))?;
            let out = ClassifyOut {
                n: *n,
                max_m: *max_m,
                count: aps.len(),
                found: aps
                    .iter()
                    .map(|ap| ApOut {
                        a: ap.first().value(),
                        d: ap.difference().value(),
                        m: ap.len(),
                        seq: ap.to_sequence().into_terms(),
                    })
                    .collect(),
            };
            emit(format, &out, || {
                let mut text = format!("count: {}", out.count);
                for ap in &aps {
                    text.push_str(&format!("\n{ap}: {}", ap.to_sequence()));
                }
                text
            })
        }
        Command::Probe {
            n,
            m,
            workers,
            max_states,
        } => {
            let budget = SearchBudget::new(*max_states, workers_or_default(*workers));
            let r = molluzzo_probe(*n, *m, &budget)?;
            let out = ProbeOut {
                n: r.n,
                m: r.m,
                exists: r.exists,
                method: r.method.name(),
                seq: r.witness.as_ref().map(|s| s.terms().to_vec()),
            };
            emit(format, &out, || {
                let mut text = format!("exists: {}\nmethod: {}", out.exists, out.method);
                if let Some(w) = &r.witness {
                    text.push_str(&format!("\nwitness: {w}"));
                }
                text
            })
        }
    }
}
