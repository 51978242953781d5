use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use zfprop::characterize::{comb_analysis, generalized_star_table};
use zfprop::corpus::{bundled_upto6, read_corpus};
use zfprop::graph::{parse_graph6, Family};
use zfprop::nullity::{certify_family, InvolutionFamily};
use zfprop::search::{analyze, write_csv, AnalysisReport, Budget};
use zfprop::verify::{verify_corpus, Suite};
use zfprop::{Error, Graph};

/// Exact zero forcing number and propagation time toolkit.
#[derive(Parser, Debug)]
#[command(name = "zfprop", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Largest order for the exact zero forcing search.
    #[arg(long, global = true, env = "ZFPROP_BUDGET_Z", default_value_t = 32)]
    budget_z: usize,
    /// Largest order for enumerating sets of forces.
    #[arg(long, global = true, env = "ZFPROP_BUDGET_FORCES", default_value_t = 6)]
    budget_forces: usize,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, env = "ZFPROP_JOBS", default_value_t = 0)]
    jobs: usize,
    /// Output file; standard output when absent.
    #[arg(long, global = true, env = "ZFPROP_OUT")]
    out: Option<PathBuf>,
    #[arg(long, global = true, env = "ZFPROP_FORMAT", value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Input {
    /// Inline graph6 record.
    #[arg(long, env = "ZFPROP_G6")]
    g6: Option<String>,
    /// File of graph6 records, one per line.
    #[arg(long, env = "ZFPROP_G6_FILE")]
    g6_file: Option<PathBuf>,
    /// Named family followed by its integer parameters, e.g. `genstar 2 5 11`.
    #[arg(long, num_args = 1.., value_names = ["NAME", "ARGS"])]
    family: Option<Vec<String>>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Z, pt, PT, realized times and efficient sets of one or more graphs.
    Analyze {
        #[command(flatten)]
        input: Input,
    },
    /// Family report: the labelled table for generalized stars, the leaf
    /// bound report for combs, the plain analysis otherwise.
    Family {
        #[arg(long, num_args = 1.., required = true, value_names = ["NAME", "ARGS"])]
        family: Vec<String>,
    },
    /// Runs theorem suites over a corpus of graph6 records.
    CorpusVerify {
        /// Corpus file; the bundled corpus of all graphs on at most six
        /// vertices is used when absent.
        #[arg(long, env = "ZFPROP_G6_FILE")]
        g6_file: Option<PathBuf>,
        /// Comma-separated suite names, or `all`.
        #[arg(long, env = "ZFPROP_SUITES", default_value = "all")]
        suites: String,
        /// Where to write the exceptional zigzag graphs (graph6, plus a
        /// `.json` sidecar).
        #[arg(long, env = "ZFPROP_EXCEPTIONS")]
        exceptions: Option<PathBuf>,
    },
    /// Maximum-nullity certificate for `G (□ P2)^s`, `G` = `Kn <n>` or `P2`.
    Witness {
        #[arg(long, num_args = 1.., required = true, value_names = ["NAME", "ARGS"])]
        family: Vec<String>,
        #[arg(long, env = "ZFPROP_STEPS", default_value_t = 1)]
        steps: usize,
    },
}

/// A failure with the exit code it maps to.
#[derive(Debug)]
struct Exit {
    code: u8,
    message: String,
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<Error>() {
            return match e {
                Error::Violation(_) => 1,
                Error::Graph6 { .. } => 3,
                _ => 2,
            };
        }
        if cause.downcast_ref::<io::Error>().is_some() || cause.downcast_ref::<csv::Error>().is_some() {
            return 3;
        }
        if let Some(e) = cause.downcast_ref::<Exit>() {
            return e.code;
        }
    }
    2
}

impl std::fmt::Display for Exit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Exit {}

fn violation(message: String) -> anyhow::Error {
    anyhow!(Exit { code: 1, message })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let c = &cli.common;
    if c.budget_z == 0 || c.budget_forces == 0 {
        bail!(Error::InvalidArgument("budgets must be positive".into()));
    }
    if c.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(c.jobs)
            .build_global()
            .context("configuring worker pool")?;
    }
    let budget = Budget {
        max_order: c.budget_z,
        max_force_order: c.budget_forces,
        ..Budget::default()
    };
    match &cli.command {
        Command::Analyze { input } => cmd_analyze(c, input, &budget),
        Command::Family { family } => cmd_family(c, family, &budget),
        Command::CorpusVerify {
            g6_file,
            suites,
            exceptions,
        } => cmd_corpus_verify(c, g6_file.as_ref(), suites, exceptions.as_ref(), &budget),
        Command::Witness { family, steps } => cmd_witness(c, family, *steps, &budget),
    }
}

fn emit(c: &Common, bytes: &[u8]) -> Result<()> {
    match &c.out {
        Some(path) => fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))?,
        None => io::stdout().lock().write_all(bytes)?,
    }
    Ok(())
}

fn json_bytes<T: serde::Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut out = serde_json::to_vec_pretty(value)?;
    out.push(b'\n');
    Ok(out)
}

/// Splits `NAME ARGS..` into the name and integer parameters.
fn family_spec(words: &[String]) -> Result<(&str, Vec<usize>)> {
    let (name, rest) = words.split_first().ok_or_else(|| anyhow!(Error::InvalidArgument("empty family".into())))?;
    let params = rest
        .iter()
        .map(|w| {
            w.parse::<usize>()
                .map_err(|_| Error::InvalidArgument(format!("family parameter {w:?} is not a non-negative integer")))
        })
        .collect::<std::result::Result<_, _>>()?;
    Ok((name, params))
}

fn read_file(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_input(input: &Input) -> Result<Vec<Graph>> {
    if let Some(g6) = &input.g6 {
        return Ok(vec![parse_graph6(g6.trim())?]);
    }
    if let Some(path) = &input.g6_file {
        return Ok(read_corpus(&read_file(path)?)?);
    }
    let words = input.family.as_deref().unwrap_or_default();
    let (name, params) = family_spec(words)?;
    Ok(vec![Family::parse(name, &params)?.build()?])
}

fn cmd_analyze(c: &Common, input: &Input, budget: &Budget) -> Result<()> {
    let graphs = load_input(input)?;
    let reports: Vec<AnalysisReport> = graphs
        .par_iter()
        .map(|g| analyze(g, budget))
        .collect::<std::result::Result<_, _>>()?;
    for r in &reports {
        r.check_invariants()?;
    }
    let bytes = match c.format {
        Format::Json if reports.len() == 1 => json_bytes(&reports[0])?,
        Format::Json => json_bytes(&reports)?,
        Format::Csv => {
            let mut out = Vec::new();
            write_csv(&mut out, &reports)?;
            out
        }
    };
    emit(c, &bytes)
}

fn csv_bytes(header: &[&str], rows: &[Vec<String>]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    Ok(w.into_inner().map_err(|e| e.into_error())?)
}

fn cmd_family(c: &Common, words: &[String], budget: &Budget) -> Result<()> {
    let (name, params) = family_spec(words)?;
    let family = Family::parse(name, &params)?;
    match family {
        Family::GeneralizedStar(a, b, e3) => {
            let table = generalized_star_table([a, b, e3], budget)?;
            let bytes = match c.format {
                Format::Json => json_bytes(&table)?,
                Format::Csv => {
                    let rows: Vec<Vec<String>> = table
                        .rows
                        .iter()
                        .map(|r| {
                            vec![
                                r.set_labels.clone(),
                                r.pt.map(|p| p.to_string()).unwrap_or_default(),
                                r.formula.to_string(),
                                r.predicted.to_string(),
                                r.is_minimum.to_string(),
                            ]
                        })
                        .collect();
                    csv_bytes(&["set", "pt", "closed_form", "predicted", "minimum"], &rows)?
                }
            };
            emit(c, &bytes)?;
            if !table.matches() {
                return Err(violation(format!("S({a},{b},{e3}) does not match its closed forms")));
            }
            Ok(())
        }
        Family::Comb(k) => {
            let report = comb_analysis(k, budget)?;
            let bytes = match c.format {
                Format::Json => json_bytes(&report)?,
                Format::Csv => {
                    let row = [report.k, report.n, report.diameter, report.leaves, report.z, report.pt]
                        .map(|x| x.to_string())
                        .into_iter()
                        .chain([report.prescribed_pt.to_string(), report.exact.to_string()])
                        .collect();
                    csv_bytes(&["k", "n", "diameter", "leaves", "Z", "pt", "prescribed_pt", "exact"], &[row])?
                }
            };
            emit(c, &bytes)
        }
        _ => cmd_analyze(
            c,
            &Input {
                g6: None,
                g6_file: None,
                family: Some(words.to_vec()),
            },
            budget,
        ),
    }
}

fn cmd_corpus_verify(
    c: &Common,
    g6_file: Option<&PathBuf>,
    suites: &str,
    exceptions: Option<&PathBuf>,
    budget: &Budget,
) -> Result<()> {
    let suites = Suite::parse_list(suites)?;
    let graphs = match g6_file {
        Some(path) => read_corpus(&read_file(path)?)?,
        None => bundled_upto6(),
    };
    let run = verify_corpus(&graphs, &suites, budget);
    let bytes = match c.format {
        Format::Json => json_bytes(&run)?,
        Format::Csv => {
            let mut out = Vec::new();
            run.write_csv(&mut out)?;
            out
        }
    };
    emit(c, &bytes)?;
    if let Some(path) = exceptions {
        fs::write(path, run.exceptions_graph6()).with_context(|| format!("writing {}", path.display()))?;
        let mut sidecar = path.clone().into_os_string();
        sidecar.push(".json");
        fs::write(&sidecar, run.exceptions_json() + "\n").context("writing exceptions sidecar")?;
    }
    if !run.violations.is_empty() {
        for v in &run.violations {
            eprintln!("violation [{}] {}: {}", v.suite, v.graph6, v.message);
            if let Some(r) = &v.report {
                eprintln!("{}", serde_json::to_string(r)?);
            }
        }
        return Err(violation(format!("{} theorem violation(s)", run.violations.len())));
    }
    Ok(())
}

fn cmd_witness(c: &Common, words: &[String], steps: usize, budget: &Budget) -> Result<()> {
    let (name, params) = family_spec(words)?;
    let family = InvolutionFamily::parse(name, &params)?;
    let cert = certify_family(family, steps, budget)?;
    let bytes = match c.format {
        Format::Json => json_bytes(&cert)?,
        Format::Csv => {
            let opt = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
            let row = vec![
                cert.family.clone(),
                cert.steps.to_string(),
                cert.order.to_string(),
                cert.graph6.clone(),
                cert.m_lower.to_string(),
                opt(cert.z_exact),
                opt(cert.pt_exact),
                cert.m_squared_is_2i.to_string(),
            ];
            csv_bytes(
                &["family", "steps", "order", "graph6", "M_lower", "Z", "pt", "M_squared_is_2I"],
                &[row],
            )?
        }
    };
    emit(c, &bytes)
}
