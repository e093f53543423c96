//! Batch CLI for the overlap-bound analyses: outcome tables, closed-form
//! bounds, assignment combinatorics, LP certificates, noise scans, and
//! model-file validation. Outputs are plain tables, CSV, or JSON; numeric
//! text output carries 12 significant digits so emitted files are stable.

mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ontomodel::{
    bounds, max_pairwise_min_overlap, max_uniform_omega, noise_crossover_scan, overlap, table1,
    triple_intersection_report, OntologicalModel, VertexLpError, DEFAULT_ASSIGNMENT_CAP,
};
use render::{fmt_sig, Csv};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Parser)]
#[command(name = "ontomodel", version, about = "Epistemic-overlap bounds for finite quantum families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the main output to this path instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the three d=3 outcome-probability tables.
    Table1 {
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Closed-form uniform-overlap ceiling d^2/(2d^2-4d+4).
    Bound {
        /// Single dimension (>= 3).
        #[arg(long, conflicts_with_all = ["dmin", "dmax"])]
        dim: Option<usize>,
        /// Start of a dimension range.
        #[arg(long, requires = "dmax")]
        dmin: Option<usize>,
        /// End of a dimension range.
        #[arg(long, requires = "dmin")]
        dmax: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Certainty-set triple-intersection emptiness report.
    Triples {
        #[arg(long)]
        dim: usize,
        /// Assignment-enumeration cap.
        #[arg(long, default_value_t = DEFAULT_ASSIGNMENT_CAP)]
        cap: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// LP-certified upper bound on the uniform epistemic-overlap degree.
    LpOmega {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = DEFAULT_ASSIGNMENT_CAP)]
        cap: u64,
        /// Born-reproduction tolerance used when checking the witness.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Write the witness model (model file format) to this path.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Exact family-LP maximum of the pairwise epistemic min-overlap.
    LpMinoverlap {
        #[arg(long)]
        dim: usize,
        /// Preparation pair, e.g. `p,m`.
        #[arg(long, value_parser = parse_pair)]
        pair: (String, String),
        #[arg(long, default_value_t = DEFAULT_ASSIGNMENT_CAP)]
        cap: u64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Write the witness model (model file format) to this path.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Scan the noise thresholds L(d) vs R(d) over a dimension range.
    NoiseScan {
        #[arg(long)]
        dmin: usize,
        #[arg(long)]
        dmax: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Validate a model file: Born reproduction and support constraints.
    Validate {
        /// Path to a model file (e.g. a witness emitted by lp-omega).
        model: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

fn parse_pair(raw: &str) -> Result<(String, String), String> {
    match raw.split_once(',') {
        Some((a, b)) if !a.is_empty() && !b.is_empty() => Ok((a.to_string(), b.to_string())),
        _ => Err(format!("expected `A,B`, got `{raw}`")),
    }
}

fn main() -> ExitCode {
    // die quietly when a downstream pipe (head, less) closes early
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Table1 { output } => {
            emit(&output, table1_text(output.format)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bound {
            dim,
            dmin,
            dmax,
            output,
        } => {
            let range = match (dim, dmin, dmax) {
                (Some(d), None, None) => d..=d,
                (None, Some(lo), Some(hi)) => lo..=hi,
                _ => return Err(anyhow!("pass either --dim or --dmin/--dmax")),
            };
            emit(&output, bound_text(range, output.format)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Triples { dim, cap, output } => {
            let report = triple_intersection_report(dim, cap).map_err(cap_guidance)?;
            emit(&output, triples_text(&report, output.format)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::LpOmega {
            dim,
            cap,
            tol,
            out,
            format,
        } => {
            let result = max_uniform_omega(dim, cap).map_err(cap_guidance)?;
            let validity = result.witness.validate(tol)?;
            let violations = result.witness.check_support_constraints()?;
            if let Some(path) = out {
                result
                    .witness
                    .write_file(&path)
                    .with_context(|| format!("writing witness to {}", path.display()))?;
            }
            let report = OmegaReport {
                dimension: result.dimension,
                status: result.solution.status.to_string(),
                certified_upper_bound: result.bound,
                pair_constraints: result.pair_count,
                iterations: result.solution.pivots,
                lp_residual: result.solution.max_residual.unwrap_or(0.0),
                witness_born_deviation: validity.max_deviation,
                witness_support_violations: violations.len(),
            };
            print_report(format, &report, &omega_lines(&report), omega_csv(&report))?;
            if !validity.passes || !violations.is_empty() {
                eprintln!("witness failed validation at tol {tol}");
                return Ok(ExitCode::FAILURE);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::LpMinoverlap {
            dim,
            pair,
            cap,
            tol,
            out,
            format,
        } => {
            let (phi, psi) = pair;
            let result = max_pairwise_min_overlap(&phi, &psi, dim, cap).map_err(cap_guidance)?;
            let validity = result.witness.validate(tol)?;
            if let Some(path) = out {
                result
                    .witness
                    .write_file(&path)
                    .with_context(|| format!("writing witness to {}", path.display()))?;
            }
            let family = result.witness.family();
            let q = overlap(
                family.preparation(&phi).expect("known preparation"),
                family.preparation(&psi).expect("known preparation"),
            )?;
            let report = MinOverlapReport {
                dimension: dim,
                phi,
                psi,
                status: result.solution.status.to_string(),
                family_lp_maximum: result.value,
                quantum_overlap: q,
                all_measurement_target: bounds::max_epistemic_target(q)?,
                iterations: result.solution.pivots,
                lp_residual: result.solution.max_residual.unwrap_or(0.0),
                witness_born_deviation: validity.max_deviation,
            };
            print_report(format, &report, &minoverlap_lines(&report), minoverlap_csv(&report))?;
            if !validity.passes {
                eprintln!("witness failed validation at tol {tol}");
                return Ok(ExitCode::FAILURE);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::NoiseScan { dmin, dmax, output } => {
            let scan = noise_crossover_scan(dmin, dmax)?;
            emit(&output, noise_text(&scan, output.format)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate { model, tol } => {
            let model = OntologicalModel::read_file(&model)
                .with_context(|| format!("reading model {}", model.display()))?;
            let report = model.validate(tol)?;
            let violations = model.check_support_constraints()?;
            println!(
                "born deviation: {} (tolerance {})",
                fmt_sig(report.max_deviation, 12),
                fmt_sig(tol, 12)
            );
            if let Some((prep, meas, outcome)) = &report.worst {
                println!("worst triple: ({prep}, {meas}, {outcome})");
            }
            println!("support violations: {}", violations.len());
            for v in violations.iter().take(10) {
                println!(
                    "  {:?} at (prep {}, ontic {}, {} -> {}), response {}",
                    v.kind,
                    v.preparation,
                    v.ontic,
                    v.measurement,
                    v.outcome,
                    fmt_sig(v.value, 12)
                );
            }
            if report.passes && violations.is_empty() {
                println!("result: PASS");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("result: FAIL");
                Ok(ExitCode::FAILURE)
            }
        }
    }
}

/// Point cap errors at the closed-form alternative.
fn cap_guidance(err: VertexLpError) -> anyhow::Error {
    match err {
        VertexLpError::CapExceeded { .. } => {
            anyhow!("{err}; `ontomodel bound --dim N` evaluates the closed form at any dimension")
        }
        other => other.into(),
    }
}

// report structs keep their fields in alphabetical order so the JSON they
// serialize to survives a generic parse-and-reemit byte-identically
#[derive(Serialize)]
struct OmegaReport {
    certified_upper_bound: f64,
    dimension: usize,
    iterations: usize,
    lp_residual: f64,
    pair_constraints: usize,
    status: String,
    witness_born_deviation: f64,
    witness_support_violations: usize,
}

fn omega_lines(r: &OmegaReport) -> Vec<String> {
    vec![
        format!("dimension: {}", r.dimension),
        format!("status: {}", r.status),
        format!(
            "certified upper bound on uniform overlap degree: {}",
            fmt_sig(r.certified_upper_bound, 12)
        ),
        format!("pair constraints: {}", r.pair_constraints),
        format!("iterations: {}", r.iterations),
        format!("lp residual: {}", fmt_sig(r.lp_residual, 12)),
        format!(
            "witness born deviation: {}",
            fmt_sig(r.witness_born_deviation, 12)
        ),
        format!("witness support violations: {}", r.witness_support_violations),
    ]
}

#[derive(Serialize)]
struct MinOverlapReport {
    all_measurement_target: f64,
    dimension: usize,
    family_lp_maximum: f64,
    iterations: usize,
    lp_residual: f64,
    phi: String,
    psi: String,
    quantum_overlap: f64,
    status: String,
    witness_born_deviation: f64,
}

fn minoverlap_lines(r: &MinOverlapReport) -> Vec<String> {
    vec![
        format!("dimension: {}", r.dimension),
        format!("pair: ({}, {})", r.phi, r.psi),
        format!("status: {}", r.status),
        format!("family LP maximum: {}", fmt_sig(r.family_lp_maximum, 12)),
        format!("quantum overlap: {}", fmt_sig(r.quantum_overlap, 12)),
        format!(
            "all-measurement epistemic target: {}",
            fmt_sig(r.all_measurement_target, 12)
        ),
        format!("iterations: {}", r.iterations),
        format!("lp residual: {}", fmt_sig(r.lp_residual, 12)),
        format!(
            "witness born deviation: {}",
            fmt_sig(r.witness_born_deviation, 12)
        ),
    ]
}

fn print_report<T: Serialize>(
    format: Format,
    report: &T,
    lines: &[String],
    csv: String,
) -> Result<()> {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(report)?),
        Format::Csv => print!("{csv}"),
        Format::Table => {
            for line in lines {
                println!("{line}");
            }
        }
    }
    Ok(())
}

fn omega_csv(r: &OmegaReport) -> String {
    let mut csv = Csv::new(vec![
        "dimension",
        "status",
        "certified_upper_bound",
        "pair_constraints",
        "iterations",
        "lp_residual",
        "witness_born_deviation",
        "witness_support_violations",
    ]);
    csv.push(vec![
        r.dimension.to_string(),
        r.status.clone(),
        fmt_sig(r.certified_upper_bound, 12),
        r.pair_constraints.to_string(),
        r.iterations.to_string(),
        fmt_sig(r.lp_residual, 12),
        fmt_sig(r.witness_born_deviation, 12),
        r.witness_support_violations.to_string(),
    ]);
    csv.finish()
}

fn minoverlap_csv(r: &MinOverlapReport) -> String {
    let mut csv = Csv::new(vec![
        "dimension",
        "phi",
        "psi",
        "status",
        "family_lp_maximum",
        "quantum_overlap",
        "all_measurement_target",
        "iterations",
        "lp_residual",
        "witness_born_deviation",
    ]);
    csv.push(vec![
        r.dimension.to_string(),
        r.phi.clone(),
        r.psi.clone(),
        r.status.clone(),
        fmt_sig(r.family_lp_maximum, 12),
        fmt_sig(r.quantum_overlap, 12),
        fmt_sig(r.all_measurement_target, 12),
        r.iterations.to_string(),
        fmt_sig(r.lp_residual, 12),
        fmt_sig(r.witness_born_deviation, 12),
    ]);
    csv.finish()
}

fn emit(output: &OutputArgs, text: String) -> Result<()> {
    match &output.out {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing output to {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn table1_text(format: Format) -> Result<String> {
    let tables = table1();
    match format {
        Format::Csv => {
            let mut csv = Csv::new(vec![
                "measurement",
                "preparation",
                "outcome_1",
                "p_1",
                "outcome_2",
                "p_2",
                "outcome_3",
                "p_3",
            ]);
            for table in &tables {
                for (prep, probs) in &table.rows {
                    let mut row = vec![table.measurement.clone(), prep.clone()];
                    for (label, &p) in table.outcome_labels.iter().zip(probs) {
                        row.push(label.clone());
                        row.push(fmt_sig(p, 12));
                    }
                    csv.push(row);
                }
            }
            Ok(csv.finish())
        }
        Format::Json => {
            #[derive(Serialize)]
            struct JsonTable<'a> {
                measurement: &'a str,
                outcomes: &'a [String],
                rows: Vec<JsonRow<'a>>,
            }
            #[derive(Serialize)]
            struct JsonRow<'a> {
                preparation: &'a str,
                probabilities: &'a [f64],
            }
            let value: Vec<JsonTable> = tables
                .iter()
                .map(|t| JsonTable {
                    measurement: &t.measurement,
                    outcomes: &t.outcome_labels,
                    rows: t
                        .rows
                        .iter()
                        .map(|(p, probs)| JsonRow {
                            preparation: p,
                            probabilities: probs,
                        })
                        .collect(),
                })
                .collect();
            Ok(format!("{}\n", serde_json::to_string_pretty(&value)?))
        }
        Format::Table => {
            let mut text = String::new();
            for table in &tables {
                text.push_str(&format!("{}\n", table.measurement));
                text.push_str(&format!(
                    "{:>6} {}\n",
                    "",
                    table
                        .outcome_labels
                        .iter()
                        .map(|l| format!("{l:>16}"))
                        .collect::<String>()
                ));
                for (prep, probs) in &table.rows {
                    text.push_str(&format!(
                        "{prep:>6} {}\n",
                        probs
                            .iter()
                            .map(|&p| format!("{:>16}", fmt_sig(p, 12)))
                            .collect::<String>()
                    ));
                }
                text.push('\n');
            }
            Ok(text)
        }
    }
}

fn bound_text(range: std::ops::RangeInclusive<usize>, format: Format) -> Result<String> {
    let rows: Vec<(usize, f64)> = range
        .clone()
        .map(|d| Ok((d, bounds::omega_bound(d)?)))
        .collect::<Result<_>>()?;
    match format {
        Format::Csv => {
            let mut csv = Csv::new(vec!["d", "omega_bound"]);
            for (d, bound) in &rows {
                csv.push(vec![d.to_string(), fmt_sig(*bound, 12)]);
            }
            Ok(csv.finish())
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Row {
                d: usize,
                omega_bound: f64,
            }
            let value: Vec<Row> = rows
                .iter()
                .map(|&(d, omega_bound)| Row { d, omega_bound })
                .collect();
            Ok(format!("{}\n", serde_json::to_string_pretty(&value)?))
        }
        Format::Table => {
            let mut text = String::new();
            if rows.len() == 1 {
                text.push_str(&format!("{}\n", fmt_sig(rows[0].1, 12)));
            } else {
                for (d, bound) in &rows {
                    text.push_str(&format!("{d:>6} {}\n", fmt_sig(*bound, 12)));
                }
            }
            Ok(text)
        }
    }
}

fn triples_text(
    report: &ontomodel::TripleIntersectionReport,
    format: Format,
) -> Result<String> {
    match format {
        Format::Csv => {
            let mut csv = Csv::new(vec!["state", "triple_intersection_empty"]);
            for (state, empty) in &report.per_state {
                csv.push(vec![state.clone(), empty.to_string()]);
            }
            csv.push(vec!["union".to_string(), report.union_empty.to_string()]);
            Ok(csv.finish())
        }
        Format::Json => {
            #[derive(Serialize)]
            struct JsonReport<'a> {
                assignment_count: usize,
                dimension: usize,
                per_state: Vec<(&'a str, bool)>,
                union_empty: bool,
            }
            let value = JsonReport {
                dimension: report.dimension,
                assignment_count: report.assignment_count,
                per_state: report
                    .per_state
                    .iter()
                    .map(|(s, e)| (s.as_str(), *e))
                    .collect(),
                union_empty: report.union_empty,
            };
            Ok(format!("{}\n", serde_json::to_string_pretty(&value)?))
        }
        Format::Table => {
            let mut text = format!(
                "dimension {} ({} assignments)\n",
                report.dimension, report.assignment_count
            );
            for (state, empty) in &report.per_state {
                text.push_str(&format!(
                    "S_{state} ∩ S_p ∩ S_m: {}\n",
                    if *empty { "empty" } else { "NON-EMPTY" }
                ));
            }
            text.push_str(&format!(
                "union over basis states: {}\n",
                if report.union_empty { "empty" } else { "NON-EMPTY" }
            ));
            Ok(text)
        }
    }
}

fn noise_text(scan: &ontomodel::NoiseScan, format: Format) -> Result<String> {
    match format {
        Format::Csv => {
            let mut csv = Csv::new(vec!["d", "L", "R", "strict"]);
            for row in &scan.rows {
                csv.push(vec![
                    row.d.to_string(),
                    fmt_sig(row.overlap_cap, 12),
                    fmt_sig(row.epistemic_target, 12),
                    row.strict.to_string(),
                ]);
            }
            Ok(csv.finish())
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Row {
                #[serde(rename = "L")]
                overlap_cap: f64,
                #[serde(rename = "R")]
                epistemic_target: f64,
                d: usize,
                strict: bool,
            }
            #[derive(Serialize)]
            struct JsonScan {
                first_strict: Option<usize>,
                rows: Vec<Row>,
            }
            let value = JsonScan {
                rows: scan
                    .rows
                    .iter()
                    .map(|r| Row {
                        d: r.d,
                        overlap_cap: r.overlap_cap,
                        epistemic_target: r.epistemic_target,
                        strict: r.strict,
                    })
                    .collect(),
                first_strict: scan.first_strict,
            };
            Ok(format!("{}\n", serde_json::to_string_pretty(&value)?))
        }
        Format::Table => {
            let mut text = format!("{:>6} {:>18} {:>18} {:>7}\n", "d", "L", "R", "strict");
            for row in &scan.rows {
                text.push_str(&format!(
                    "{:>6} {:>18} {:>18} {:>7}\n",
                    row.d,
                    fmt_sig(row.overlap_cap, 12),
                    fmt_sig(row.epistemic_target, 12),
                    row.strict
                ));
            }
            match scan.first_strict {
                Some(d) => text.push_str(&format!("first strict dimension: {d}\n")),
                None => text.push_str("no strict dimension in range\n"),
            }
            Ok(text)
        }
    }
}
