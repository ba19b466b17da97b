//! Command-line front end.

use std::ffi::OsString;
use std::io::{IsTerminal, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::evolution::MetricsMatrix;
use crate::metrics::Metric;
use crate::report::{
    emit_charts, emit_matrix, load_manifest, read_matrix_csv, run_analysis, unreadable_files, write_file,
    AnalyzeOptions, MatrixFormat, RunReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "iris",
    version,
    about = "Size and complexity metrics across releases of a Java code base"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute the metrics matrix for every release in a manifest.
    Analyze(AnalyzeArgs),
    /// Classify trends of a precomputed matrix CSV.
    Trends(TrendsArgs),
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    /// JSON manifest listing the releases in order.
    #[arg(long)]
    manifest: PathBuf,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
    /// Matrix formats to write (matrix.csv, matrix.json).
    #[arg(long, value_delimiter = ',', default_value = "csv")]
    format: Vec<MatrixFormat>,
    /// Write one SVG chart per metric (the default).
    #[arg(long, overrides_with = "no_charts")]
    charts: bool,
    /// Skip chart generation.
    #[arg(long)]
    no_charts: bool,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Abort on the first file that fails to parse.
    #[arg(long)]
    strict: bool,
    /// Include wall-clock timings in report.json.
    #[arg(long)]
    timing: bool,
    /// Glob of files to read, relative to each release root (repeatable).
    #[arg(long)]
    include: Vec<String>,
    /// Glob of files to ignore (repeatable).
    #[arg(long)]
    exclude: Vec<String>,
}

#[derive(Debug, Args)]
struct TrendsArgs {
    /// Matrix CSV with the `variant,date,LOC,...` header.
    #[arg(long)]
    matrix: PathBuf,
    /// Optional directory for report.json and charts.
    #[arg(long)]
    out: Option<PathBuf>,
}

struct Term {
    color: bool,
}

impl Term {
    fn paint(&self, text: &str, code: &str) -> String {
        if self.color {
            format!("\x1b[{code}m{text}\x1b[0m")
        } else {
            text.to_string()
        }
    }
}

fn color_wanted() -> bool {
    std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty()) && std::io::stdout().is_terminal()
}

/// Parses `args` (including the program name), runs the command, and returns the exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let color = color_wanted();
    run_cli_with(
        args,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
        color,
    )
}

/// Same as [`run_cli`], writing to the given streams.
pub fn run_cli_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write, color: bool) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = if color {
                e.render().ansi().to_string()
            } else {
                e.render().to_string()
            };
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let term = Term { color };
    let result = match cli.command {
        Command::Analyze(a) => analyze(a, out, &term),
        Command::Trends(t) => trends(t, out, &term),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "{}: {e}", term.paint("error", "31"));
            match e {
                Error::Parse { .. } => EXIT_PARSE,
                _ => EXIT_INPUT,
            }
        }
    }
}

fn create_dir(path: &std::path::Path) -> Result<()> {
    std::fs::create_dir_all(path).map_err(|source| Error::Write {
        path: path.to_path_buf(),
        source,
    })
}

fn analyze(a: AnalyzeArgs, out: &mut dyn Write, term: &Term) -> Result<()> {
    let manifest = load_manifest(&a.manifest)?;
    let opts = AnalyzeOptions {
        jobs: a.jobs,
        strict: a.strict,
        include: a.include,
        exclude: a.exclude,
    };
    let report = run_analysis(&manifest, &opts)?;
    create_dir(&a.out)?;
    let mut formats = a.format;
    formats.sort();
    formats.dedup();
    for f in formats {
        let name = match f {
            MatrixFormat::Csv => "matrix.csv",
            MatrixFormat::Json => "matrix.json",
        };
        write_file(&a.out.join(name), &emit_matrix(&report.matrix, f))?;
    }
    write_file(&a.out.join("report.json"), &report.to_json(a.timing))?;
    let charts = !a.no_charts && report.matrix.len() >= 2;
    if charts {
        emit_charts(&report.matrix, &a.out.join("charts"))?;
    }

    print_summary(&report, out, term);
    for d in unreadable_files(&report) {
        let _ = writeln!(out, "{} [{}] {}", term.paint("warning", "33"), d.release, d.diagnostic);
    }
    if report.matrix.len() < 2 {
        let _ = writeln!(out, "note: only one release; trends and charts need at least two");
    }
    if a.timing {
        let _ = writeln!(out, "time: {} ms", report.timing.total);
    }
    Ok(())
}

fn trends(t: TrendsArgs, out: &mut dyn Write, term: &Term) -> Result<()> {
    let matrix = read_matrix_csv(&t.matrix)?;
    if matrix.len() < 2 {
        return Err(Error::InsufficientReleases {
            needed: 2,
            got: matrix.len(),
        });
    }
    let report = RunReport::from_matrix(matrix);
    if let Some(dir) = &t.out {
        create_dir(dir)?;
        write_file(&dir.join("report.json"), &report.to_json(false))?;
        emit_charts(&report.matrix, &dir.join("charts"))?;
    }
    print_summary(&report, out, term);
    Ok(())
}

fn print_table(matrix: &MetricsMatrix, out: &mut dyn Write) {
    let mut rows: Vec<Vec<String>> = vec![crate::report::csv_header().iter().map(|s| s.to_string()).collect()];
    rows[0][0] = "release".into();
    for r in matrix.rows() {
        let mut cells = vec![r.release_name.clone(), r.release_date.format("%Y-%m-%d").to_string()];
        cells.extend(r.values().iter().map(u64::to_string));
        rows.push(cells);
    }
    let widths: Vec<usize> = (0..rows[0].len())
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    for r in &rows {
        let line: Vec<String> = r
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(i, (cell, w))| {
                if i < 2 {
                    format!("{cell:<w$}")
                } else {
                    format!("{cell:>w$}")
                }
            })
            .collect();
        let _ = writeln!(out, "{}", line.join("  ").trim_end());
    }
}

fn print_summary(report: &RunReport, out: &mut dyn Write, term: &Term) {
    print_table(&report.matrix, out);
    if let Some(trends) = &report.trends {
        let _ = writeln!(out);
        for t in trends.trends() {
            let _ = writeln!(
                out,
                "{:<5} {:<20} net {:+}",
                t.metric.abbrev(),
                t.class.as_str(),
                t.net_change
            );
        }
    }
    let common: Vec<&str> = report
        .commonality
        .common_metrics
        .iter()
        .map(|m: &Metric| m.abbrev())
        .collect();
    let _ = writeln!(
        out,
        "common: {}",
        if common.is_empty() {
            "-".to_string()
        } else {
            common.join(" ")
        }
    );
    if let Some(v) = &report.verdict {
        let line = v.to_string();
        let all = v.complexity_supported && v.growth_supported && v.change_detected;
        let _ = writeln!(out, "{}", term.paint(&line, if all { "32" } else { "33" }));
    }
}
