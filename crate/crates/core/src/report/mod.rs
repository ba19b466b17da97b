//! Manifest ingestion, the end-to-end pipeline, and output emission.

mod charts;
mod manifest;
mod matrix_io;

use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

pub use charts::{emit_charts, render_chart};
pub use manifest::{load_manifest, Manifest, Release};
pub use matrix_io::{csv_header, emit_matrix, parse_matrix_csv, read_matrix_csv, MatrixFormat};

use crate::code_model::{link_variant, parse_unit, parse_unit_lenient, scan_variant, Diagnostic, DiagnosticKind};
use crate::error::{Error, Result};
use crate::evolution::{
    analyze_evolution, build_matrix, commonality_report, evaluate_hypothesis, CommonalityReport, HypothesisVerdict,
    MetricsMatrix, TrendReport,
};
use crate::metrics::{compute_metrics, MetricsConfig, MetricsVector};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AnalyzeOptions {
    /// Worker threads; 0 lets the pool pick.
    pub jobs: usize,
    /// Fail on the first file that does not parse.
    pub strict: bool,
    pub include: Vec<String>,
    pub exclude: Vec<String>,
}

/// A diagnostic tagged with the release it came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReleaseDiagnostic {
    pub release: String,
    #[serde(flatten)]
    pub diagnostic: Diagnostic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReleaseTiming {
    pub release: String,
    pub ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Timing {
    pub releases: Vec<ReleaseTiming>,
    pub total: u64,
}

/// Everything one analysis produces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunReport {
    pub matrix: MetricsMatrix,
    /// Absent when there is only one release.
    pub trends: Option<TrendReport>,
    pub verdict: Option<HypothesisVerdict>,
    pub commonality: CommonalityReport,
    pub diagnostics: Vec<ReleaseDiagnostic>,
    pub timing: Timing,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    matrix: &'a MetricsMatrix,
    trends: &'a Option<TrendReport>,
    verdict: &'a Option<HypothesisVerdict>,
    commonality: &'a CommonalityReport,
    diagnostics: &'a [ReleaseDiagnostic],
    timing_ms: Option<&'a Timing>,
}

impl RunReport {
    /// Builds the derived reports from an already computed matrix.
    pub fn from_matrix(matrix: MetricsMatrix) -> Self {
        let trends = analyze_evolution(&matrix).ok();
        let verdict = trends.as_ref().map(evaluate_hypothesis);
        let commonality = commonality_report(&matrix);
        RunReport {
            matrix,
            trends,
            verdict,
            commonality,
            diagnostics: Vec::new(),
            timing: Timing {
                releases: Vec::new(),
                total: 0,
            },
        }
    }

    /// JSON report. Wall-clock timing is only included on request, since it
    /// would otherwise make the bytes differ between identical runs.
    pub fn to_json(&self, include_timing: bool) -> Vec<u8> {
        let doc = ReportJson {
            matrix: &self.matrix,
            trends: &self.trends,
            verdict: &self.verdict,
            commonality: &self.commonality,
            diagnostics: &self.diagnostics,
            timing_ms: include_timing.then_some(&self.timing),
        };
        let mut out = serde_json::to_vec_pretty(&doc).expect("report serializes");
        out.push(b'\n');
        out
    }
}

/// Metrics for one release, plus what went wrong while reading it.
pub fn analyze_release(
    release: &Release,
    cfg: &MetricsConfig,
    opts: &AnalyzeOptions,
) -> Result<(MetricsVector, Vec<Diagnostic>)> {
    let scanned = scan_variant(&release.path, &opts.include, &opts.exclude)?;
    let mut diagnostics = scanned.skipped;
    let parsed: Vec<_> = scanned
        .files
        .into_par_iter()
        .map(|file| {
            if opts.strict {
                parse_unit(file).map(|u| (u, None)).map_err(|f| {
                    let d = f.diagnostic;
                    Error::Parse {
                        path: release.path.join(&d.path).display().to_string(),
                        line: d.line,
                        column: d.column,
                        message: d.message,
                    }
                })
            } else {
                Ok(parse_unit_lenient(file))
            }
        })
        .collect();
    let mut units = Vec::with_capacity(parsed.len());
    for p in parsed {
        let (unit, diag) = p?;
        diagnostics.extend(diag);
        units.push(unit);
    }
    let model = link_variant(units, &release.name, release.date);
    diagnostics.extend(model.diagnostics.iter().cloned());
    diagnostics.sort();
    Ok((compute_metrics(&model, cfg), diagnostics))
}

/// Runs every release of the manifest and assembles the report. Output is
/// independent of `opts.jobs`.
pub fn run_analysis(manifest: &Manifest, opts: &AnalyzeOptions) -> Result<RunReport> {
    let started = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .expect("thread pool");
    let results: Vec<_> = pool.install(|| {
        manifest
            .releases
            .par_iter()
            .map(|r| {
                let t = Instant::now();
                analyze_release(r, &manifest.config, opts).map(|out| (out, t.elapsed().as_millis() as u64))
            })
            .collect()
    });
    let mut vectors = Vec::with_capacity(results.len());
    let mut diagnostics = Vec::new();
    let mut releases = Vec::new();
    for (release, result) in manifest.releases.iter().zip(results) {
        let ((vector, diags), ms) = result?;
        vectors.push(vector);
        diagnostics.extend(diags.into_iter().map(|diagnostic| ReleaseDiagnostic {
            release: release.name.clone(),
            diagnostic,
        }));
        releases.push(ReleaseTiming {
            release: release.name.clone(),
            ms,
        });
    }
    let mut report = RunReport::from_matrix(build_matrix(vectors)?);
    report.diagnostics = diagnostics;
    report.timing = Timing {
        releases,
        total: started.elapsed().as_millis() as u64,
    };
    Ok(report)
}

/// Files that failed to parse or were skipped.
pub fn unreadable_files(report: &RunReport) -> impl Iterator<Item = &ReleaseDiagnostic> {
    report
        .diagnostics
        .iter()
        .filter(|d| d.diagnostic.kind != DiagnosticKind::DuplicateType)
}

pub(crate) fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).map_err(|source| Error::Write {
        path: path.to_path_buf(),
        source,
    })
}
