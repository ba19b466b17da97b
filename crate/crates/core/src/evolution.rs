//! Software-by-metric matrix and per-metric evolution analysis.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::metrics::{Metric, MetricsVector};

/// One row per release, in manifest order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct MetricsMatrix {
    rows: Vec<MetricsVector>,
}

impl MetricsMatrix {
    pub fn rows(&self) -> &[MetricsVector] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn column(&self, m: Metric) -> Vec<u64> {
        self.rows.iter().map(|r| r.get(m)).collect()
    }

    pub fn release_names(&self) -> Vec<&str> {
        self.rows.iter().map(|r| r.release_name.as_str()).collect()
    }
}

/// Keeps the given order; no sorting by date or name.
pub fn build_matrix(vectors: Vec<MetricsVector>) -> Result<MetricsMatrix> {
    if vectors.is_empty() {
        return Err(Error::EmptyManifest);
    }
    Ok(MetricsMatrix { rows: vectors })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrendClass {
    Constant,
    StrictlyIncreasing,
    NonDecreasing,
    StrictlyDecreasing,
    NonIncreasing,
    Fluctuating,
}

impl TrendClass {
    pub fn as_str(self) -> &'static str {
        match self {
            TrendClass::Constant => "constant",
            TrendClass::StrictlyIncreasing => "strictly-increasing",
            TrendClass::NonDecreasing => "non-decreasing",
            TrendClass::StrictlyDecreasing => "strictly-decreasing",
            TrendClass::NonIncreasing => "non-increasing",
            TrendClass::Fluctuating => "fluctuating",
        }
    }

    /// The class of the same series read backwards.
    pub fn reversed(self) -> TrendClass {
        match self {
            TrendClass::StrictlyIncreasing => TrendClass::StrictlyDecreasing,
            TrendClass::StrictlyDecreasing => TrendClass::StrictlyIncreasing,
            TrendClass::NonDecreasing => TrendClass::NonIncreasing,
            TrendClass::NonIncreasing => TrendClass::NonDecreasing,
            c => c,
        }
    }
}

impl fmt::Display for TrendClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn classify_trend(series: &[u64]) -> Result<TrendClass> {
    if series.len() < 2 {
        return Err(Error::InsufficientReleases {
            needed: 2,
            got: series.len(),
        });
    }
    let (mut up, mut down, mut flat) = (false, false, false);
    for w in series.windows(2) {
        match w[1].cmp(&w[0]) {
            std::cmp::Ordering::Greater => up = true,
            std::cmp::Ordering::Less => down = true,
            std::cmp::Ordering::Equal => flat = true,
        }
    }
    Ok(match (up, down, flat) {
        (false, false, _) => TrendClass::Constant,
        (true, false, false) => TrendClass::StrictlyIncreasing,
        (true, false, true) => TrendClass::NonDecreasing,
        (false, true, false) => TrendClass::StrictlyDecreasing,
        (false, true, true) => TrendClass::NonIncreasing,
        (true, true, _) => TrendClass::Fluctuating,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MetricTrend {
    pub metric: Metric,
    pub class: TrendClass,
    pub first: u64,
    pub last: u64,
    /// Consecutive differences, one per adjacent pair of releases.
    pub deltas: Vec<i64>,
    pub net_change: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct TrendReport {
    trends: Vec<MetricTrend>,
}

impl TrendReport {
    /// All metrics, in column order.
    pub fn trends(&self) -> &[MetricTrend] {
        &self.trends
    }

    pub fn get(&self, m: Metric) -> &MetricTrend {
        &self.trends[m.index()]
    }
}

fn diff(a: u64, b: u64) -> i64 {
    b as i64 - a as i64
}

pub fn analyze_evolution(matrix: &MetricsMatrix) -> Result<TrendReport> {
    let trends = Metric::ALL
        .into_iter()
        .map(|metric| {
            let col = matrix.column(metric);
            let class = classify_trend(&col)?;
            let (first, last) = (col[0], col[col.len() - 1]);
            Ok(MetricTrend {
                metric,
                class,
                first,
                last,
                deltas: col.windows(2).map(|w| diff(w[0], w[1])).collect(),
                net_change: diff(first, last),
            })
        })
        .collect::<Result<_>>()?;
    Ok(TrendReport { trends })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisVerdict {
    pub complexity_supported: bool,
    pub growth_supported: bool,
    pub change_detected: bool,
    pub evidence: Vec<String>,
}

impl fmt::Display for HypothesisVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = |b: bool, yes: &'static str, no: &'static str| if b { yes } else { no };
        write!(
            f,
            "complexity: {}; growth: {}; change: {}",
            word(self.complexity_supported, "supported", "not supported"),
            word(self.growth_supported, "supported", "not supported"),
            word(self.change_detected, "detected", "not detected"),
        )
    }
}

fn group_supported(report: &TrendReport, group: &[Metric]) -> bool {
    let nets = group.iter().map(|&m| report.get(m).net_change);
    nets.clone().all(|n| n >= 0) && nets.into_iter().any(|n| n > 0)
}

/// Judges growth and complexity by net change between the first and last release.
pub fn evaluate_hypothesis(report: &TrendReport) -> HypothesisVerdict {
    let evidence = report
        .trends()
        .iter()
        .map(|t| {
            format!(
                "{}: {} -> {} (net {:+}, {})",
                t.metric, t.first, t.last, t.net_change, t.class
            )
        })
        .collect();
    HypothesisVerdict {
        complexity_supported: group_supported(report, &Metric::COMPLEXITY),
        growth_supported: group_supported(report, &Metric::GROWTH),
        change_detected: report.trends().iter().any(|t| t.deltas.iter().any(|&d| d != 0)),
        evidence,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommonalityReport {
    pub common_metrics: Vec<Metric>,
    pub varying_metrics: Vec<Metric>,
}

/// Splits the metrics into those whose column is constant and the rest.
pub fn commonality_report(matrix: &MetricsMatrix) -> CommonalityReport {
    let (common_metrics, varying_metrics) = Metric::ALL.into_iter().partition(|&m| {
        let col = matrix.column(m);
        col.windows(2).all(|w| w[0] == w[1])
    });
    CommonalityReport {
        common_metrics,
        varying_metrics,
    }
}
