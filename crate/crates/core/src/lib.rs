//! Release-level size and complexity metrics for Java product lines.

pub mod cli;
pub mod code_model;
pub mod error;
pub mod evolution;
pub mod metrics;
pub mod report;

pub use error::{Error, Result};
pub use evolution::{
    analyze_evolution, build_matrix, classify_trend, commonality_report, evaluate_hypothesis, CommonalityReport,
    HypothesisVerdict, MetricsMatrix, TrendClass, TrendReport,
};
pub use metrics::{compute_metrics, Metric, MetricsConfig, MetricsVector};
