use std::collections::HashSet;
use std::path::{Path, PathBuf};

use chrono::NaiveDate;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::metrics::MetricsConfig;

/// One release to analyze.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Release {
    pub name: String,
    pub date: NaiveDate,
    /// Resolved against the manifest's directory.
    pub path: PathBuf,
}

/// Ordered release list plus counting configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Manifest {
    pub releases: Vec<Release>,
    pub config: MetricsConfig,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawManifest {
    releases: Vec<serde_json::Value>,
    #[serde(default)]
    config: Option<MetricsConfig>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRelease {
    name: String,
    date: String,
    path: String,
}

pub fn load_manifest(path: &Path) -> Result<Manifest> {
    let fail = |message: String| Error::Manifest {
        path: path.to_path_buf(),
        message,
    };
    let text = std::fs::read_to_string(path).map_err(|e| fail(e.to_string()))?;
    let raw: RawManifest = serde_json::from_str(&text).map_err(|e| fail(e.to_string()))?;
    if raw.releases.is_empty() {
        return Err(fail("`releases` is empty; at least one release is required".into()));
    }
    let base = path.parent().unwrap_or(Path::new(""));
    let mut seen = HashSet::new();
    let mut releases = Vec::with_capacity(raw.releases.len());
    for (i, value) in raw.releases.into_iter().enumerate() {
        let entry_err = |message: String| Error::ManifestEntry {
            path: path.to_path_buf(),
            index: i + 1,
            message,
        };
        let r: RawRelease = serde_json::from_value(value).map_err(|e| entry_err(e.to_string()))?;
        if r.name.trim().is_empty() {
            return Err(entry_err("empty release name".into()));
        }
        if !seen.insert(r.name.clone()) {
            return Err(entry_err(format!("duplicate release name `{}`", r.name)));
        }
        let date = NaiveDate::parse_from_str(&r.date, "%Y-%m-%d")
            .map_err(|e| entry_err(format!("date `{}` is not YYYY-MM-DD: {e}", r.date)))?;
        let dir = base.join(&r.path);
        if !dir.is_dir() {
            return Err(entry_err(format!("release path {} is not a directory", dir.display())));
        }
        releases.push(Release {
            name: r.name,
            date,
            path: dir,
        });
    }
    Ok(Manifest {
        releases,
        config: raw.config.unwrap_or_default(),
    })
}
