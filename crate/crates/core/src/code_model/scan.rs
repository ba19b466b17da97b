use std::path::Path;

use globset::{Glob, GlobSet, GlobSetBuilder};
use walkdir::WalkDir;

use super::{Diagnostic, DiagnosticKind, SourceFile};
use crate::error::{Error, Result};

/// Default include pattern: every Java source file.
pub const DEFAULT_INCLUDE: &str = "**/*.java";

/// Files read from a release tree, plus the ones that had to be skipped.
#[derive(Debug, Clone, Default)]
pub struct ScanOutcome {
    /// Sorted by relative path.
    pub files: Vec<SourceFile>,
    pub skipped: Vec<Diagnostic>,
}

fn build_set(patterns: &[String]) -> Result<GlobSet> {
    let mut b = GlobSetBuilder::new();
    for p in patterns {
        let glob = Glob::new(p).map_err(|e| Error::Glob {
            pattern: p.clone(),
            reason: e.to_string(),
        })?;
        b.add(glob);
    }
    b.build().map_err(|e| Error::Glob {
        pattern: patterns.join(","),
        reason: e.to_string(),
    })
}

/// Collects the source files of one release.
///
/// An empty include list means [`DEFAULT_INCLUDE`]. Patterns match the path
/// relative to `root`, `/`-separated. Files that are not valid UTF-8 are
/// reported in [`ScanOutcome::skipped`].
pub fn scan_variant(root: &Path, include: &[String], exclude: &[String]) -> Result<ScanOutcome> {
    let meta = std::fs::metadata(root).map_err(|e| Error::InputRoot {
        path: root.to_path_buf(),
        reason: e.to_string(),
    })?;
    if !meta.is_dir() {
        return Err(Error::InputRoot {
            path: root.to_path_buf(),
            reason: "not a directory".into(),
        });
    }
    let include = if include.is_empty() {
        build_set(&[DEFAULT_INCLUDE.to_string()])?
    } else {
        build_set(include)?
    };
    let exclude = build_set(exclude)?;

    let mut out = ScanOutcome::default();
    for entry in WalkDir::new(root).follow_links(true).sort_by_file_name() {
        let entry = match entry {
            Ok(e) => e,
            Err(e) => {
                let path = e
                    .path()
                    .and_then(|p| p.strip_prefix(root).ok())
                    .map(|p| p.to_string_lossy().replace('\\', "/"))
                    .unwrap_or_default();
                if path.is_empty() && e.depth() == 0 {
                    return Err(Error::InputRoot {
                        path: root.to_path_buf(),
                        reason: e.to_string(),
                    });
                }
                out.skipped.push(skipped(path, e.to_string()));
                continue;
            }
        };
        if !entry.file_type().is_file() {
            continue;
        }
        let rel = entry
            .path()
            .strip_prefix(root)
            .expect("walk stays under root")
            .to_string_lossy()
            .replace('\\', "/");
        if !include.is_match(&rel) || exclude.is_match(&rel) {
            continue;
        }
        match std::fs::read(entry.path()) {
            Ok(bytes) => match String::from_utf8(bytes) {
                Ok(text) => out.files.push(SourceFile::new(rel, text)),
                Err(e) => out
                    .skipped
                    .push(skipped(rel, format!("not valid UTF-8: {}", e.utf8_error()))),
            },
            Err(e) => out.skipped.push(skipped(rel, e.to_string())),
        }
    }
    out.files.sort_by(|a, b| a.path.cmp(&b.path));
    Ok(out)
}

fn skipped(path: String, message: String) -> Diagnostic {
    Diagnostic {
        path,
        line: 0,
        column: 0,
        kind: DiagnosticKind::SkippedFile,
        message: format!("skipped: {message}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::fs;

    fn paths(o: &ScanOutcome) -> Vec<&str> {
        o.files.iter().map(|f| f.path.as_str()).collect()
    }

    #[test]
    fn empty_directory() {
        let dir = tempfile::tempdir().unwrap();
        let out = scan_variant(dir.path(), &[], &[]).unwrap();
        assert!(out.files.is_empty());
        assert!(out.skipped.is_empty());
    }

    #[test]
    fn sorted_and_filtered() {
        let dir = tempfile::tempdir().unwrap();
        fs::create_dir(dir.path().join("a")).unwrap();
        fs::write(dir.path().join("a/B.java"), "class B {}").unwrap();
        fs::write(dir.path().join("a/A.java"), "package a; class A {}").unwrap();
        fs::write(dir.path().join("a/notes.txt"), "not java").unwrap();
        let out = scan_variant(dir.path(), &[], &[]).unwrap();
        assert_eq!(paths(&out), ["a/A.java", "a/B.java"]);
        assert_eq!(out.files[0].package_name, "a");
        assert_eq!(out.files[0].text, "package a; class A {}");

        let out = scan_variant(dir.path(), &[], &["a/B*".to_string()]).unwrap();
        assert_eq!(paths(&out), ["a/A.java"]);
    }

    #[test]
    fn undecodable_files_are_skipped() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("Bad.java"), [0xff, 0xfe, b'c']).unwrap();
        fs::write(dir.path().join("Good.java"), "class Good {}").unwrap();
        let out = scan_variant(dir.path(), &[], &[]).unwrap();
        assert_eq!(paths(&out), ["Good.java"]);
        assert_eq!(out.skipped.len(), 1);
        assert_eq!(out.skipped[0].path, "Bad.java");
    }

    #[test]
    fn missing_root_is_fatal() {
        let dir = tempfile::tempdir().unwrap();
        let err = scan_variant(&dir.path().join("nope"), &[], &[]).unwrap_err();
        assert!(matches!(err, Error::InputRoot { .. }));
    }

    #[test]
    fn bad_glob_is_reported() {
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(
            scan_variant(dir.path(), &["a[".to_string()], &[]),
            Err(Error::Glob { .. })
        ));
    }
}
