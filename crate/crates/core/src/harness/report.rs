//! JSON persistence for scan reports.

use std::fs;
use std::path::Path;

use crate::error::ReportError;
use crate::harness::record::ScanReport;

/// Pretty-printed JSON with a trailing newline. Same report, same bytes.
pub fn to_json(report: &ScanReport) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("report serializes");
    text.push('\n');
    text
}

pub fn write_report(report: &ScanReport, path: &Path) -> Result<(), ReportError> {
    fs::write(path, to_json(report)).map_err(|source| ReportError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads a report and checks that its summary agrees with its records.
pub fn read_report(path: &Path) -> Result<ScanReport, ReportError> {
    let text = fs::read_to_string(path).map_err(|source| ReportError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let report: ScanReport = serde_json::from_str(&text).map_err(|source| ReportError::Format {
        path: path.to_path_buf(),
        source,
    })?;
    let s = &report.summary;
    let inconsistent = |message: String| ReportError::Inconsistent {
        path: path.to_path_buf(),
        message,
    };
    if report.records.len() != s.classes {
        return Err(inconsistent(format!(
            "{} records but summary counts {} classes",
            report.records.len(),
            s.classes
        )));
    }
    if s.confirmed + s.counterexamples + s.undecided != s.classes {
        return Err(inconsistent(format!(
            "confirmed {} + counterexamples {} + undecided {} != classes {}",
            s.confirmed, s.counterexamples, s.undecided, s.classes
        )));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{run_scan, CheckKind, ScanParameters};

    fn small() -> ScanReport {
        run_scan(
            &ScanParameters {
                max_vertices: 3,
                max_mult: 2,
                max_edges: 4,
                check: CheckKind::All,
                samples_per_graph: 3,
                seed: 7,
                budget_secs: 10,
            },
            2,
        )
        .unwrap()
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.json");
        let report = small();
        write_report(&report, &path).unwrap();
        assert_eq!(read_report(&path).unwrap(), report);
    }

    #[test]
    fn writes_identical_bytes() {
        let dir = tempfile::tempdir().unwrap();
        let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
        write_report(&small(), &a).unwrap();
        write_report(&small(), &b).unwrap();
        assert_eq!(fs::read(a).unwrap(), fs::read(b).unwrap());
    }

    #[test]
    fn corrupted_files_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.json");
        fs::write(&path, "{\"parameters\": ").unwrap();
        assert!(matches!(read_report(&path), Err(ReportError::Format { .. })));

        let mut report = small();
        report.summary.classes += 1;
        write_report(&report, &path).unwrap();
        assert!(matches!(read_report(&path), Err(ReportError::Inconsistent { .. })));

        let missing = dir.path().join("missing.json");
        assert!(matches!(read_report(&missing), Err(ReportError::Io { .. })));
    }
}
