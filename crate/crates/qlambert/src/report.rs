//! Machine-readable and human-readable renderings of verification reports.
//!
//! The JSON layout is one object per record,
//! `{identity, status, degree, trials, seed, failures: [{trial, bindings, k,
//! lhs, rhs}], millis}`, and the CSV summary carries
//! `id,status,degree,millis`. Given identical (catalog, degree, trials,
//! seed) everything except the `millis` timing fields is byte-identical
//! between runs.

use crate::verify::{RecordReport, Status};

pub fn to_json(reports: &[RecordReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialize")
}

pub fn to_csv(reports: &[RecordReport]) -> String {
    let mut out = String::from("id,status,degree,millis\n");
    for r in reports {
        let status = match r.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
        };
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.identity, status, r.degree, r.millis
        ));
    }
    out
}

pub fn to_text(reports: &[RecordReport]) -> String {
    let mut out = String::new();
    for r in reports {
        match r.status {
            Status::Pass => {
                out.push_str(&format!(
                    "PASS {} (degree {}, {} trials, {} ms)\n",
                    r.identity, r.degree, r.trials, r.millis
                ));
            }
            Status::Fail => {
                out.push_str(&format!(
                    "FAIL {} (degree {}, {} trials, {} ms)\n",
                    r.identity, r.degree, r.trials, r.millis
                ));
                for f in &r.failures {
                    let bindings = f
                        .bindings
                        .iter()
                        .map(|(k, v)| format!("{k}={v}"))
                        .collect::<Vec<_>>()
                        .join(", ");
                    out.push_str(&format!(
                        "     trial {}: first difference at q^{}: lhs = {}, rhs = {}",
                        f.trial, f.k, f.lhs, f.rhs
                    ));
                    if !bindings.is_empty() {
                        out.push_str(&format!("  [{bindings}]"));
                    }
                    out.push('\n');
                }
            }
        }
    }
    out
}

/// JSON with the volatile timing fields removed; two runs with identical
/// (catalog, degree, trials, seed) produce byte-identical output.
pub fn to_json_stable(reports: &[RecordReport]) -> String {
    let mut clones: Vec<RecordReport> = reports.to_vec();
    for r in &mut clones {
        r.millis = 0;
    }
    serde_json::to_string_pretty(&clones).expect("reports serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::Failure;
    use std::collections::BTreeMap;

    fn fake_report(millis: u64) -> RecordReport {
        RecordReport {
            identity: "demo".into(),
            status: Status::Fail,
            degree: 8,
            trials: 5,
            seed: 0,
            failures: vec![Failure {
                trial: 2,
                bindings: BTreeMap::from([("x".to_string(), "1/2".to_string())]),
                k: 5,
                lhs: "2".into(),
                rhs: "3".into(),
            }],
            millis,
        }
    }

    #[test]
    fn json_schema_fields() {
        let json = to_json(&[fake_report(7)]);
        for field in [
            "\"identity\"",
            "\"status\"",
            "\"degree\"",
            "\"trials\"",
            "\"seed\"",
            "\"failures\"",
            "\"trial\"",
            "\"bindings\"",
            "\"k\"",
            "\"lhs\"",
            "\"rhs\"",
            "\"millis\"",
        ] {
            assert!(json.contains(field), "missing {field} in {json}");
        }
    }

    #[test]
    fn stable_json_masks_timing() {
        assert_eq!(
            to_json_stable(&[fake_report(7)]),
            to_json_stable(&[fake_report(99)])
        );
    }

    #[test]
    fn csv_layout() {
        let csv = to_csv(&[fake_report(7)]);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("id,status,degree,millis"));
        assert_eq!(lines.next(), Some("demo,fail,8,7"));
    }
}
