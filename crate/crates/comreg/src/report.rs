//! Witness reports as Markdown, CSV or JSON.

use comreg_core::witnesses::{Verdict, WitnessReport};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Row {
    pub case: String,
    pub operation: String,
    pub parameters: String,
    pub claim: String,
    pub claimed: String,
    pub measured: String,
    pub verdict: String,
    pub result_sc: usize,
    pub index_vector: Vec<usize>,
    pub period_vector: Vec<usize>,
}

impl From<&WitnessReport> for Row {
    fn from(r: &WitnessReport) -> Self {
        Row {
            case: r.case.clone(),
            operation: r.operation.to_string(),
            parameters: r.parameters.clone(),
            claim: r.claim.clone(),
            claimed: r.claimed.clone(),
            measured: r.measured.clone(),
            verdict: r.verdict.to_string(),
            result_sc: r.result_sc,
            index_vector: r.result_vectors.index_vector.clone(),
            period_vector: r.result_vectors.period_vector.clone(),
        }
    }
}

fn cell(s: &str) -> String {
    s.replace('|', "\\|")
}

pub fn markdown(reports: &[WitnessReport]) -> String {
    let mut out = String::from(
        "| case | operation | parameters | claim | claimed | measured | verdict |\n\
         |---|---|---|---|---|---|---|\n",
    );
    for r in reports {
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} | {} |\n",
            cell(&r.case),
            r.operation,
            cell(&r.parameters),
            cell(&r.claim),
            cell(&r.claimed),
            cell(&r.measured),
            r.verdict
        ));
    }
    out.push('\n');
    out.push_str(&summary(reports));
    out.push('\n');
    out
}

/// One line with the count of each verdict.
pub fn summary(reports: &[WitnessReport]) -> String {
    let count = |v: Verdict| reports.iter().filter(|r| r.verdict == v).count();
    format!(
        "{} claims: {} matches, {} within_bound, {} discrepancy_noted, {} violates",
        reports.len(),
        count(Verdict::Matches),
        count(Verdict::WithinBound),
        count(Verdict::DiscrepancyNoted),
        count(Verdict::Violates)
    )
}

pub fn csv(reports: &[WitnessReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "case",
        "operation",
        "parameters",
        "claim",
        "claimed",
        "measured",
        "verdict",
    ])
    .expect("in-memory write");
    for r in reports {
        w.write_record([
            r.case.as_str(),
            r.operation,
            &r.parameters,
            &r.claim,
            &r.claimed,
            &r.measured,
            r.verdict.as_str(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

pub fn json(reports: &[WitnessReport]) -> String {
    let rows: Vec<Row> = reports.iter().map(Row::from).collect();
    serde_json::to_string_pretty(&rows).expect("plain data") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;
    use comreg_core::witnesses::{aperiodic_downward, run_report};

    fn sample() -> Vec<WitnessReport> {
        run_report(&[aperiodic_downward(3).unwrap()]).unwrap()
    }

    #[test]
    fn markdown_has_one_row_per_claim() {
        let r = sample();
        let text = markdown(&r);
        assert_eq!(
            text.lines()
                .filter(|l| l.starts_with("| aperiodic"))
                .count(),
            r.len()
        );
        assert!(text.contains("3 claims: 2 matches, 1 within_bound, 0 discrepancy_noted, 0 violates"));
        assert!(markdown(&[]).contains("0 claims"));
    }

    #[test]
    fn csv_quotes_commas() {
        let text = csv(&sample());
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
        assert_eq!(rows.len(), 3);
        assert_eq!(&rows[1][5], "5");
    }

    #[test]
    fn json_rows() {
        let v: serde_json::Value = serde_json::from_str(&json(&sample())).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 3);
        assert_eq!(v[1]["result_sc"], 5);
    }
}
