//! Experiment records (JSON lines) and tables (CSV).

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use super::{GrunbaumAudit, SuccessEstimate, SweepRow};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "record", rename_all = "snake_case")]
pub enum ExperimentRecord {
    /// The fully resolved command configuration.
    Config {
        command: String,
        config: serde_json::Value,
    },
    Trial {
        index: u64,
        success: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        violated_vertex: Option<Vec<f64>>,
    },
    Estimate {
        body: String,
        d: usize,
        theta: f64,
        t: u64,
        #[serde(flatten)]
        estimate: SuccessEstimate,
    },
    Audit(GrunbaumAudit),
}

impl From<&SweepRow> for ExperimentRecord {
    fn from(r: &SweepRow) -> Self {
        ExperimentRecord::Estimate {
            body: r.body.clone(),
            d: r.d,
            theta: r.theta,
            t: r.t,
            estimate: SuccessEstimate {
                trials: r.trials,
                successes: r.successes,
                p_hat: r.p_hat,
                wilson_low: r.wilson_low,
                wilson_high: r.wilson_high,
                seed: r.seed,
            },
        }
    }
}

pub fn write_jsonl<W: Write>(mut w: W, records: &[ExperimentRecord]) -> Result<()> {
    for r in records {
        serde_json::to_writer(&mut w, r)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

pub fn read_jsonl<R: BufRead>(r: R) -> Result<Vec<ExperimentRecord>> {
    let mut out = Vec::new();
    for (no, line) in r.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec = serde_json::from_str(&line)
            .map_err(|e| Error::Parse(format!("line {}: {e}", no + 1)))?;
        out.push(rec);
    }
    Ok(out)
}

/// CSV with a leading `# ` comment line (typically the resolved config).
pub fn write_csv<W: Write, T: Serialize>(mut w: W, header_comment: Option<&str>, rows: &[T]) -> Result<()> {
    if let Some(c) = header_comment {
        for line in c.lines() {
            writeln!(w, "# {line}")?;
        }
    }
    let mut csv = csv::Writer::from_writer(w);
    for r in rows {
        csv.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
    }
    csv.flush()?;
    Ok(())
}

/// One row of the summary produced from a record file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub kind: String,
    pub label: String,
    pub value: f64,
    pub low: f64,
    pub high: f64,
    pub flag: String,
}

pub fn summarize(records: &[ExperimentRecord]) -> Vec<SummaryRow> {
    let mut rows = Vec::new();
    let trials: Vec<bool> = records
        .iter()
        .filter_map(|r| match r {
            ExperimentRecord::Trial { success, .. } => Some(*success),
            _ => None,
        })
        .collect();
    if !trials.is_empty() {
        let k = trials.iter().filter(|&&s| s).count() as u64;
        let est = SuccessEstimate::from_counts(k, trials.len() as u64, 0);
        rows.push(SummaryRow {
            kind: "trials".into(),
            label: format!("{k}/{}", trials.len()),
            value: est.p_hat,
            low: est.wilson_low,
            high: est.wilson_high,
            flag: String::new(),
        });
    }
    for r in records {
        match r {
            ExperimentRecord::Estimate { body, d, theta, t, estimate } => rows.push(SummaryRow {
                kind: "estimate".into(),
                label: format!("{body} d={d} theta={theta} t={t}"),
                value: estimate.p_hat,
                low: estimate.wilson_low,
                high: estimate.wilson_high,
                flag: String::new(),
            }),
            ExperimentRecord::Audit(a) => rows.push(SummaryRow {
                kind: "audit".into(),
                label: format!("d={} theta={} n={}", a.dim, a.theta, a.n_directions),
                value: a.min_fraction,
                low: a.floor,
                high: a.min_fraction,
                flag: if a.violations > 0 {
                    format!("{} violations", a.violations)
                } else {
                    "ok".into()
                },
            }),
            _ => {}
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jsonl_round_trip() {
        let recs = vec![
            ExperimentRecord::Config {
                command: "trial".into(),
                config: serde_json::json!({"seed": 3}),
            },
            ExperimentRecord::Trial {
                index: 0,
                success: true,
                violated_vertex: None,
            },
            ExperimentRecord::Estimate {
                body: "cube".into(),
                d: 2,
                theta: 0.5,
                t: 10,
                estimate: SuccessEstimate::from_counts(20, 30, 3),
            },
        ];
        let mut buf = Vec::new();
        write_jsonl(&mut buf, &recs).unwrap();
        let back = read_jsonl(buf.as_slice()).unwrap();
        assert_eq!(back, recs);
        let rows = summarize(&back);
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].label, "1/1");
    }

    #[test]
    fn bad_line_reports_position() {
        let err = read_jsonl("{\"record\":\"trial\",\"index\":0,\"success\":true}\nnot json\n".as_bytes());
        assert!(matches!(err, Err(Error::Parse(m)) if m.starts_with("line 2")));
    }
}
