use std::io::Write;

use serde::{Deserialize, Serialize};

use super::config::{ExperimentConfig, Format};
use crate::polyineq::PolygamyReport;
use crate::Result;

/// One report tagged with the state it came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub state: String,
    pub sample: usize,
    /// Seed that regenerates the state (0 for named or file states).
    pub seed: u64,
    /// Terms were re-estimated with the escalated budget.
    pub escalated: bool,
    #[serde(flatten)]
    pub report: PolygamyReport,
}

impl Record {
    /// Sort key: state, sample, mode, then beta.
    fn key(&self) -> (&str, usize, u8, f64) {
        (&self.state, self.sample, self.report.mode as u8, self.report.beta)
    }
}

/// A named target comparison made by `reproduce-paper`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub name: String,
    pub value: f64,
    pub target: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// A value printed elsewhere that is shown for comparison only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference: Option<f64>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

impl Checkpoint {
    pub fn within(name: &str, value: f64, target: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            value,
            target,
            tolerance,
            pass: (value - target).abs() <= tolerance,
            reference: None,
            note: String::new(),
        }
    }

    /// Passes when `value ≤ target + tolerance`.
    pub fn at_most(name: &str, value: f64, target: f64, tolerance: f64) -> Self {
        Self { pass: value <= target + tolerance, ..Self::within(name, value, target, tolerance) }
    }

    pub fn with_reference(mut self, reference: f64, note: &str) -> Self {
        self.reference = Some(reference);
        self.note = note.to_string();
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub reports: usize,
    pub holds: usize,
    /// Failed reports that count: not diagnostic, precondition not unmet.
    pub violations: usize,
    pub condition_unmet: usize,
    pub diagnostic: usize,
    pub escalated: usize,
    /// Per-β-point failures of `rhs(unit) ≥ rhs(hamming) ≥ rhs(index)`.
    pub chain_failures: usize,
    pub checkpoints_failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub command: String,
    pub version: String,
    pub seed: u64,
    pub config: ExperimentConfig,
    pub summary: Summary,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checkpoints: Vec<Checkpoint>,
    /// Only field that varies between identical runs.
    pub wall_clock_s: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportSet {
    pub metadata: Metadata,
    pub records: Vec<Record>,
}

impl ReportSet {
    /// Sorts records and fills the summary.
    pub fn new(config: ExperimentConfig, mut records: Vec<Record>, checkpoints: Vec<Checkpoint>) -> Self {
        records.sort_by(|a, b| {
            let (ka, kb) = (a.key(), b.key());
            ka.0.cmp(kb.0).then(ka.1.cmp(&kb.1)).then(ka.2.cmp(&kb.2)).then(ka.3.total_cmp(&kb.3))
        });
        let mut s = Summary { reports: records.len(), ..Summary::default() };
        for r in &records {
            let rep = &r.report;
            s.holds += usize::from(rep.holds);
            s.escalated += usize::from(r.escalated);
            if rep.diagnostic {
                s.diagnostic += 1;
            } else if rep.is_violation() {
                s.violations += 1;
            }
            if !rep.holds && rep.condition_met == Some(false) {
                s.condition_unmet += 1;
            }
        }
        s.chain_failures = chain_failures(&records);
        s.checkpoints_failed = checkpoints.iter().filter(|c| !c.pass).count();
        let command = config.command.map(|c| c.as_str()).unwrap_or_default().to_string();
        Self {
            metadata: Metadata {
                command,
                version: env!("CARGO_PKG_VERSION").to_string(),
                seed: config.roof.seed,
                config,
                summary: s,
                checkpoints,
                wall_clock_s: 0.0,
            },
            records,
        }
    }

    pub fn passed(&self) -> bool {
        let s = &self.metadata.summary;
        s.violations == 0 && s.chain_failures == 0 && s.checkpoints_failed == 0
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<()> {
        match format {
            Format::Jsonl => self.write_jsonl(out),
            Format::Csv => self.write_csv(out),
            Format::Table => self.write_table(out),
        }
    }

    /// Metadata on the first line, one record per following line.
    pub fn write_jsonl(&self, out: &mut dyn Write) -> Result<()> {
        serde_json::to_writer(&mut *out, &serde_json::json!({ "metadata": self.metadata }))?;
        out.write_all(b"\n")?;
        for r in &self.records {
            serde_json::to_writer(&mut *out, r)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn write_csv(&self, out: &mut dyn Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(CSV_COLUMNS)?;
        for r in &self.records {
            let rep = &r.report;
            w.write_record([
                rep.beta.to_string(),
                rep.mode.to_string(),
                rep.lhs.to_string(),
                rep.rhs.to_string(),
                rep.slack.to_string(),
                rep.holds.to_string(),
                rep.condition_met.map(|c| c.to_string()).unwrap_or_default(),
                r.seed.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_table(&self, out: &mut dyn Write) -> Result<()> {
        if !self.metadata.checkpoints.is_empty() {
            writeln!(out, "{:<34} {:>10} {:>10} {:>9} {:>10}  result", "checkpoint", "value", "target", "tol", "reference")?;
            for c in &self.metadata.checkpoints {
                let reference = c.reference.map(|r| format!("{r:.6}")).unwrap_or_else(|| "-".into());
                writeln!(
                    out,
                    "{:<34} {:>10.6} {:>10.6} {:>9.0e} {:>10}  {}{}",
                    c.name,
                    c.value,
                    c.target,
                    c.tolerance,
                    reference,
                    if c.pass { "PASS" } else { "FAIL" },
                    if c.note.is_empty() { String::new() } else { format!("  ({})", c.note) }
                )?;
            }
            writeln!(out)?;
        }
        writeln!(
            out,
            "{:<16} {:>6} {:>8} {:<8} {:>10} {:>10} {:>10} {:<6} {:<5}",
            "state", "sample", "beta", "mode", "lhs", "rhs", "slack", "holds", "cond"
        )?;
        for r in &self.records {
            let rep = &r.report;
            let cond = match rep.condition_met {
                Some(true) => "yes",
                Some(false) => "no",
                None => "-",
            };
            writeln!(
                out,
                "{:<16} {:>6} {:>8.6} {:<8} {:>10.6} {:>10.6} {:>10.6} {:<6} {:<5}",
                r.state, r.sample, rep.beta, rep.mode.as_str(), rep.lhs, rep.rhs, rep.slack, rep.holds, cond
            )?;
        }
        let s = &self.metadata.summary;
        writeln!(
            out,
            "\n{} reports, {} hold, {} violations, {} condition unmet, {} escalated",
            s.reports, s.holds, s.violations, s.condition_unmet, s.escalated
        )?;
        Ok(())
    }
}

pub const CSV_COLUMNS: [&str; 8] = ["beta", "mode", "lhs", "rhs", "slack", "holds", "condition_met", "seed"];

/// Counts (state, sample, β) groups where the three modes are present and
/// `rhs(unit) ≥ rhs(hamming) ≥ rhs(index)` fails.
fn chain_failures(records: &[Record]) -> usize {
    use crate::polyineq::WeightMode;
    use std::collections::BTreeMap;

    let mut groups: BTreeMap<(&str, usize, u64), [Option<f64>; 3]> = BTreeMap::new();
    for r in records {
        let slot = match r.report.mode {
            WeightMode::Unit => 0,
            WeightMode::Hamming => 1,
            WeightMode::Index => 2,
        };
        groups.entry((&r.state, r.sample, r.report.beta.to_bits())).or_default()[slot] = Some(r.report.rhs);
    }
    groups
        .values()
        .filter(|g| match g {
            [Some(u), Some(h), Some(i)] => !(u >= h && h >= i),
            _ => false,
        })
        .count()
}
