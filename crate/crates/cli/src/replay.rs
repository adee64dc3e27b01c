//! `--replay`: re-verifies the evidence stored in a report.

use skew_app::harness::presets::preset;
use skew_app::harness::replay::{confirm, Replay};
use skew_app::Limits;

use crate::job::{Job, Overrides};
use crate::runner::{Report, Status};

#[derive(Clone, Debug)]
pub struct ReplayLine {
    pub check: String,
    pub property: String,
    pub outcome: Replay,
}

impl ReplayLine {
    pub fn render(&self) -> String {
        let what = match &self.outcome {
            Replay::Confirmed => "confirmed".to_string(),
            Replay::Refuted(why) => format!("REFUTED: {why}"),
            Replay::NotReplayable => "nothing to replay".to_string(),
        };
        format!("{:<14} {:<26} {what}", self.check, self.property)
    }
}

/// Rebuilds the job recorded in `report` and checks every witness entry.
pub fn replay_report(report: &Report, limits: &Limits) -> Result<Vec<ReplayLine>, anyhow::Error> {
    let job = Job::from_map(&report.job, &Overrides::default(), limits)?;
    let mut lines = Vec::new();
    for entry in &report.witnesses {
        let series = if entry.property.starts_with("corollary") {
            preset(&entry.property)?.instantiate(&job.ring, &job.alpha, &job.beta)?
        } else {
            job.series.clone()
        };
        lines.push(ReplayLine {
            check: entry.check.clone(),
            property: entry.property.clone(),
            outcome: confirm(&series, &entry.property, &entry.evidence)?,
        });
    }
    Ok(lines)
}

pub fn replay_status(lines: &[ReplayLine]) -> Status {
    if lines.iter().any(|l| matches!(l.outcome, Replay::Refuted(_))) {
        Status::Fail
    } else {
        Status::Pass
    }
}
