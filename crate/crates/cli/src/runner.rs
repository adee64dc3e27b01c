//! Executes the checks of a job and assembles the report.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use skew_app::harness::presets::corollary_presets;
use skew_app::harness::theorem::{common_units_up_to, pointwise_units, series_subject};
use skew_app::harness::{
    check_lemma1, check_lemma2_necessity, condition2_holds, construct_theorem3_witness, extract_cascade_witnesses,
    is_left_app, is_left_pq_baer, is_quasi_baer, is_reduced, is_right_pp, lemma1_harness, theorem3_coherence,
    witness_path_agreement, Condition2Mode, Evidence, PropertyReport, Verdict, WitnessPath,
};
use skew_app::ideal::{is_right_s_unital, left_ideals};
use skew_app::{Error, Limits};

use crate::job::{Job, Mode};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass = 0,
    Fail = 1,
    Alarm = 2,
    SpecError = 3,
}

impl Status {
    pub fn code(self) -> u8 {
        self as u8
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictEntry {
    pub check: String,
    pub property: String,
    pub subject: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessEntry {
    pub check: String,
    pub property: String,
    pub evidence: Evidence,
}

/// The report file. Field order is the serialisation order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub job: BTreeMap<String, String>,
    pub verdicts: Vec<VerdictEntry>,
    pub witnesses: Vec<WitnessEntry>,
    /// Milliseconds per verdict; empty unless requested.
    pub timings: BTreeMap<String, f64>,
    pub seed: u64,
    pub version: String,
}

impl Report {
    pub fn status(&self) -> Status {
        if self.verdicts.iter().any(|v| v.verdict == Verdict::Alarm) {
            Status::Alarm
        } else if self.verdicts.iter().any(|v| v.verdict == Verdict::Fails) {
            Status::Fail
        } else {
            Status::Pass
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        for v in &self.verdicts {
            let tag = match v.verdict {
                Verdict::Holds => "holds",
                Verdict::Fails => "FAILS",
                Verdict::Vacuous => "vacuous",
                Verdict::Alarm => "ALARM",
            };
            out.push_str(&format!("{tag:<8} {:<14} {:<26} {}\n", v.check, v.property, v.subject));
        }
        out
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub limits: Limits,
    /// Record per-check timings (makes reports differ between runs).
    pub timings: bool,
}

fn condition2_mode(job: &Job, limits: &Limits) -> Condition2Mode {
    match job.mode {
        Some(Mode::Exhaustive) => Condition2Mode::Exhaustive,
        Some(Mode::Sampled) => Condition2Mode::Sampled,
        None if job.ring.size() <= limits.condition2_exhaustive_cap => Condition2Mode::Exhaustive,
        None => Condition2Mode::Sampled,
    }
}

fn outcome_report(
    subject: String,
    property: &str,
    result: skew_app::Result<Evidence>,
) -> skew_app::Result<PropertyReport> {
    let (verdict, evidence) = match result {
        Ok(evidence) => (Verdict::Holds, evidence),
        Err(Error::HypothesisViolated(reason)) => (Verdict::Vacuous, Evidence::PreconditionFailed { reason }),
        Err(Error::InvariantViolation(message)) => (Verdict::Alarm, Evidence::Alarm { message }),
        Err(other) => return Err(other),
    };
    Ok(PropertyReport::new(subject, property, verdict, evidence))
}

fn run_check(job: &Job, check: &str, limits: &Limits) -> skew_app::Result<Vec<PropertyReport>> {
    let ring = &job.ring;
    let series = &job.series;
    let pair = job.g.as_ref().zip(job.f.as_ref());
    let one = |r: PropertyReport| Ok(vec![r]);
    match check {
        "is_left_APP" => one(is_left_app(ring, limits)),
        "is_left_pq_baer" => one(is_left_pq_baer(ring, limits)),
        "is_quasi_baer" => one(is_quasi_baer(ring, limits)?),
        "is_right_PP" => one(is_right_pp(ring, limits)),
        "is_reduced" => one(is_reduced(ring)),
        "condition2" => one(condition2_holds(
            series.action(),
            condition2_mode(job, limits),
            limits,
            job.seed,
        )?),
        "lemma1" => match pair {
            Some((g, f)) => one(check_lemma1(series, g, f)?),
            None => one(lemma1_harness(series, job.trials, job.seed, limits)?),
        },
        "lemma2" => one(check_lemma2_necessity(series)?),
        "theorem3" => match pair {
            Some((g, f)) => {
                let w = construct_theorem3_witness(series, g, f, WitnessPath::FullSet);
                one(outcome_report(
                    series_subject(series),
                    "theorem3",
                    w.map(|witness| Evidence::Theorem3 { witness }),
                )?)
            }
            None => one(theorem3_coherence(series, job.trials, job.seed, limits)?),
        },
        "witness_paths" => one(witness_path_agreement(series, job.trials, job.seed, limits)?),
        "cascade" => {
            let (g, f) = pair.expect("validated");
            let w = job.w.expect("validated");
            let steps = extract_cascade_witnesses(series, g, f, w);
            one(outcome_report(
                series_subject(series),
                "cascade",
                steps.map(|steps| Evidence::Cascade { w, steps }),
            )?)
        }
        "tominaga" => {
            let ideals = left_ideals(ring, limits.left_ideal_enumeration_cap)?;
            let agree = ideals
                .iter()
                .filter(|i| pointwise_units(i) == common_units_up_to(i, 3))
                .count() as u64;
            let unital = ideals.iter().filter(|i| is_right_s_unital(i).holds()).count() as u64;
            let n = ideals.len() as u64;
            let verdict = if agree == n { Verdict::Holds } else { Verdict::Alarm };
            one(PropertyReport::new(
                ring.name(),
                "tominaga",
                verdict,
                Evidence::Trials {
                    trials: n,
                    passed: agree,
                    nontrivial: unital,
                },
            ))
        }
        c if c.starts_with("corollary") => {
            let k: u8 = c["corollary".len()..].parse().expect("validated");
            corollary_presets()
                .into_iter()
                .filter(|p| p.corollary == k)
                .map(|p| p.run(ring, &job.alpha, &job.beta, limits, job.seed))
                .collect()
        }
        other => unreachable!("unvalidated check {other}"),
    }
}

/// Runs every check of `job` in order. Errors from the library (budgets,
/// invalid actions for a preset) abort the run.
pub fn run_job(job: &Job, opts: &RunOptions) -> skew_app::Result<Report> {
    let mut limits = opts.limits.clone();
    limits.sample_window = job.window.or(limits.sample_window);
    let mut verdicts = Vec::new();
    let mut witnesses = Vec::new();
    let mut timings = BTreeMap::new();
    for check in &job.checks {
        let start = Instant::now();
        let reports = run_check(job, check, &limits)?;
        let ms = start.elapsed().as_secs_f64() * 1e3 / reports.len().max(1) as f64;
        for r in reports {
            if opts.timings {
                timings.insert(format!("{:02}:{}", verdicts.len(), r.property), ms);
            }
            verdicts.push(VerdictEntry {
                check: check.clone(),
                property: r.property.clone(),
                subject: r.subject.clone(),
                verdict: r.verdict,
            });
            witnesses.push(WitnessEntry {
                check: check.clone(),
                property: r.property,
                evidence: r.evidence,
            });
        }
    }
    Ok(Report {
        job: job.settings.clone(),
        verdicts,
        witnesses,
        timings,
        seed: job.seed,
        version: VERSION.to_string(),
    })
}
