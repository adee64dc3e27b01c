use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use skew_app_cli::Report;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_skew-app"))
}

fn write_job(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn z4_is_not_left_app() {
    let dir = tempfile::tempdir().unwrap();
    let job = write_job(
        dir.path(),
        "z4.job",
        "ring.kind = cyclic\nring.n = 4\nmonoid.kind = NatAdd\naction.alpha = identity\nchecks = is_left_APP\n",
    );
    let out = dir.path().join("z4.json");
    let o = bin().arg("run").arg(&job).arg("--out").arg(&out).output().unwrap();
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    let report: Report = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let json: serde_json::Value = serde_json::to_value(&report.witnesses[0].evidence).unwrap();
    assert_eq!(json["element"], 2);
    assert_eq!(json["annihilator"], serde_json::json!([0, 2]));

    let o = bin().arg("--replay").arg(&out).output().unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("confirmed"));
}

#[test]
fn passing_jobs_exit_zero() {
    let dir = tempfile::tempdir().unwrap();
    let f5 = write_job(
        dir.path(),
        "f5.job",
        "ring.kind = cyclic\nring.n = 5\nmonoid.kind = NatAdd\nchecks = is_left_APP, condition2\n",
    );
    assert_eq!(bin().arg("run").arg(&f5).status().unwrap().code(), Some(0));
    let z6 = write_job(
        dir.path(),
        "z6.job",
        "ring.kind = cyclic\nring.n = 6\npreset = corollary7\nchecks = corollary7\n",
    );
    assert_eq!(bin().arg("run").arg(&z6).status().unwrap().code(), Some(0));
}

#[test]
fn report_keys_in_fixed_order() {
    let dir = tempfile::tempdir().unwrap();
    let job = write_job(
        dir.path(),
        "j.job",
        "ring.kind = gallery\nring.name = F2xF2\nmonoid.kind = NatAdd\naction.alpha = swap\nchecks = lemma2\n",
    );
    let out = dir.path().join("r.json");
    bin().arg("run").arg(&job).arg("--out").arg(&out).status().unwrap();
    let text = std::fs::read_to_string(&out).unwrap();
    let positions: Vec<usize> = ["job", "verdicts", "witnesses", "timings", "seed", "version"]
        .iter()
        .map(|k| text.find(&format!("\n  \"{k}\":")).unwrap())
        .collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn spec_errors_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let missing = write_job(
        dir.path(),
        "m.job",
        "ring.kind = cyclic\nring.n = 4\nchecks = is_left_APP\n",
    );
    let o = bin().arg("validate").arg(&missing).output().unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("monoid.kind required"));

    let product = write_job(
        dir.path(),
        "p.job",
        "ring.kind = cyclic\nring.n = 2\nmonoid.kind = NatPair\nmonoid.order = product\nchecks = condition2\n",
    );
    let o = bin().arg("run").arg(&product).output().unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("totally"));

    // The exhaustive orbit condition on 32 elements is over budget.
    let big = write_job(
        dir.path(),
        "b.job",
        "ring.kind = cyclic\nring.n = 32\nmonoid.kind = NatAdd\nchecks = condition2\n",
    );
    let o = bin()
        .arg("run")
        .arg(&big)
        .args(["--mode", "exhaustive"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("budget"));
    let o = bin().arg("run").arg(&big).args(["--mode", "sampled"]).output().unwrap();
    assert_eq!(o.status.code(), Some(1));

    assert_eq!(
        bin()
            .arg("run")
            .arg(dir.path().join("nope.job"))
            .status()
            .unwrap()
            .code(),
        Some(3)
    );
}

#[test]
fn validate_and_gallery() {
    let dir = tempfile::tempdir().unwrap();
    let ok = write_job(
        dir.path(),
        "ok.job",
        "ring.kind = matrix\nring.base.kind = cyclic\nring.base.n = 2\nmonoid.kind = IntPair\nmonoid.order = lex\n\
         action.alpha = inner:11\naction.beta = identity\nchecks = condition2, theorem3\n",
    );
    let o = bin().arg("validate").arg(&ok).output().unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));

    let o = bin().arg("list-gallery").output().unwrap();
    let listing = stdout(&o);
    for name in ["Z4 ", "T2F2", "M2F2", "F2xF2", "F2xF3", "Z64"] {
        assert!(listing.contains(name), "{name} missing");
    }
}

#[test]
fn explicit_series_checks() {
    let dir = tempfile::tempdir().unwrap();
    let job = write_job(
        dir.path(),
        "s.job",
        "ring.kind = cyclic\nring.n = 6\nmonoid.kind = NatAdd\nseries.g = 0:3; 1:3\nseries.f = 0:2; 1:2\n\
         series.w = 1\nchecks = lemma1, theorem3, cascade\n",
    );
    let out = dir.path().join("s.json");
    let o = bin().arg("run").arg(&job).arg("--out").arg(&out).output().unwrap();
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("\"kind\": \"cascade\""));
    assert!(text.contains("\"e\": 3"));
    let o = bin().arg("replay").arg(&out).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn tampered_report_is_refuted() {
    let dir = tempfile::tempdir().unwrap();
    let job = write_job(
        dir.path(),
        "t.job",
        "ring.kind = cyclic\nring.n = 4\nmonoid.kind = NatAdd\nchecks = is_reduced\n",
    );
    let out = dir.path().join("t.json");
    bin().arg("run").arg(&job).arg("--out").arg(&out).status().unwrap();
    let text = std::fs::read_to_string(&out)
        .unwrap()
        .replace("\"element\": 2", "\"element\": 1");
    std::fs::write(&out, text).unwrap();
    let o = bin().arg("--replay").arg(&out).output().unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("REFUTED"));
}

#[test]
fn timings_are_opt_in() {
    let dir = tempfile::tempdir().unwrap();
    let job = write_job(
        dir.path(),
        "t.job",
        "ring.kind = cyclic\nring.n = 6\nmonoid.kind = NatAdd\nchecks = is_left_APP\n",
    );
    let out = dir.path().join("t.json");
    bin().arg("run").arg(&job).arg("--out").arg(&out).status().unwrap();
    let plain: Report = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(plain.timings.is_empty());
    bin()
        .arg("run")
        .arg(&job)
        .arg("--timings")
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    let timed: Report = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(timed.timings.len(), 1);
}

#[test]
fn bad_arguments_are_spec_errors() {
    assert_eq!(
        bin().args(["run", "x.job", "--mode", "auto"]).status().unwrap().code(),
        Some(3)
    );
    assert_eq!(bin().arg("frobnicate").status().unwrap().code(), Some(3));
    assert_eq!(bin().arg("--help").status().unwrap().code(), Some(0));
}
