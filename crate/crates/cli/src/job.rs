//! Flat `key.path = value` job files.
//!
//! ```text
//! # Z4 is not left APP
//! ring.kind = cyclic
//! ring.n = 4
//! monoid.kind = NatAdd
//! action.alpha = identity
//! checks = is_left_APP, condition2
//! seed = 7
//! ```
//!
//! Ring elements are integer indices. Monoid elements are `n` or `m,n`.
//! Series are written `exponent:coefficient` separated by `;`, for example
//! `series.g = 0:3; 1:3` or `series.f = 1,0:2`.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use skew_app::harness::gallery::{gallery_ring, resolve_action};
use skew_app::harness::presets::{preset, CorollaryPreset};
use skew_app::{Elem, FiniteRing, Limits, MonoidElem, OmegaAction, OrderedMonoid, RingAut, SeriesRing, SkewSeries};

/// Every check a job may request.
pub const CHECKS: [&str; 16] = [
    "is_left_APP",
    "is_left_pq_baer",
    "is_quasi_baer",
    "is_right_PP",
    "is_reduced",
    "condition2",
    "lemma1",
    "lemma2",
    "theorem3",
    "witness_paths",
    "cascade",
    "tominaga",
    "corollary4",
    "corollary5",
    "corollary6",
    "corollary7",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Sampled,
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Mode, String> {
        match s {
            "exhaustive" => Ok(Mode::Exhaustive),
            "sampled" => Ok(Mode::Sampled),
            other => Err(format!("expected 'exhaustive' or 'sampled', got '{other}'")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exhaustive => "exhaustive",
            Mode::Sampled => "sampled",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub path: String,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

#[derive(Debug, thiserror::Error)]
#[error("invalid job spec:\n{}", .0.iter().map(|d| format!("  {d}")).collect::<Vec<_>>().join("\n"))]
pub struct SpecError(pub Vec<Diagnostic>);

/// Command-line settings that take precedence over the file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub mode: Option<Mode>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub output: Option<PathBuf>,
}

/// A parsed and resolved job.
#[derive(Clone, Debug)]
pub struct Job {
    pub name: String,
    pub ring: FiniteRing,
    pub monoid: OrderedMonoid,
    pub alpha: RingAut,
    pub beta: RingAut,
    pub preset: Option<CorollaryPreset>,
    pub series: SeriesRing,
    pub g: Option<SkewSeries>,
    pub f: Option<SkewSeries>,
    pub w: Option<MonoidElem>,
    pub checks: Vec<String>,
    pub mode: Option<Mode>,
    pub trials: usize,
    pub seed: u64,
    pub output: Option<PathBuf>,
    /// Support bound for random series (`monoid.window`).
    pub window: Option<i64>,
    /// Effective settings as recorded in the report, without the output path.
    pub settings: BTreeMap<String, String>,
}

pub const DEFAULT_TRIALS: usize = 1000;

/// Splits a job file into key/value pairs. Blank lines and `#` comments are
/// skipped; values may be quoted.
pub fn parse_pairs(text: &str) -> Result<BTreeMap<String, String>, SpecError> {
    let mut map = BTreeMap::new();
    let mut diags = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            diags.push(Diagnostic {
                path: format!("line {}", lineno + 1),
                message: "expected 'key = value'".into(),
            });
            continue;
        };
        let key = key.trim().to_string();
        let value = value.trim().trim_matches('"').to_string();
        if key.is_empty() {
            diags.push(Diagnostic {
                path: format!("line {}", lineno + 1),
                message: "empty key".into(),
            });
        } else if map.insert(key.clone(), value).is_some() {
            diags.push(Diagnostic {
                path: key,
                message: "duplicate key".into(),
            });
        }
    }
    if diags.is_empty() {
        Ok(map)
    } else {
        Err(SpecError(diags))
    }
}

struct Fields<'a> {
    map: &'a BTreeMap<String, String>,
    used: RefCell<BTreeSet<String>>,
    diags: RefCell<Vec<Diagnostic>>,
}

impl<'a> Fields<'a> {
    fn get(&self, key: &str) -> Option<&'a str> {
        self.used.borrow_mut().insert(key.to_string());
        self.map.get(key).map(String::as_str)
    }

    fn error(&self, path: &str, message: impl Into<String>) {
        self.diags.borrow_mut().push(Diagnostic {
            path: path.to_string(),
            message: message.into(),
        });
    }

    fn required(&self, key: &str) -> Option<&'a str> {
        let v = self.get(key);
        if v.is_none() {
            self.error(key, format!("{key} required"));
        }
        v
    }

    fn parsed<T: FromStr>(&self, key: &str) -> Option<T>
    where
        T::Err: fmt::Display,
    {
        let raw = self.get(key)?;
        match raw.parse() {
            Ok(v) => Some(v),
            Err(e) => {
                self.error(key, format!("cannot parse '{raw}': {e}"));
                None
            }
        }
    }

    fn ring(&self, prefix: &str, limits: &Limits) -> Option<FiniteRing> {
        let key = |k: &str| format!("{prefix}.{k}");
        let kind = self.required(&key("kind"))?;
        let built = match kind {
            "cyclic" => {
                self.required(&key("n"))?;
                let n: usize = self.parsed(&key("n"))?;
                FiniteRing::cyclic_with(n, limits)
            }
            "matrix" | "triangular" => {
                let k: usize = self.parsed(&key("k")).unwrap_or(2);
                let base = self.ring(&key("base"), limits)?;
                if kind == "matrix" {
                    FiniteRing::matrix_with(&base, k, limits)
                } else {
                    FiniteRing::upper_triangular_with(&base, k, limits)
                }
            }
            "product" => {
                let left = self.ring(&key("left"), limits);
                let right = self.ring(&key("right"), limits);
                FiniteRing::product_ring_with(&left?, &right?, limits)
            }
            "table" => {
                let name = self.get(&key("name")).unwrap_or("R");
                let add = self.table(&key("add"))?;
                let mul = self.table(&key("mul"))?;
                FiniteRing::from_tables_with(name, add, mul, limits)
            }
            "gallery" => gallery_ring(self.required(&key("name"))?),
            other => {
                self.error(
                    &key("kind"),
                    format!("unknown ring kind '{other}' (cyclic, matrix, triangular, product, table, gallery)"),
                );
                return None;
            }
        };
        built.map_err(|e| self.error(prefix, e.to_string())).ok()
    }

    fn table(&self, key: &str) -> Option<Vec<Vec<Elem>>> {
        let raw = self.required(key)?;
        let rows: Result<Vec<Vec<Elem>>, _> = raw
            .split(';')
            .map(|row| row.split(',').map(|x| x.trim().parse::<Elem>()).collect())
            .collect();
        rows.map_err(|e| self.error(key, format!("bad table entry: {e}"))).ok()
    }

    fn finish(self) -> Vec<Diagnostic> {
        let used = self.used.into_inner();
        let mut diags = self.diags.into_inner();
        for key in self.map.keys().filter(|k| !used.contains(*k)) {
            diags.push(Diagnostic {
                path: key.clone(),
                message: "unknown key".into(),
            });
        }
        diags
    }
}

fn parse_series(series: &SeriesRing, raw: &str) -> Result<SkewSeries, String> {
    let mut terms = Vec::new();
    for part in raw.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (s, r) = part
            .rsplit_once(':')
            .ok_or_else(|| format!("term '{part}' is not 'exponent:coefficient'"))?;
        let s: MonoidElem = s.trim().parse()?;
        let r: Elem = r.trim().parse().map_err(|_| format!("bad coefficient in '{part}'"))?;
        terms.push((s, r));
    }
    series.from_terms(terms).map_err(|e| e.to_string())
}

impl Job {
    /// Parses and resolves a job file. All problems are reported together.
    pub fn from_text(text: &str, overrides: &Overrides, limits: &Limits) -> Result<Job, SpecError> {
        Job::from_map(&parse_pairs(text)?, overrides, limits)
    }

    pub fn from_map(map: &BTreeMap<String, String>, overrides: &Overrides, limits: &Limits) -> Result<Job, SpecError> {
        let fields = Fields {
            map,
            used: RefCell::new(BTreeSet::new()),
            diags: RefCell::new(Vec::new()),
        };
        let name = fields.get("job.name").unwrap_or("job").to_string();
        let ring = fields.ring("ring", limits);

        let preset = fields
            .get("preset")
            .and_then(|p| preset(p).map_err(|e| fields.error("preset", e.to_string())).ok());
        let kind = fields.get("monoid.kind");
        let order = fields.get("monoid.order");
        let monoid = match (preset, kind) {
            (Some(p), None) => Some(OrderedMonoid::new(p.monoid)),
            (Some(p), Some(k)) => {
                let m = OrderedMonoid::from_names(k, order).map_err(|e| fields.error("monoid.kind", e.to_string()));
                match m {
                    Ok(m) if m.kind() == p.monoid => Some(m),
                    Ok(_) => {
                        fields.error(
                            "monoid.kind",
                            format!("preset {} fixes the monoid to {}", p.name, p.monoid.name()),
                        );
                        None
                    }
                    Err(()) => None,
                }
            }
            (None, None) => {
                fields.error("monoid.kind", "monoid.kind required");
                None
            }
            (None, Some(k)) => OrderedMonoid::from_names(k, order)
                .map_err(|e| fields.error("monoid.kind", e.to_string()))
                .ok(),
        };
        let window: Option<i64> = fields.parsed("monoid.window");
        if window.is_some_and(|b| b < 1) {
            fields.error("monoid.window", "window bound must be at least 1");
        }

        let action_of = |key: &str| -> Option<RingAut> {
            let ring = ring.as_ref()?;
            match fields.get(key) {
                None => Some(RingAut::identity(ring.size())),
                Some(spec) => resolve_action(ring, spec)
                    .map_err(|e| fields.error(key, e.to_string()))
                    .ok(),
            }
        };
        let alpha = action_of("action.alpha");
        let beta = action_of("action.beta");

        let series = match (&ring, monoid, &alpha, &beta) {
            (Some(ring), Some(monoid), Some(alpha), Some(beta)) => {
                let built = match preset {
                    Some(p) => p.instantiate(ring, alpha, beta),
                    None if monoid.generators().len() == 2 => {
                        OmegaAction::pair(ring, monoid, alpha.clone(), beta.clone()).map(SeriesRing::new)
                    }
                    None if !beta.is_identity() => Err(skew_app::Error::InvalidAction(format!(
                        "{monoid} has one generator; action.beta must be identity"
                    ))),
                    None if monoid.generators().is_empty() => {
                        OmegaAction::new(ring, monoid, vec![(monoid.zero(), alpha.clone())]).map(SeriesRing::new)
                    }
                    None => OmegaAction::single(ring, monoid, alpha.clone()).map(SeriesRing::new),
                };
                built.map_err(|e| fields.error("action", e.to_string())).ok()
            }
            _ => None,
        };

        let series_field = |key: &str| -> Option<SkewSeries> {
            let raw = fields.get(key)?;
            let sr = series.as_ref()?;
            parse_series(sr, raw).map_err(|e| fields.error(key, e)).ok()
        };
        let g = series_field("series.g");
        let f = series_field("series.f");
        let w: Option<MonoidElem> = fields.parsed("series.w");
        if let (Some(w), Some(m)) = (w, monoid) {
            if !m.contains(w) {
                fields.error("series.w", format!("{w} is not in {m}"));
            }
        }

        let mut checks = Vec::new();
        if let Some(list) = fields.required("checks") {
            for c in list.split(',').map(str::trim).filter(|c| !c.is_empty()) {
                if CHECKS.contains(&c) {
                    checks.push(c.to_string());
                } else {
                    fields.error("checks", format!("unknown check '{c}'"));
                }
            }
            if checks.is_empty() && fields.diags.borrow().iter().all(|d| d.path != "checks") {
                fields.error("checks", "at least one check required");
            }
        }
        if checks.iter().any(|c| c == "cascade") && (g.is_none() || f.is_none() || w.is_none()) {
            fields.error("checks", "cascade requires series.g, series.f and series.w");
        }
        if g.is_some() != f.is_some() {
            fields.error("series", "series.g and series.f must be given together");
        }

        let file_mode = match fields.get("mode") {
            None | Some("auto") => None,
            Some(_) => fields.parsed::<Mode>("mode"),
        };
        let file_trials: Option<usize> = fields.parsed("trials");
        let file_seed: Option<u64> = fields.parsed("seed");
        let file_output = fields.get("output").map(PathBuf::from);
        let mode = overrides.mode.or(file_mode);
        let trials = overrides.trials.or(file_trials).unwrap_or(DEFAULT_TRIALS);
        let seed = overrides.seed.or(file_seed).unwrap_or(0);
        let output = overrides.output.clone().or(file_output);

        let diags = fields.finish();
        if !diags.is_empty() {
            return Err(SpecError(diags));
        }
        let mut settings: BTreeMap<String, String> = map
            .iter()
            .filter(|(k, _)| k.as_str() != "output")
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        settings.insert("mode".into(), mode.map_or("auto".into(), |m| m.to_string()));
        settings.insert("trials".into(), trials.to_string());
        settings.insert("seed".into(), seed.to_string());
        Ok(Job {
            name,
            ring: ring.unwrap(),
            monoid: monoid.unwrap(),
            alpha: alpha.unwrap(),
            beta: beta.unwrap(),
            preset,
            series: series.unwrap(),
            g,
            f,
            w,
            checks,
            mode,
            trials,
            seed,
            output,
            window,
            settings,
        })
    }
}
