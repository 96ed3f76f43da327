//! Seeded property suites with replayable failure reports.

mod graphs;
mod logic;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

pub const SUITES: [&str; 14] = [
    "flip-involution",
    "lc-involution",
    "pivot",
    "commute0",
    "commute0b",
    "commute",
    "clean",
    "spread",
    "svm-flip",
    "unsub",
    "om2si",
    "roundtrip-XK",
    "example-si",
    "footnote-perm",
];

/// Per-run knobs. `trials = None` uses the suite's default count; `n` and
/// `r` narrow suites that sweep a size or a subdivision count.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub seed: u64,
    pub trials: Option<usize>,
    pub n: Option<usize>,
    pub r: Option<usize>,
    pub extended: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub trial: u64,
    pub message: String,
    /// Everything needed to rerun the failing check.
    pub instance: Value,
}

/// A claimed upper bound tallied over all trials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: String,
    pub claimed: String,
    pub checked: usize,
    pub violations: usize,
    /// Largest observed value and the claimed value on that instance.
    pub worst_observed: usize,
    pub worst_claimed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub options: VerifyOptions,
    pub trials: usize,
    pub failures: Vec<Failure>,
    pub bounds: Vec<BoundCheck>,
    /// Suite-specific observations, such as the depth reached by `unsub`.
    pub observed: BTreeMap<String, Value>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        let mut out = format!(
            "suite {} seed {} trials {} failures {}\n",
            self.suite,
            self.options.seed,
            self.trials,
            self.failures.len()
        );
        for b in &self.bounds {
            out.push_str(&format!(
                "bound {} ≤ {}: {} checked, {} violated, worst {} vs {}\n",
                b.name, b.claimed, b.checked, b.violations, b.worst_observed, b.worst_claimed
            ));
        }
        for (k, v) in &self.observed {
            out.push_str(&format!("observed {k} = {v}\n"));
        }
        for f in self.failures.iter().take(5) {
            out.push_str(&format!("failure trial {}: {}\n", f.trial, f.message));
        }
        out
    }
}

/// Collects results while a suite runs.
pub(crate) struct Recorder {
    report: VerificationReport,
}

impl Recorder {
    fn new(suite: &str, options: &VerifyOptions) -> Self {
        Recorder {
            report: VerificationReport {
                suite: suite.to_string(),
                options: options.clone(),
                trials: 0,
                failures: Vec::new(),
                bounds: Vec::new(),
                observed: BTreeMap::new(),
            },
        }
    }

    pub(crate) fn trial(&mut self) {
        self.report.trials += 1;
    }

    pub(crate) fn fail(&mut self, trial: u64, message: impl Into<String>, instance: Value) {
        self.report.failures.push(Failure {
            trial,
            message: message.into(),
            instance,
        });
    }

    /// Records `observed ≤ claimed`; a violation is also a failure.
    pub(crate) fn bound(
        &mut self,
        name: &str,
        formula: &str,
        observed: usize,
        claimed: usize,
        trial: u64,
        instance: &Value,
    ) {
        let idx = match self.report.bounds.iter().position(|b| b.name == name) {
            Some(i) => i,
            None => {
                self.report.bounds.push(BoundCheck {
                    name: name.to_string(),
                    claimed: formula.to_string(),
                    checked: 0,
                    violations: 0,
                    worst_observed: 0,
                    worst_claimed: 0,
                });
                self.report.bounds.len() - 1
            }
        };
        let b = &mut self.report.bounds[idx];
        b.checked += 1;
        if observed > b.worst_observed {
            b.worst_observed = observed;
            b.worst_claimed = claimed;
        }
        if observed > claimed {
            b.violations += 1;
            self.fail(
                trial,
                format!("{name} = {observed} exceeds {formula} = {claimed}"),
                instance.clone(),
            );
        }
    }

    pub(crate) fn observe(&mut self, key: &str, value: Value) {
        self.report.observed.insert(key.to_string(), value);
    }

    /// Runs a trial body; an error becomes a failure carrying `instance`.
    pub(crate) fn check(
        &mut self,
        trial: u64,
        instance: &Value,
        body: impl FnOnce(&mut Self) -> Result<()>,
    ) {
        self.trial();
        if let Err(e) = body(self) {
            self.fail(trial, e.to_string(), instance.clone());
        }
    }
}

pub fn run_suite(suite: &str, options: &VerifyOptions) -> Result<VerificationReport> {
    let mut rec = Recorder::new(suite, options);
    let trials = |default: usize| options.trials.unwrap_or(default);
    match suite {
        "flip-involution" => graphs::flip_involution(&mut rec, options.seed, trials(1000)),
        "lc-involution" => graphs::lc_involution(&mut rec, options.seed, trials(1000)),
        "pivot" => graphs::pivot(&mut rec, options.seed, trials(500)),
        "commute0" => graphs::commute0(&mut rec, options.seed, trials(1000)),
        "commute0b" => graphs::commute0b(&mut rec, options.seed, trials(300)),
        "commute" => graphs::commute(&mut rec, options.seed, trials(500)),
        "clean" => graphs::clean(&mut rec, options.seed, trials(500)),
        "spread" => graphs::spread(&mut rec, options.seed, trials(500)),
        "svm-flip" => graphs::svm_flip(&mut rec, options.seed, trials(300)),
        "unsub" => graphs::unsub(&mut rec, options.seed, trials(100), options.r),
        "om2si" => graphs::om2si(&mut rec, options.seed, trials(100)),
        "roundtrip-XK" => logic::roundtrip_xk(&mut rec, options.seed, trials(500)),
        "example-si" => logic::example_si(&mut rec, options.n, options.extended)?,
        "footnote-perm" => logic::footnote_perm(&mut rec, options.n),
        _ => {
            return Err(Error::Domain(format!(
                "unknown suite {suite:?}; expected one of {}",
                SUITES.join(", ")
            )))
        }
    }
    Ok(rec.report)
}

#[cfg(test)]
mod tests;
