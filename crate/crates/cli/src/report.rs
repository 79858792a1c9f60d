//! Check outcomes and suite reports.

use std::time::Duration;

use rayon::prelude::*;
use serde_json::{json, Value};

use qfold::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

/// Result of evaluating one check.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub pass: bool,
    pub detail: Option<String>,
    /// Serialized counterexample when the check fails.
    pub witness: Option<Value>,
}

impl Outcome {
    pub fn pass() -> Self {
        Outcome { pass: true, ..Default::default() }
    }

    pub fn fail(detail: impl Into<String>) -> Self {
        Outcome { pass: false, detail: Some(detail.into()), witness: None }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn with_witness(mut self, w: Value) -> Self {
        self.witness = Some(w);
        self
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub detail: Option<String>,
    pub witness: Option<Value>,
}

impl Check {
    pub fn to_json(&self) -> Value {
        let mut v = json!({ "id": self.id, "status": self.status.as_str() });
        if let Some(d) = &self.detail {
            v["detail"] = json!(d);
        }
        if let Some(w) = &self.witness {
            v["witness"] = w.clone();
        }
        v
    }
}

pub type Job = (String, Box<dyn Fn() -> Result<Outcome> + Send + Sync>);

/// Runs jobs on the current rayon pool; the result order is the job order.
pub fn run_jobs(jobs: Vec<Job>) -> Vec<Check> {
    jobs.into_par_iter()
        .map(|(id, job)| match job() {
            Ok(o) => Check {
                id,
                status: if o.pass { Status::Pass } else { Status::Fail },
                detail: o.detail,
                witness: o.witness,
            },
            Err(e) => Check { id, status: Status::Fail, detail: Some(format!("error: {e}")), witness: None },
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub wall_time: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn count(&self, s: Status) -> usize {
        self.checks.iter().filter(|c| c.status == s).count()
    }

    /// The wall time is left out unless asked for, so that reports of
    /// identical runs are byte-identical.
    pub fn to_json(&self, with_time: bool) -> Value {
        let mut v = json!({
            "suite": self.suite,
            "passed": self.passed(),
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
        });
        if with_time {
            v["wall_time_ms"] = json!(self.wall_time.as_millis() as u64);
        }
        v
    }

    pub fn to_text(&self, with_time: bool) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s.push_str(&format!("{:<7} {}", c.status.as_str(), c.id));
            if let Some(d) = &c.detail {
                s.push_str(&format!("  ({d})"));
            }
            s.push('\n');
            if let Some(w) = &c.witness {
                s.push_str(&format!("        witness: {w}\n"));
            }
        }
        s.push_str(&format!(
            "{}: {} passed, {} failed, {} skipped",
            self.suite,
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skipped)
        ));
        if with_time {
            s.push_str(&format!(" in {:.2?}", self.wall_time));
        }
        s.push('\n');
        s
    }
}
