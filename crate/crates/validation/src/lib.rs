//! Timed pass/fail checks reported one line each.

use std::fmt;
use std::time::{Duration, Instant};

/// Failures listed under a failing line before the rest are summarized.
const SHOWN: usize = 5;

pub struct Outcome {
    pub id: u32,
    pub title: &'static str,
    pub failures: Vec<String>,
    pub elapsed: Duration,
    pub limit: Option<Duration>,
}

impl Outcome {
    pub fn over_time(&self) -> bool {
        self.limit.is_some_and(|l| self.elapsed > l)
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && !self.over_time()
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {}: {} ({:.2?}", self.id, self.title, self.elapsed)?;
        match self.limit {
            Some(l) => write!(f, ", limit {l:?})")?,
            None => write!(f, ")")?,
        }
        if self.over_time() {
            write!(f, " over time limit")?;
        }
        for failure in self.failures.iter().take(SHOWN) {
            write!(f, "\n    {failure}")?;
        }
        if self.failures.len() > SHOWN {
            write!(f, "\n    ... {} more", self.failures.len() - SHOWN)?;
        }
        Ok(())
    }
}

/// Runs `check`, which returns its failures, under an optional time limit.
pub fn timed(id: u32, title: &'static str, limit: Option<Duration>, check: impl FnOnce() -> Vec<String>) -> Outcome {
    let start = Instant::now();
    let failures = check();
    Outcome { id, title, failures, elapsed: start.elapsed(), limit }
}

/// Collects failure messages for a check.
#[derive(Default)]
pub struct Failures(pub Vec<String>);

impl Failures {
    pub fn check(&mut self, ok: bool, message: impl FnOnce() -> String) {
        if !ok {
            self.0.push(message());
        }
    }

    pub fn into_vec(self) -> Vec<String> {
        self.0
    }
}
