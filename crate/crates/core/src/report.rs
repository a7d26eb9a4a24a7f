//! Structured verification results.

use std::collections::BTreeMap;

use crate::config::Config;
use crate::error::Result;
use crate::sample::{first_failure, Sampler};

/// Outcome of one named property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Cases evaluated; on failure, the index of the first failing case plus one.
    pub checked: usize,
    pub counterexample: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>, checked: usize) -> Self {
        Check { name: name.into(), passed: true, checked, counterexample: None }
    }

    pub fn fail(name: impl Into<String>, checked: usize, counterexample: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed: false,
            checked,
            counterexample: Some(counterexample.into()),
        }
    }

    /// A single yes/no fact with an explanation on failure.
    pub fn single(name: impl Into<String>, ok: bool, why: impl FnOnce() -> String) -> Self {
        if ok {
            Check::pass(name, 1)
        } else {
            Check::fail(name, 1, why())
        }
    }

    /// Exhaustive check over an iterator of cases; stops at the first failure.
    pub fn exhaustive<I, T, F>(name: impl Into<String>, cases: I, mut f: F) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        F: FnMut(T) -> Result<Option<String>>,
    {
        let mut n = 0;
        for case in cases {
            n += 1;
            if let Some(cx) = f(case)? {
                return Ok(Check::fail(name, n, cx));
            }
        }
        Ok(Check::pass(name, n))
    }

    /// Runs `f` on `cfg.samples` independent seeded samplers.  The outcome
    /// depends only on the seed and the check name.
    pub fn sampled<F>(name: impl Into<String>, cfg: &Config, f: F) -> Result<Self>
    where
        F: Fn(&mut Sampler) -> Result<Option<String>> + Sync,
    {
        Check::sampled_n(name, cfg, cfg.samples, f)
    }

    pub fn sampled_n<F>(name: impl Into<String>, cfg: &Config, samples: usize, f: F) -> Result<Self>
    where
        F: Fn(&mut Sampler) -> Result<Option<String>> + Sync,
    {
        let name = name.into();
        let tag = stream_tag(&name);
        let hit = first_failure(samples, cfg.workers, |i| {
            let mut s = Sampler::for_index(cfg.seed, tag, i, cfg.bound);
            match f(&mut s) {
                Ok(None) => None,
                Ok(Some(cx)) => Some(Ok(cx)),
                Err(e) => Some(Err(e)),
            }
        });
        match hit {
            None => Ok(Check::pass(name, samples)),
            Some((i, Ok(cx))) => Ok(Check::fail(name, i + 1, cx)),
            Some((_, Err(e))) => Err(e),
        }
    }
}

/// FNV-1a, so each named check draws from its own streams.
fn stream_tag(name: &str) -> u32 {
    let mut h: u32 = 0x811c_9dc5;
    for b in name.bytes() {
        h ^= b as u32;
        h = h.wrapping_mul(0x0100_0193);
    }
    h
}

/// A titled list of checks plus named facts (computed values worth
/// reporting, such as an offset or a flag).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
    pub facts: BTreeMap<String, String>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), ..Default::default() }
    }

    pub fn push(&mut self, check: Check) -> &mut Self {
        self.checks.push(check);
        self
    }

    pub fn fact(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.facts.insert(key.into(), value.to_string());
        self
    }

    /// Appends another report's checks under a name prefix.
    pub fn absorb(&mut self, prefix: &str, other: Report) -> &mut Self {
        for mut c in other.checks {
            c.name = format!("{prefix}{}", c.name);
            self.checks.push(c);
        }
        for (k, v) in other.facts {
            self.facts.insert(format!("{prefix}{k}"), v);
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl std::fmt::Display for Report {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{}: {}", self.title, if self.passed() { "pass" } else { "FAIL" })?;
        for c in &self.checks {
            write!(f, "  [{}] {} ({})", if c.passed { "ok" } else { "FAIL" }, c.name, c.checked)?;
            if let Some(cx) = &c.counterexample {
                write!(f, ": {cx}")?;
            }
            writeln!(f)?;
        }
        for (k, v) in &self.facts {
            writeln!(f, "  {k} = {v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampled_checks_ignore_worker_count() {
        let run = |w| {
            let cfg = Config::default().with_workers(w).with_samples(400);
            Check::sampled("odd draw", &cfg, |s| {
                let k = s.index(1000);
                Ok((k == 7 || k == 993).then(|| k.to_string()))
            })
            .unwrap()
        };
        let base = run(1);
        for w in [2, 5] {
            assert_eq!(run(w), base);
        }
    }
}
