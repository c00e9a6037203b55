//! Batch verification over ranges of `(r, s, p)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::corr::check_bijections;
use crate::error::{invalid, Error, Result};
use crate::group::verify_wreath;
use crate::identities::{check_cell, IdentityCounts};
use crate::jordan::{lambda_of, pi_of};
use crate::oracle::{oracle_lambda, oracle_nilpotent};
use crate::par::{self, Execution};
use crate::parith::Prime;
use crate::standardness::equivalence_report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    OracleEquiv,
    Involution,
    SixWay,
    Identities,
    Wreath,
    BijectionRoundtrip,
    Nilpotent,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::OracleEquiv,
        Check::Involution,
        Check::SixWay,
        Check::Identities,
        Check::Wreath,
        Check::BijectionRoundtrip,
        Check::Nilpotent,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::OracleEquiv => "oracle-equiv",
            Check::Involution => "involution",
            Check::SixWay => "six-way",
            Check::Identities => "identities",
            Check::Wreath => "wreath",
            Check::BijectionRoundtrip => "bijection-roundtrip",
            Check::Nilpotent => "nilpotent",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        Check::ALL.into_iter().find(|c| c.name() == text).ok_or_else(|| invalid(format!("unknown check {text:?}")))
    }
}

/// Which `s` accompany each `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "mode")]
pub enum SRange {
    /// `r <= s <= s_max`.
    Absolute { s_max: usize },
    /// `r <= s <= r + p^m` with `m` minimal for `r <= p^m`.
    Period,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepSpec {
    pub r_max: usize,
    pub s_range: SRange,
    pub primes: Vec<Prime>,
    pub checks: Vec<Check>,
}

impl SweepSpec {
    pub fn new(r_max: usize, s_range: SRange, primes: Vec<Prime>, checks: Vec<Check>) -> Result<Self> {
        if r_max == 0 {
            return Err(invalid("r range is empty"));
        }
        if let SRange::Absolute { s_max } = s_range {
            if s_max == 0 {
                return Err(invalid("s range is empty"));
            }
        }
        if primes.is_empty() {
            return Err(invalid("no primes given"));
        }
        if checks.is_empty() {
            return Err(invalid("no checks given"));
        }
        Ok(SweepSpec { r_max, s_range, primes, checks })
    }

    fn s_values(&self, r: usize, p: Prime) -> std::ops::RangeInclusive<usize> {
        match self.s_range {
            SRange::Absolute { s_max } => r..=s_max,
            SRange::Period => r..=r + p.covering_power(r),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One verified unit. `s` is absent for per-`(r,p)` checks and `p` for
/// checks that do not depend on the prime.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SweepRecord {
    pub r: usize,
    pub s: Option<usize>,
    pub p: Option<usize>,
    pub check: Check,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CheckSummary {
    pub passed: usize,
    pub failed: usize,
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub summary: BTreeMap<Check, CheckSummary>,
    pub records: Vec<SweepRecord>,
}

impl SweepReport {
    pub fn all_passed(&self) -> bool {
        self.summary.values().all(|s| s.failed == 0)
    }
}

#[derive(Debug, Clone, Copy)]
enum Task {
    Cell(Check, usize, usize, Prime),
    PerPrime(Check, usize, Prime),
    PerPair(Check, usize, usize),
    PerDegree(Check, usize),
}

fn tasks(spec: &SweepSpec) -> Vec<Task> {
    let mut out = Vec::new();
    for &check in &spec.checks {
        match check {
            Check::OracleEquiv | Check::Involution | Check::SixWay | Check::Identities => {
                for &p in &spec.primes {
                    for r in 1..=spec.r_max {
                        out.extend(spec.s_values(r, p).map(|s| Task::Cell(check, r, s, p)));
                    }
                }
            }
            Check::Wreath => {
                for &p in &spec.primes {
                    out.extend((1..=spec.r_max).map(|r| Task::PerPrime(check, r, p)));
                }
            }
            Check::Nilpotent => {
                let p0 = spec.primes[0];
                for r in 1..=spec.r_max {
                    out.extend(spec.s_values(r, p0).map(|s| Task::PerPair(check, r, s)));
                }
            }
            Check::BijectionRoundtrip => out.extend((1..=spec.r_max).map(|r| Task::PerDegree(check, r))),
        }
    }
    out
}

fn run_cell(check: Check, r: usize, s: usize, p: Prime) -> Result<String> {
    match check {
        Check::OracleEquiv => {
            let (oracle, delta) = (oracle_lambda(r, s, p)?, lambda_of(r, s, p)?);
            if oracle != delta {
                return Err(Error::Internal(format!("oracle {oracle} but delta route {delta}")));
            }
            Ok(oracle.to_string())
        }
        Check::Involution => {
            let pi = pi_of(r, s, p)?;
            if !pi.compose(&pi)?.is_identity() {
                return Err(Error::Internal(format!("{pi} squared is not the identity")));
            }
            Ok(pi.format_cycles())
        }
        Check::SixWay => {
            let rep = equivalence_report(r, s, p)?;
            Ok(if rep.verdict() { "standard".into() } else { "non-standard".into() })
        }
        Check::Identities => {
            let mut counts = IdentityCounts::default();
            check_cell(r, s, p, &mut counts)?;
            Ok(format!(
                "large-prime={} periodicity={} duality={} congruence={}",
                counts.large_prime, counts.periodicity, counts.duality, counts.block_congruence
            ))
        }
        _ => unreachable!("not a per-cell check"),
    }
}

fn run_task(task: &Task, primes: &[Prime]) -> SweepRecord {
    let (check, r, s, p, outcome) = match *task {
        Task::Cell(check, r, s, p) => (check, r, Some(s), Some(p.get()), run_cell(check, r, s, p)),
        Task::PerPrime(check, r, p) => {
            let outcome = verify_wreath(r, p).and_then(|rep| {
                let text = format!("order={} expected={}", rep.order, rep.expected_order);
                if rep.verdict {
                    Ok(text)
                } else {
                    Err(Error::Internal(format!("{text} report={rep:?}")))
                }
            });
            (check, r, None, Some(p.get()), outcome)
        }
        Task::PerPair(check, r, s) => (check, r, Some(s), None, nilpotent_across(r, s, primes)),
        Task::PerDegree(check, r) => (check, r, None, None, check_bijections(r).map(|n| format!("{n} subsets"))),
    };
    let (status, detail) = match outcome {
        Ok(detail) => (Status::Pass, detail),
        Err(e) => (Status::Fail, format!("{}: {e}", e.code())),
    };
    SweepRecord { r, s, p, check, status, detail }
}

/// The nilpotent partition must not depend on the prime.
fn nilpotent_across(r: usize, s: usize, primes: &[Prime]) -> Result<String> {
    let first = oracle_nilpotent(r, s, primes[0])?;
    for &p in &primes[1..] {
        let other = oracle_nilpotent(r, s, p)?;
        if other.partition != first.partition {
            return Err(Error::Internal(format!(
                "p={} gives {} but p={p} gives {}",
                primes[0], first.partition, other.partition
            )));
        }
    }
    Ok(format!("partition={} mu={}", first.partition, first.mu))
}

pub fn run_sweep(spec: &SweepSpec) -> SweepReport {
    run_sweep_with(spec, Execution::Parallel)
}

/// Records are sorted by `(r, s, p, check)` whatever the execution order.
pub fn run_sweep_with(spec: &SweepSpec, execution: Execution) -> SweepReport {
    let work = tasks(spec);
    let mut records = par::map(&work, execution, |t| run_task(t, &spec.primes));
    records.sort();
    let mut summary: BTreeMap<Check, CheckSummary> =
        spec.checks.iter().map(|&c| (c, CheckSummary::default())).collect();
    for rec in &records {
        let entry = summary.entry(rec.check).or_default();
        match rec.status {
            Status::Pass => entry.passed += 1,
            Status::Fail => {
                entry.failed += 1;
                if entry.first_failure.is_none() {
                    entry.first_failure = Some(format!("r={} s={:?} p={:?}: {}", rec.r, rec.s, rec.p, rec.detail));
                }
            }
        }
    }
    SweepReport { summary, records }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn primes(ps: &[usize]) -> Vec<Prime> {
        ps.iter().map(|&q| Prime::new(q).unwrap()).collect()
    }

    #[test]
    fn checks_parse() {
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>().unwrap(), c);
        }
        assert!("nope".parse::<Check>().is_err());
    }

    #[test]
    fn spec_validation() {
        assert!(SweepSpec::new(0, SRange::Period, primes(&[2]), vec![Check::Involution]).is_err());
        assert!(SweepSpec::new(3, SRange::Period, vec![], vec![Check::Involution]).is_err());
        assert!(SweepSpec::new(3, SRange::Period, primes(&[2]), vec![]).is_err());
    }

    #[test]
    fn small_sweep_passes_and_is_deterministic() {
        let spec = SweepSpec::new(8, SRange::Absolute { s_max: 10 }, primes(&[2, 3]), Check::ALL.to_vec()).unwrap();
        let seq = run_sweep_with(&spec, Execution::Sequential);
        let par = run_sweep_with(&spec, Execution::Parallel);
        assert_eq!(seq, par);
        assert!(seq.all_passed(), "{:?}", seq.summary);
        let cells = (1..=8).map(|r| 10 - r + 1).sum::<usize>();
        assert_eq!(seq.summary[&Check::OracleEquiv].passed, 2 * cells);
        assert_eq!(seq.summary[&Check::Nilpotent].passed, cells);
        assert_eq!(seq.summary[&Check::Wreath].passed, 16);
        assert_eq!(seq.summary[&Check::BijectionRoundtrip].passed, 8);
    }
}
