//! Published tables of Norman permutations, recomputed and compared.
//!
//! Each row pairs a value computed by [`pi_of`] with the published entry;
//! rendering is plain text with a fixed layout so output can be diffed.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::jordan::pi_of;
use crate::parith::Prime;
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub p: Prime,
    pub label: String,
    pub samples: Vec<usize>,
    pub computed: String,
    pub expected: String,
}

impl TableRow {
    pub fn ok(&self) -> bool {
        self.computed == self.expected
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table {
    pub name: &'static str,
    pub rows: Vec<TableRow>,
}

impl Table {
    pub fn mismatches(&self) -> Vec<&TableRow> {
        self.rows.iter().filter(|row| !row.ok()).collect()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let samples: Vec<String> = row.samples.iter().map(|s| s.to_string()).collect();
            let status = if row.ok() { "ok" } else { "MISMATCH" };
            writeln!(
                out,
                "p={} {} s=[{}] computed={} expected={} {status}",
                row.p,
                row.label,
                samples.join(","),
                row.computed,
                row.expected
            )
            .expect("writing to a String");
        }
        out
    }

    /// Fails with an identity violation listing every mismatched row.
    pub fn check(&self) -> Result<()> {
        let bad = self.mismatches();
        if bad.is_empty() {
            return Ok(());
        }
        let lines: Vec<String> = bad
            .iter()
            .map(|r| format!("p={} {}: computed {} expected {}", r.p, r.label, r.computed, r.expected))
            .collect();
        Err(Error::IdentityViolation(format!("table {} differs:\n{}", self.name, lines.join("\n"))))
    }
}

/// Published `pi(3, s, p)` by class of `s` mod `4` (`p = 2`) or `p`.
fn pi3_published(class: &str) -> &'static str {
    match class {
        "0" => "(1,3)",
        "1" => "(2,3)",
        "-1" => "(1,2)",
        _ => "()",
    }
}

fn pi3_class(residue: usize, modulus: usize) -> &'static str {
    match residue {
        0 => "0",
        1 => "1",
        x if x + 1 == modulus => "-1",
        _ => "otherwise",
    }
}

/// Samples three full periods of `s >= 3` for each prime. A class with no
/// residues (the `otherwise` class for `p = 3`) is reported as empty.
pub fn table_pi3(primes: &[Prime]) -> Result<Table> {
    let mut rows = Vec::new();
    for &p in primes {
        let modulus = if p.get() == 2 { 4 } else { p.get() };
        for class in ["0", "1", "-1", "otherwise"] {
            let samples: Vec<usize> =
                (3..3 + 3 * modulus).filter(|s| pi3_class(s % modulus, modulus) == class).collect();
            let label = format!("s mod {modulus} = {class}");
            if samples.is_empty() {
                rows.push(TableRow { p, label, samples, computed: "empty".into(), expected: "empty".into() });
                continue;
            }
            let values: Vec<String> =
                samples.iter().map(|&s| pi_of(3, s, p).map(|g| g.format_cycles())).collect::<Result<_>>()?;
            let computed = if values.iter().all(|v| v == &values[0]) {
                values[0].clone()
            } else {
                format!("inconsistent{{{}}}", values.join(";"))
            };
            rows.push(TableRow { p, label, samples, computed, expected: pi3_published(class).to_string() });
        }
    }
    Ok(Table { name: "pi3", rows })
}

fn rev(i: usize, j: usize, r: usize) -> Permutation {
    Permutation::rev(i, j, r).expect("interval inside [r]")
}

/// Published value for case `c` (`s = c mod p^m`), built from reversals and,
/// for case 3, the published `pi(3, r, p)`.
fn small_s_published(case: usize, r: usize, p: Prime) -> Permutation {
    match case {
        0 => rev(1, r, r),
        1 => rev(2, r, r),
        2 if r.is_multiple_of(p.get()) => rev(1, 2, r).compose(&rev(3, r, r)).expect("same degree"),
        2 => rev(3, r, r),
        _ => {
            let modulus = if p.get() == 2 { 4 } else { p.get() };
            let head = Permutation::parse_cycles(pi3_published(pi3_class(r % modulus, modulus)), 3)
                .expect("published cycle text")
                .embed(r)
                .expect("r > 3");
            head.compose(&rev(4, r, r)).expect("same degree")
        }
    }
}

/// Cases `s = 0, 1, 2, 3 mod p^m` for `c + 1 <= r <= r_max`, `m` minimal
/// with `r <= p^m`; each row samples the first two `s >= r` in the class.
pub fn table_small_s(primes: &[Prime], r_max: usize) -> Result<Table> {
    if r_max == 0 {
        return Err(invalid("r_max must be positive"));
    }
    let mut rows = Vec::new();
    for &p in primes {
        for case in 0..4usize {
            for r in case + 1..=r_max {
                let q = p.covering_power(r);
                let first = (r..).find(|s| s % q == case).expect("some s in every class");
                let samples = vec![first, first + q];
                let values: Vec<Permutation> = samples.iter().map(|&s| pi_of(r, s, p)).collect::<Result<_>>()?;
                let computed = if values[0] == values[1] {
                    values[0].format_cycles()
                } else {
                    format!("inconsistent{{{};{}}}", values[0], values[1])
                };
                rows.push(TableRow {
                    p,
                    label: format!("case {case} r={r}"),
                    samples,
                    computed,
                    expected: small_s_published(case, r, p).format_cycles(),
                });
            }
        }
    }
    Ok(Table { name: "small-s", rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn primes(ps: &[usize]) -> Vec<Prime> {
        ps.iter().map(|&q| Prime::new(q).unwrap()).collect()
    }

    #[test]
    fn pi3_rows() {
        let t = table_pi3(&primes(&[3])).unwrap();
        let values: Vec<&str> = t.rows.iter().map(|r| r.computed.as_str()).collect();
        assert_eq!(values, ["(1,3)", "(2,3)", "(1,2)", "empty"]);
        let t = table_pi3(&primes(&[2])).unwrap();
        let values: Vec<&str> = t.rows.iter().map(|r| r.computed.as_str()).collect();
        assert_eq!(values, ["(1,3)", "(2,3)", "(1,2)", "()"]);
        assert!(t.rows[0].label.contains("mod 4"));
        t.check().unwrap();
    }

    #[test]
    fn small_s_case_zero_is_full_reversal() {
        let t = table_small_s(&primes(&[3]), 9).unwrap();
        for row in t.rows.iter().filter(|r| r.label.starts_with("case 0")) {
            let r: usize = row.label.rsplit('=').next().unwrap().parse().unwrap();
            assert_eq!(row.computed, Permutation::rev(1, r, r).unwrap().format_cycles());
        }
        t.check().unwrap();
    }

    #[test]
    fn mismatches_are_reported() {
        let mut t = table_pi3(&primes(&[5])).unwrap();
        t.rows[0].expected = "()".into();
        assert!(t.render().contains("MISMATCH"));
        assert!(matches!(t.check(), Err(Error::IdentityViolation(_))));
    }
}
