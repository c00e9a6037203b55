//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::One;

use norman_core::green::check_green_identities;
use norman_core::group::verify_wreath;
use norman_core::identities::{large_prime_suite, p_multiple_suite, truncation_suite, IdentityCounts};
use norman_core::oracle::oracle_nilpotent;
use norman_core::par::Execution;
use norman_core::sweep::{run_sweep_with, Check, SRange, SweepReport, SweepSpec};
use norman_core::tables::{table_pi3, table_small_s, Table};
use norman_core::{Prime, Result};

type Outcome = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn primes(ps: &[usize]) -> Vec<Prime> {
    ps.iter().map(|&q| Prime::new(q).expect("prime")).collect()
}

fn sweep(check: Check, r_max: usize, s_range: SRange, ps: &[usize]) -> SweepReport {
    let spec = SweepSpec::new(r_max, s_range, primes(ps), vec![check]).expect("valid sweep");
    run_sweep_with(&spec, Execution::Parallel)
}

fn summarize(report: &SweepReport, check: Check) -> Outcome {
    let s = &report.summary[&check];
    match &s.first_failure {
        None => Ok(format!("{} cells", s.passed)),
        Some(first) => Err(format!("{} of {} cells failed, first {first}", s.failed, s.passed + s.failed)),
    }
}

fn oracle_equivalence() -> Outcome {
    let report = sweep(Check::OracleEquiv, 30, SRange::Absolute { s_max: 30 }, &[2, 3, 5, 7]);
    let out = summarize(&report, Check::OracleEquiv)?;
    if report.records.len() != 4 * 465 {
        return Err(format!("expected 1860 cells, ran {}", report.records.len()));
    }
    Ok(out)
}

fn involution() -> Outcome {
    let report = sweep(Check::Involution, 30, SRange::Absolute { s_max: 30 }, &[2, 3, 5, 7]);
    summarize(&report, Check::Involution)
}

fn six_way() -> Outcome {
    let report = sweep(Check::SixWay, 30, SRange::Period, &[2, 3, 5, 7, 11]);
    summarize(&report, Check::SixWay)
}

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.txt"))
}

/// Rendered table must equal the stored file byte for byte; on mismatch the
/// actual rendering is written next to it for diffing.
fn against_golden(table: &Table, file: &str) -> Outcome {
    table.check().map_err(|e| e.to_string())?;
    let rendered = table.render();
    let path = golden_path(file);
    let stored = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if stored != rendered {
        let actual = path.with_extension("actual");
        std::fs::write(&actual, &rendered).map_err(|e| e.to_string())?;
        return Err(format!("{} differs from golden, see {}", table.name, actual.display()));
    }
    Ok(format!("{} rows", table.rows.len()))
}

fn tables() -> Outcome {
    let run = || -> Result<(Table, Table)> {
        Ok((table_pi3(&primes(&[2, 3, 5, 7]))?, table_small_s(&primes(&[2, 3, 5]), 25)?))
    };
    let (pi3, small) = run().map_err(|e| e.to_string())?;
    let a = against_golden(&pi3, "pi3")?;
    let b = against_golden(&small, "small_s")?;
    Ok(format!("pi3 {a}, small-s {b}"))
}

fn identities() -> Outcome {
    let report = sweep(Check::Identities, 30, SRange::Absolute { s_max: 30 }, &[2, 3, 5, 7]);
    let cells = summarize(&report, Check::Identities)?;
    let mut counts = IdentityCounts::default();
    let mut green = 0;
    let run = |counts: &mut IdentityCounts, green: &mut usize| -> Result<()> {
        large_prime_suite(31, counts)?;
        for p in primes(&[3, 5]) {
            truncation_suite(p, 2, counts)?;
        }
        for p in primes(&[2, 3, 5, 7]) {
            for l in 1..=2 {
                p_multiple_suite(p, l, 4096, counts)?;
            }
        }
        // p^m <= 81
        for (p, e_max) in [(2, 6), (3, 4), (5, 2)] {
            *green += check_green_identities(Prime::new(p)?, e_max)?.checked;
        }
        Ok(())
    };
    run(&mut counts, &mut green).map_err(|e| e.to_string())?;
    if counts.large_prime == 0 || counts.truncation == 0 || counts.p_multiple == 0 || green == 0 {
        return Err(format!("a suite checked nothing: {counts:?} green={green}"));
    }
    Ok(format!(
        "sweep {cells}, large-prime {}, truncation {}, p-multiple {}, green {green}",
        counts.large_prime, counts.truncation, counts.p_multiple
    ))
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// `(a!)^b |D_b|` with `|D_1| = 1`, `|D_2| = 2`, `|D_b| = 2b` otherwise.
fn expected_order(r: usize, p: usize) -> BigUint {
    let mut b = 1;
    while r.is_multiple_of(b * p) {
        b *= p;
    }
    let dihedral = match b {
        1 => 1usize,
        2 => 2,
        _ => 2 * b,
    };
    factorial(r / b).pow(b as u32) * BigUint::from(dihedral)
}

fn wreath() -> Outcome {
    for (r, p, order) in [(4, 2, 8u32), (6, 2, 72), (6, 3, 48), (12, 2, 10368)] {
        if expected_order(r, p) != BigUint::from(order) {
            return Err(format!("formula gives {} for G({r},{p}), not {order}", expected_order(r, p)));
        }
    }
    let mut groups = 0;
    let mut transpositions = 0;
    for p in primes(&[2, 3, 5, 7]) {
        for r in 1..=24 {
            let rep = verify_wreath(r, p).map_err(|e| format!("G({r},{p}): {e}"))?;
            let want = expected_order(r, p.get());
            if !rep.verdict || rep.order != want {
                return Err(format!("G({r},{p}): order {} expected {want}, report {rep:?}", rep.order));
            }
            if rep.a > 1 && rep.b > 1 {
                if rep.l9_transposition_found != Some(true) {
                    return Err(format!("G({r},{p}): transposition (1,{}) not recovered", rep.b + 1));
                }
                transpositions += 1;
            }
            groups += 1;
        }
    }
    Ok(format!("{groups} groups, {transpositions} transpositions recovered"))
}

fn bijections() -> Outcome {
    let report = sweep(Check::BijectionRoundtrip, 12, SRange::Period, &[2]);
    summarize(&report, Check::BijectionRoundtrip)
}

fn nilpotent() -> Outcome {
    let report = sweep(Check::Nilpotent, 12, SRange::Absolute { s_max: 12 }, &[2, 3, 5]);
    let out = summarize(&report, Check::Nilpotent)?;
    // structural constraints, restated independently of the library's own check
    for r in 1..=12 {
        for s in r..=12 {
            let rep = oracle_nilpotent(r, s, Prime::new(2).expect("prime")).map_err(|e| e.to_string())?;
            let parts = rep.partition.parts();
            let copies_of_r = parts.iter().filter(|&&x| x == r).count();
            let forced_ok = copies_of_r >= s - r + 1 && (copies_of_r - (s - r + 1)) % 2 == 0;
            let mu_sum: usize = rep.mu.parts().iter().sum();
            let paired = (1..r).all(|k| parts.iter().filter(|&&x| x == k).count() % 2 == 0);
            if !forced_ok || !paired || mu_sum != r * (r - 1) / 2 || parts.iter().sum::<usize>() != r * s {
                return Err(format!("N_{r} (x) N_{s} = {}: structure violated", rep.partition));
            }
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("oracle equivalence", oracle_equivalence),
        ("involution law", involution),
        ("six-way standardness", six_way),
        ("table reproduction", tables),
        ("identity suite", identities),
        ("wreath structure", wreath),
        ("bijection round-trips", bijections),
        ("nilpotent field-independence", nilpotent),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
