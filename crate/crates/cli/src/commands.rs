use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};

use norman_core::corr::{
    eps_to_perm, eps_to_subset, perm_to_eps, subset_to_eps, subset_to_perm, validate_eps, DeviationVector,
    SubsetProfile,
};
use norman_core::delta::delta_profile;
use norman_core::green::{check_green_identities, decompose};
use norman_core::group::{generator_census, group_generators, verify_wreath, BlockSystem};
use norman_core::jordan::fast::pi_fast_path;
use norman_core::jordan::{jordan as delta_route, JordanResult, Method};
use norman_core::oracle::{matrix_cap, oracle_lambda_with, oracle_nilpotent_with_cap, Engine};
use norman_core::par::Execution;
use norman_core::parith::p_parts;
use norman_core::standardness::{equivalence_report, standard_triple};
use norman_core::sweep::{run_sweep_with, Check, SRange, Status, SweepRecord, SweepReport, SweepSpec};
use norman_core::tables::{table_pi3, table_small_s};
use norman_core::{Error, Permutation, Prime, Result};

use crate::{EngineArg, Format, KindArg, MethodArg, Output, TableName, Triple};

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

/// `(r, s, p, swapped)` with `r <= s`.
fn normalize(t: Triple) -> Result<(usize, usize, Prime, bool)> {
    let p = Prime::new(t.p)?;
    Ok(if t.r > t.s { (t.s, t.r, p, true) } else { (t.r, t.s, p, false) })
}

fn pretty(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("values serialize");
    text.push('\n');
    text
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("values serialize")
}

/// Adds `"swapped"` to a JSON object.
fn with_swapped(mut value: Value, swapped: bool) -> Value {
    value.as_object_mut().expect("an object").insert("swapped".into(), Value::Bool(swapped));
    value
}

fn swap_note(swapped: bool) -> &'static str {
    if swapped {
        " (r and s swapped)"
    } else {
        ""
    }
}

pub enum Shown {
    Lambda,
    Pi,
}

pub fn jordan(t: Triple, method: MethodArg, json: bool, shown: Shown) -> Result<Output> {
    let (r, s, p, swapped) = normalize(t)?;
    let mut rule = None;
    let result = match method {
        MethodArg::Delta => delta_route(r, s, p)?,
        MethodArg::Fast => {
            let fast = pi_fast_path(r, s, p)?
                .ok_or_else(|| Error::Precondition(format!("no closed form applies to ({r},{s},{p})")))?;
            rule = Some(fast.rule);
            JordanResult::from_pi(r, s, p, fast.pi, Method::FastPath)?
        }
        MethodArg::Oracle => {
            let lambda = oracle_lambda_with(r, s, p, Engine::Auto, matrix_cap()?)?;
            JordanResult::from_lambda(r, s, p, lambda, Method::Oracle)?
        }
    };
    if json {
        let mut value = with_swapped(to_value(&result), swapped);
        if let Some(rule) = rule {
            value["rule"] = to_value(&rule);
        }
        return Ok(Output::pass(pretty(&value)));
    }
    let text = match shown {
        Shown::Lambda => result.lambda.to_string(),
        Shown::Pi => result.pi.format_cycles(),
    };
    Ok(Output::pass(format!("{text}{}\n", swap_note(swapped))))
}

pub fn standard(t: Triple, json: bool) -> Result<Output> {
    let (r, s, p, swapped) = normalize(t)?;
    let triple = standard_triple(r, s, p)?;
    let report = equivalence_report(r, s, p)?;
    if json {
        let conditions: serde_json::Map<String, Value> =
            report.conditions().iter().map(|&(name, v)| (name.to_string(), Value::Bool(v))).collect();
        let value = json!({
            "r": r, "s": s, "p": p, "m": triple.m,
            "verdict": report.verdict(),
            "matched_row": report.matched_row,
            "quantities": triple.quantities,
            "conditions": conditions,
            "swapped": swapped,
        });
        return Ok(Output::pass(pretty(&value)));
    }
    let mut out = String::new();
    writeln!(out, "standard: {}{}", report.verdict(), swap_note(swapped)).unwrap();
    match report.matched_row {
        Some(row) => writeln!(out, "row: {row}").unwrap(),
        None => writeln!(out, "row: none").unwrap(),
    }
    for (name, v) in report.conditions() {
        writeln!(out, "{name}: {v}").unwrap();
    }
    Ok(Output::pass(out))
}

fn list<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn delta(t: Triple, json: bool) -> Result<Output> {
    let (r, s, p, swapped) = normalize(t)?;
    let d = delta_profile(r, s, p)?;
    if json {
        return Ok(Output::pass(pretty(&with_swapped(to_value(&d), swapped))));
    }
    Ok(Output::pass(format!(
        "delta=[{}] L=[{}] R=[{}]{}\n",
        list(&d.delta),
        list(&d.left),
        list(&d.right),
        swap_note(swapped)
    )))
}

pub fn oracle(t: Triple, kind: KindArg, engine: EngineArg, cap: Option<usize>, json: bool) -> Result<Output> {
    let (r, s, p, swapped) = normalize(t)?;
    let cap = match cap {
        Some(c) => c,
        None => matrix_cap()?,
    };
    let engine = match engine {
        EngineArg::Dense => Engine::Dense,
        EngineArg::Graded => Engine::Graded,
        EngineArg::Auto => Engine::Auto,
    };
    match kind {
        KindArg::Unipotent => {
            let partition = oracle_lambda_with(r, s, p, engine, cap)?;
            if json {
                let value = json!({
                    "r": r, "s": s, "p": p, "kind": "unipotent", "engine": engine,
                    "partition": partition, "swapped": swapped,
                });
                return Ok(Output::pass(pretty(&value)));
            }
            Ok(Output::pass(format!("{partition}{}\n", swap_note(swapped))))
        }
        KindArg::Nilpotent => {
            let report = oracle_nilpotent_with_cap(r, s, p, cap)?;
            if json {
                let mut value = with_swapped(to_value(&report), swapped);
                value["kind"] = json!("nilpotent");
                return Ok(Output::pass(pretty(&value)));
            }
            Ok(Output::pass(format!("{} mu={}{}\n", report.partition, report.mu, swap_note(swapped))))
        }
    }
}

pub fn green(t: Triple, emax: Option<u32>, json: bool) -> Result<Output> {
    let (r, s, p, swapped) = normalize(t)?;
    let g = decompose(r, s, p)?;
    let identities = emax.map(|e| check_green_identities(p, e)).transpose()?;
    if json {
        let mut value = json!({ "r": r, "s": s, "p": p, "summands": g.summands, "swapped": swapped });
        if let Some(rep) = &identities {
            value["identities"] = json!({ "e_max": rep.e_max, "checked": rep.checked });
        }
        return Ok(Output::pass(pretty(&value)));
    }
    let mut out = format!("{g}{}\n", swap_note(swapped));
    if let Some(rep) = identities {
        writeln!(out, "identities up to {p}^{}: {} checked, all hold", rep.e_max, rep.checked).unwrap();
    }
    Ok(Output::pass(out))
}

pub fn group(r: usize, p: usize, verify: bool, census: bool, blocks: bool, json: bool) -> Result<Output> {
    let p = Prime::new(p)?;
    let verify = verify || !(census || blocks);
    let mut value = json!({ "r": r, "p": p });
    let mut out = String::new();
    let mut ok = true;
    if verify {
        let rep = verify_wreath(r, p)?;
        ok = rep.verdict;
        writeln!(
            out,
            "G({r},{p}) = S_{} wr D_{}: order {} expected {} verdict {}",
            rep.a, rep.b, rep.order, rep.expected_order, rep.verdict
        )
        .unwrap();
        value["report"] = to_value(&rep);
    }
    if census {
        let count = generator_census(r, p)?;
        let gens: Vec<String> = group_generators(r, p)?.iter().map(Permutation::format_cycles).collect();
        writeln!(out, "census: {count} distinct values over one period").unwrap();
        for g in &gens {
            writeln!(out, "  {g}").unwrap();
        }
        value["census"] = json!({ "count": count, "generators": gens });
    }
    if blocks {
        if r == 0 {
            return Err(invalid("r must be positive"));
        }
        let system = BlockSystem::new(r, p_parts(r, p)?.b)?;
        for block in system.blocks() {
            writeln!(out, "block {{{}}}", list(&block)).unwrap();
        }
        value["blocks"] = to_value(&system.blocks());
    }
    let stdout = if json { pretty(&value) } else { out };
    Ok(Output { stdout, ok })
}

pub fn table(name: TableName, primes: &[usize], rmax: usize, json: bool) -> Result<Output> {
    let primes: Vec<Prime> = primes.iter().map(|&q| Prime::new(q)).collect::<Result<_>>()?;
    let table = match name {
        TableName::Pi3 => table_pi3(&primes)?,
        TableName::SmallS => table_small_s(&primes, rmax)?,
    };
    if let Err(e) = table.check() {
        eprintln!("{e}");
    }
    let ok = table.mismatches().is_empty();
    let stdout = if json {
        let mut value = to_value(&table);
        value["ok"] = Value::Bool(ok);
        pretty(&value)
    } else {
        table.render()
    };
    Ok(Output { stdout, ok })
}

fn opt(x: Option<usize>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn status(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
    }
}

fn render_csv(records: &[SweepRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Internal(format!("csv: {e}"));
    w.write_record(["r", "s", "p", "check", "status", "detail"]).map_err(io)?;
    for rec in records {
        let row = [
            rec.r.to_string(),
            opt(rec.s),
            opt(rec.p),
            rec.check.to_string(),
            status(rec.status).into(),
            rec.detail.clone(),
        ];
        w.write_record(&row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Internal(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv of utf-8 fields"))
}

fn render_table(report: &SweepReport) -> String {
    let mut out = String::new();
    for rec in &report.records {
        writeln!(
            out,
            "{:>3} {:>4} {:>3} {:<20} {} {}",
            rec.r,
            opt(rec.s),
            opt(rec.p),
            rec.check.name(),
            status(rec.status),
            rec.detail
        )
        .unwrap();
    }
    out
}

pub fn sweep(
    rmax: usize,
    smax: Option<usize>,
    primes: &[usize],
    checks: &[String],
    format: Format,
    out: Option<&Path>,
    sequential: bool,
) -> Result<Output> {
    let primes: Vec<Prime> = primes.iter().map(|&q| Prime::new(q)).collect::<Result<_>>()?;
    let checks: Vec<Check> = checks.iter().map(|c| c.parse()).collect::<Result<_>>()?;
    let s_range = match smax {
        Some(s_max) => SRange::Absolute { s_max },
        None => SRange::Period,
    };
    let spec = SweepSpec::new(rmax, s_range, primes, checks)?;
    let execution = if sequential { Execution::Sequential } else { Execution::Parallel };
    let report = run_sweep_with(&spec, execution);
    let body = match format {
        Format::Json => pretty(&json!({ "spec": spec, "summary": report.summary, "records": report.records })),
        Format::Csv => render_csv(&report.records)?,
        Format::Table => render_table(&report),
    };
    for (check, s) in &report.summary {
        eprintln!("{check}: {} passed, {} failed", s.passed, s.failed);
        if let Some(first) = &s.first_failure {
            eprintln!("  first failure: {first}");
        }
    }
    let stdout = match out {
        Some(path) => {
            std::fs::write(path, body).map_err(|e| invalid(format!("cannot write {}: {e}", path.display())))?;
            String::new()
        }
        None => body,
    };
    Ok(Output { stdout, ok: report.all_passed() })
}

pub fn corr(
    r: Option<usize>,
    subset: Option<Vec<usize>>,
    eps: Option<Vec<i64>>,
    perm: Option<String>,
    json: bool,
) -> Result<Output> {
    let need_r = || r.ok_or_else(|| invalid("--r is required with --subset and --perm"));
    let (t, e, pi): (SubsetProfile, DeviationVector, Permutation) = if let Some(members) = subset {
        let t = SubsetProfile::new(need_r()?, members)?;
        (t.clone(), subset_to_eps(&t), subset_to_perm(&t))
    } else if let Some(entries) = eps {
        let e = validate_eps(entries)?;
        (eps_to_subset(&e), e.clone(), eps_to_perm(&e))
    } else if let Some(text) = perm {
        let pi = Permutation::parse_cycles(&text, need_r()?)?;
        let e = perm_to_eps(&pi)?;
        (eps_to_subset(&e), e, pi)
    } else {
        return Err(invalid("give one of --subset, --eps or --perm"));
    };
    if json {
        let value = json!({ "r": t.r(), "subset": t.members(), "epsilon": e, "pi": pi.format_cycles() });
        return Ok(Output::pass(pretty(&value)));
    }
    Ok(Output::pass(format!(
        "subset={{{}}}\nepsilon=[{}]\npi={}\n",
        list(t.members()),
        list(e.entries()),
        pi.format_cycles()
    )))
}
