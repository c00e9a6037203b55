//! When is `lambda(r,s,p)` the standard partition `r+s+1-2n`?
//!
//! [`standard_triple`] answers with congruences alone; [`equivalence_report`]
//! evaluates six characterisations independently and insists they agree.

use serde::Serialize;

use crate::delta::{check_rs, delta_profile};
use crate::error::{invalid, Error, Result};
use crate::jordan::{lambda_of, pi_of, Partition};
use crate::parith::{mod_interval, Prime};

/// Quantities used by the `p` odd, `r > p` row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RowFour {
    pub a: usize,
    pub b: usize,
    pub h: usize,
    pub i: usize,
    pub j: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StandardnessReport {
    pub r: usize,
    pub s: usize,
    pub p: Prime,
    pub m: u32,
    /// 1-based row of the congruence table that applies, if any.
    pub matched_row: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quantities: Option<RowFour>,
    pub verdict: bool,
}

pub fn standard_triple(r: usize, s: usize, p: Prime) -> Result<StandardnessReport> {
    check_rs(r, s)?;
    let pv = p.get();
    let m = p.ceil_log(r);
    let report =
        |row: Option<u8>, quantities, verdict| StandardnessReport { r, s, p, m, matched_row: row, quantities, verdict };
    let spread = (s - r + 1) as i64;

    if r == 1 {
        return Ok(report(Some(1), None, true));
    }
    if r <= pv {
        let lhs = mod_interval(spread, pv)? as i64;
        return Ok(report(Some(2), None, lhs <= pv as i64 + 2 - 2 * r as i64));
    }
    if pv == 2 {
        if r == 3 {
            return Ok(report(Some(3), None, s % 4 == 2));
        }
        return Ok(report(None, None, false));
    }

    let low = p.pow(m - 1).ok_or_else(|| invalid("p^(m-1) overflows"))?;
    let high = p.pow(m).ok_or_else(|| invalid("p^m overflows"))?;
    let q = RowFour { a: r % low, b: s % low, h: (low - 1) / 2, i: r / low, j: mod_interval(spread, high)? / low };
    let near_h = |x: usize| x == q.h || x == q.h + 1;
    let verdict = near_h(q.a) && near_h(q.b) && 2 * q.i + q.j < pv;
    Ok(report(Some(4), Some(q), verdict))
}

/// `lambda_n = r + s + 1 - 2n` for every `n`.
pub fn standard_partition(lambda: &Partition, r: usize, s: usize) -> Result<bool> {
    if lambda.len() != r {
        return Err(invalid(format!("{lambda} has {} parts, expected {r}", lambda.len())));
    }
    Ok(lambda.parts().iter().enumerate().all(|(idx, &x)| x + 2 * (idx + 1) == r + s + 1))
}

/// Six characterisations of standardness, each computed on its own.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub r: usize,
    pub s: usize,
    pub p: Prime,
    pub standard_partition: bool,
    pub pi_identity: bool,
    pub standard_triple: bool,
    pub left_gaps_one: bool,
    pub right_gaps_zero: bool,
    pub delta_all_ones: bool,
    pub matched_row: Option<u8>,
}

impl EquivalenceReport {
    pub fn conditions(&self) -> [(&'static str, bool); 6] {
        [
            ("standard-partition", self.standard_partition),
            ("pi-identity", self.pi_identity),
            ("standard-triple", self.standard_triple),
            ("L-all-one", self.left_gaps_one),
            ("R-all-zero", self.right_gaps_zero),
            ("delta-all-one", self.delta_all_ones),
        ]
    }

    pub fn verdict(&self) -> bool {
        self.standard_partition
    }
}

/// Fails with [`Error::EquivalenceViolation`] unless all six conditions agree.
pub fn equivalence_report(r: usize, s: usize, p: Prime) -> Result<EquivalenceReport> {
    let triple = standard_triple(r, s, p)?;
    let profile = delta_profile(r, s, p)?;
    let report = EquivalenceReport {
        r,
        s,
        p,
        standard_partition: standard_partition(&lambda_of(r, s, p)?, r, s)?,
        pi_identity: pi_of(r, s, p)?.is_identity(),
        standard_triple: triple.verdict,
        left_gaps_one: profile.left.iter().all(|&l| l == 1),
        right_gaps_zero: profile.right.iter().all(|&g| g == 0),
        delta_all_ones: profile.all_ones(),
        matched_row: triple.matched_row,
    };
    let conditions = report.conditions();
    if conditions.iter().any(|&(_, v)| v != conditions[0].1) {
        let detail = conditions.iter().map(|(name, v)| format!("{name}={v}")).collect::<Vec<_>>().join(" ");
        return Err(Error::EquivalenceViolation { r, s, p: p.get(), detail });
    }
    Ok(report)
}
