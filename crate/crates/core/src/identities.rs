//! Closed-form relations between Norman permutations at different
//! parameters, each checked against independent evaluations of [`pi_of`].
//!
//! Every `check_*` function returns `Ok(false)` when its hypotheses do not
//! hold at the given cell, `Ok(true)` when they do and the relation holds,
//! and [`Error::IdentityViolation`] otherwise.

use serde::Serialize;

use crate::corr::reversal_cuts;
use crate::delta::check_rs;
use crate::error::{Error, Result};
use crate::jordan::{lambda_of, pi_of};
use crate::parith::{is_prime, Prime};
use crate::perm::Permutation;

fn violation(name: &str, r: usize, s: usize, p: Prime, got: &Permutation, want: &Permutation) -> Error {
    Error::IdentityViolation(format!("{name} at ({r},{s},{p}): got {got}, expected {want}"))
}

fn expect(name: &str, r: usize, s: usize, p: Prime, want: &Permutation) -> Result<bool> {
    let got = pi_of(r, s, p)?;
    if &got != want {
        return Err(violation(name, r, s, p, &got, want));
    }
    Ok(true)
}

fn rev(i: usize, j: usize, r: usize) -> Permutation {
    Permutation::rev(i, j, r).expect("interval inside [r]")
}

/// `s <= p <= r + s - 2` gives `pi = Rev(1, r + s - p)` and
/// `lambda = (p, ..., p, 2p-r-s-1, 2p-r-s-3, ..., s-r+1)`.
pub fn check_large_prime(r: usize, s: usize, p: Prime) -> Result<bool> {
    check_rs(r, s)?;
    let q = p.get();
    if !(s <= q && q + 2 <= r + s) {
        return Ok(false);
    }
    let k = r + s - q;
    let mut want: Vec<usize> = vec![q; k];
    want.extend((k + 1..=r).map(|n| r + s + 1 - 2 * n));
    let got = lambda_of(r, s, p)?;
    if got.parts() != want.as_slice() {
        return Err(Error::IdentityViolation(format!("large prime at ({r},{s},{p}): lambda {got}, expected {want:?}")));
    }
    expect("large prime", r, s, p, &rev(1, k, r))
}

/// `pi(r, s, p) = pi(r, s + k p^m, p)` for `r <= p^m`.
pub fn check_periodicity(r: usize, s: usize, p: Prime, k: usize) -> Result<bool> {
    check_rs(r, s)?;
    let q = p.covering_power(r);
    expect("periodicity", r, s + k * q, p, &pi_of(r, s, p)?)
}

/// `pi(r, s', p) = pi(r, s, p)^Rev(1, r)` for the least `s' >= r` with
/// `s + s' = 0 mod p^m`.
pub fn check_duality(r: usize, s: usize, p: Prime) -> Result<bool> {
    check_rs(r, s)?;
    let q = p.covering_power(r);
    let mut dual = (q - s % q) % q;
    while dual < r {
        dual += q;
    }
    let want = pi_of(r, s, p)?.conjugate(&rev(1, r, r))?;
    expect("duality", r, dual, p, &want)
}

/// For `s = s0 p^m + s1` with `1 <= s0 < p`, `1 <= s1 < r < p^m`:
/// `pi(r, s) = pi(s1, r) Rev(s1 + 1, r)` and
/// `pi(r, (s0+1) p^m - s1) = Rev(1, r - s1) pi(s1, r)^Rev(1, r)`.
pub fn check_truncation(r: usize, s0: usize, s1: usize, p: Prime, m: u32) -> Result<bool> {
    let Some(q) = p.pow(m) else { return Ok(false) };
    if !(1 <= s0 && s0 < p.get() && 1 <= s1 && s1 < r && r < q) {
        return Ok(false);
    }
    let inner = pi_of(s1, r, p)?.embed(r)?;
    expect("truncation", r, s0 * q + s1, p, &inner.compose(&rev(s1 + 1, r, r))?)?;
    let flipped = inner.conjugate(&rev(1, r, r))?;
    expect("dual truncation", r, (s0 + 1) * q - s1, p, &rev(1, r - s1, r).compose(&flipped)?)
}

/// Cut points of `pi(p^l r, p^l s, p)` are those of `pi(r, s, p)` times `p^l`.
pub fn check_p_multiple(r: usize, s: usize, p: Prime, l: u32) -> Result<bool> {
    check_rs(r, s)?;
    let Some(scale) = p.pow(l) else { return Ok(false) };
    let base = pi_of(r, s, p)?;
    let cuts = reversal_cuts(&base)
        .ok_or_else(|| Error::Internal(format!("pi({r},{s},{p}) is not a reversal product")))?
        .cuts();
    let scaled: Vec<usize> = cuts.iter().map(|c| c * scale).collect();
    expect("p-multiple", r * scale, s * scale, p, &Permutation::reversal_product(&scaled)?)
}

/// `n^pi = s + 1 - n (mod p^e)` where `p^e` is the `p`-part of `r`.
pub fn check_block_congruence(r: usize, s: usize, p: Prime) -> Result<bool> {
    check_rs(r, s)?;
    let b = p.pow(p.valuation(r)).expect("divides r");
    if b == 1 {
        return Ok(false);
    }
    let pi = pi_of(r, s, p)?;
    for n in 1..=r {
        if (pi.apply(n) + n) % b != (s + 1) % b {
            return Err(Error::IdentityViolation(format!(
                "block congruence at ({r},{s},{p}): {n} -> {} is not {s} + 1 - {n} mod {b}",
                pi.apply(n)
            )));
        }
    }
    Ok(true)
}

/// How many instances of each relation a suite checked.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct IdentityCounts {
    pub large_prime: usize,
    pub periodicity: usize,
    pub duality: usize,
    pub truncation: usize,
    pub p_multiple: usize,
    pub block_congruence: usize,
}

/// The relations that can be evaluated from a single cell `(r, s, p)`:
/// periodicity (one and two periods on), duality, block congruence, and
/// the large-prime form when it applies.
pub fn check_cell(r: usize, s: usize, p: Prime, counts: &mut IdentityCounts) -> Result<()> {
    counts.large_prime += usize::from(check_large_prime(r, s, p)?);
    for k in 1..=2 {
        counts.periodicity += usize::from(check_periodicity(r, s, p, k)?);
    }
    counts.duality += usize::from(check_duality(r, s, p)?);
    counts.block_congruence += usize::from(check_block_congruence(r, s, p)?);
    Ok(())
}

/// Every large-prime cell with `p <= p_max`.
pub fn large_prime_suite(p_max: usize, counts: &mut IdentityCounts) -> Result<()> {
    for q in (2..=p_max).filter(|&q| is_prime(q)) {
        let p = Prime::new(q)?;
        for s in 1..=q {
            for r in (1..=s).filter(|&r| r + s >= q + 2) {
                counts.large_prime += usize::from(check_large_prime(r, s, p)?);
            }
        }
    }
    Ok(())
}

/// Every admissible `(r, s0, s1)` for one `m`.
pub fn truncation_suite(p: Prime, m: u32, counts: &mut IdentityCounts) -> Result<()> {
    let q = p.pow(m).ok_or_else(|| Error::InvalidArgument(format!("{p}^{m} overflows")))?;
    for r in 2..q {
        for s0 in 1..p.get() {
            for s1 in 1..r {
                counts.truncation += usize::from(check_truncation(r, s0, s1, p, m)?);
            }
        }
    }
    Ok(())
}

/// Every `r <= s` with `p^l r s <= cap`.
pub fn p_multiple_suite(p: Prime, l: u32, cap: usize, counts: &mut IdentityCounts) -> Result<()> {
    let scale = p.pow(l).ok_or_else(|| Error::InvalidArgument(format!("{p}^{l} overflows")))?;
    for r in 1.. {
        if scale * r * r > cap {
            break;
        }
        for s in (r..).take_while(|&s| scale * r * s <= cap) {
            counts.p_multiple += usize::from(check_p_multiple(r, s, p, l)?);
        }
    }
    Ok(())
}
