//! Determinant valuations `D_n(r,s)` and the derived bits and gap functions.
//!
//! `D_n(r,s)` is the determinant of the `n x n` matrix with entries
//! `C(s+r-2n, s-n+i-j)`. It equals the product
//! `prod_{i<n} C(s+r-2n+i, s-n) / C(s-n+i, s-n)`, so its `p`-adic valuation
//! is a signed sum of carry counts and the integer itself is never formed
//! on the main path.

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::corr::SubsetProfile;
use crate::error::{invalid, Error, Result};
use crate::parith::{carries, Prime};

pub(crate) fn check_rs(r: usize, s: usize) -> Result<()> {
    if r == 0 || r > s {
        return Err(invalid(format!("need 1 <= r <= s, got r = {r}, s = {s}")));
    }
    Ok(())
}

/// `v_p(D_n(r,s))` for `1 <= n <= r <= s`.
pub fn dn_valuation(r: usize, s: usize, p: Prime, n: usize) -> Result<u32> {
    check_rs(r, s)?;
    if n == 0 || n > r {
        return Err(invalid(format!("need 1 <= n <= r, got n = {n}")));
    }
    let k = s - n;
    let mut total: i64 = 0;
    for i in 0..n {
        // C(s+r-2n+i, s-n) has complementary index r-n+i; C(s-n+i, s-n) has i.
        total += carries(k, r - n + i, p.get()) as i64;
        total -= carries(k, i, p.get()) as i64;
    }
    u32::try_from(total)
        .map_err(|_| Error::Internal(format!("negative valuation {total} for D_{n}({r},{s}) at p = {p}")))
}

fn binomial(n: usize, k: usize) -> BigUint {
    let k = k.min(n - k);
    let mut c = BigUint::one();
    for i in 0..k {
        c = c * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    c
}

/// Exact `D_n(r,s)` from the product formula. Slow; for cross-checks.
pub fn dn_exact(r: usize, s: usize, n: usize) -> Result<BigUint> {
    check_rs(r, s)?;
    if n > r {
        return Err(invalid(format!("need n <= r, got n = {n}")));
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..n {
        num *= binomial(s + r - 2 * n + i, s - n);
        den *= binomial(s - n + i, s - n);
    }
    let q = &num / &den;
    if &q * &den != num {
        return Err(Error::Internal(format!("D_{n}({r},{s}) is not an integer")));
    }
    Ok(q)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaProfile {
    pub r: usize,
    pub s: usize,
    pub p: Prime,
    /// `delta_0, ..., delta_r`.
    pub delta: Vec<u8>,
    /// `L(1), ..., L(r)`.
    #[serde(rename = "L")]
    pub left: Vec<usize>,
    /// `R(1), ..., R(r)`.
    #[serde(rename = "R")]
    pub right: Vec<usize>,
}

impl DeltaProfile {
    /// `L(n)` for `1 <= n <= r`.
    pub fn l(&self, n: usize) -> usize {
        self.left[n - 1]
    }

    pub fn r_gap(&self, n: usize) -> usize {
        self.right[n - 1]
    }

    /// `{i in [r-1] : delta_i = 1}`.
    pub fn subset(&self) -> SubsetProfile {
        let members = (1..self.r).filter(|&i| self.delta[i] == 1).collect();
        SubsetProfile::new(self.r, members).expect("members lie in [1, r-1]")
    }

    pub fn all_ones(&self) -> bool {
        self.delta.iter().all(|&d| d == 1)
    }
}

pub fn delta_profile(r: usize, s: usize, p: Prime) -> Result<DeltaProfile> {
    check_rs(r, s)?;
    let mut delta = Vec::with_capacity(r + 1);
    delta.push(1u8);
    for n in 1..=r {
        delta.push(u8::from(dn_valuation(r, s, p, n)? == 0));
    }
    if delta[r] != 1 {
        return Err(Error::Internal(format!("D_r({r},{s}) should be 1")));
    }
    let mut left = Vec::with_capacity(r);
    let mut last_set = 0;
    for n in 1..=r {
        left.push(n - last_set);
        if delta[n] == 1 {
            last_set = n;
        }
    }
    let mut right = vec![0; r];
    let mut next_set = r;
    for n in (1..=r).rev() {
        if delta[n] == 1 {
            next_set = n;
        }
        right[n - 1] = next_set - n;
    }
    Ok(DeltaProfile { r, s, p, delta, left, right })
}
