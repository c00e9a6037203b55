//! Jordan partitions `lambda(r,s,p)` of `J_r (x) J_s` in characteristic `p`
//! and the matching Norman permutations.
//!
//! The main route reads everything off the delta profile:
//! `lambda_n = r + s - 2n + L(n) - R(n)` and `n^pi = n + 1 - L(n) + R(n)`,
//! with `pi` the product of reversals cut at `{i : delta_i = 1}`.
//! [`fast`] evaluates `pi` independently from closed-form identities.

pub mod fast;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::corr::{perm_to_eps, subset_to_perm, validate_eps, DeviationVector};
use crate::delta::{check_rs, delta_profile, DeltaProfile};
use crate::error::{invalid, Error, Result};
use crate::parith::Prime;
use crate::perm::Permutation;

pub use fast::{pi_fast_path, FastPath, Rule};

/// A weakly decreasing sequence of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(invalid("partition parts must be positive"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(invalid(format!("parts {parts:?} are not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    /// Sorts the parts into decreasing order first.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn sum(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Part -> multiplicity, largest part first.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut m: BTreeMap<usize, usize> = BTreeMap::new();
        for &x in &self.parts {
            *m.entry(x).or_default() += 1;
        }
        m.into_iter().rev().collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.parts.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", body.join(","))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    DeltaRoute,
    FastPath,
    Oracle,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::DeltaRoute => "delta-route",
            Method::FastPath => "fast-path",
            Method::Oracle => "oracle",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JordanResult {
    pub r: usize,
    pub s: usize,
    pub p: Prime,
    pub lambda: Partition,
    pub pi: Permutation,
    pub epsilon: DeviationVector,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<DeltaProfile>,
}

impl JordanResult {
    /// Completes a result from a partition, checking every invariant.
    pub fn from_lambda(r: usize, s: usize, p: Prime, lambda: Partition, method: Method) -> Result<Self> {
        check_rs(r, s)?;
        let pi = pi_from_lambda(&lambda, r, s)?;
        Self::assemble(r, s, p, lambda, pi, method, None)
    }

    /// Completes a result from a permutation, checking every invariant.
    pub fn from_pi(r: usize, s: usize, p: Prime, pi: Permutation, method: Method) -> Result<Self> {
        check_rs(r, s)?;
        let lambda = lambda_from_pi(&pi, s)?;
        Self::assemble(r, s, p, lambda, pi, method, None)
    }

    fn assemble(
        r: usize,
        s: usize,
        p: Prime,
        lambda: Partition,
        pi: Permutation,
        method: Method,
        profile: Option<DeltaProfile>,
    ) -> Result<Self> {
        let broken = |what: String| Error::Internal(format!("({r},{s},{p}) via {method}: {what}"));
        if lambda.len() != r || lambda.sum() != r * s {
            return Err(broken(format!("{lambda} is not a partition of {} into {r} parts", r * s)));
        }
        let epsilon = validate_eps(lambda.parts.iter().map(|&x| x as i64 - s as i64).collect())
            .map_err(|e| broken(e.to_string()))?;
        if !pi.is_involution_or_identity() {
            return Err(broken(format!("{pi} does not square to the identity")));
        }
        if pi_from_lambda(&lambda, r, s)? != pi {
            return Err(broken(format!("{lambda} and {pi} are inconsistent")));
        }
        Ok(JordanResult { r, s, p, lambda, pi, epsilon, method, profile })
    }
}

/// `n -> (r + 1 - n) + s - lambda_n`.
pub fn pi_from_lambda(lambda: &Partition, r: usize, s: usize) -> Result<Permutation> {
    if lambda.len() != r {
        return Err(invalid(format!("{lambda} has {} parts, expected {r}", lambda.len())));
    }
    let images: Option<Vec<usize>> =
        lambda.parts.iter().enumerate().map(|(idx, &part)| (r + s).checked_sub(idx + part)).collect();
    let images = images.ok_or_else(|| Error::Domain(format!("{lambda} violates the part bounds")))?;
    Permutation::from_images(images).map_err(|e| Error::Domain(format!("{lambda} gives no permutation: {e}")))
}

/// `lambda_n = (r + 1 - n) + s - n^pi`.
pub fn lambda_from_pi(pi: &Permutation, s: usize) -> Result<Partition> {
    let r = pi.degree();
    let parts = (1..=r).map(|n| r + 1 - n + s - pi.apply(n)).collect();
    Partition::new(parts).map_err(|e| Error::Domain(format!("{pi} gives no partition: {e}")))
}

/// `lambda(r,s,p)` by the delta route.
pub fn lambda_of(r: usize, s: usize, p: Prime) -> Result<Partition> {
    let profile = delta_profile(r, s, p)?;
    lambda_from_profile(&profile)
}

fn lambda_from_profile(d: &DeltaProfile) -> Result<Partition> {
    let parts = (1..=d.r).map(|n| d.r + d.s + d.l(n) - 2 * n - d.r_gap(n)).collect();
    Partition::new(parts).map_err(|e| Error::Internal(format!("delta route broke monotonicity: {e}")))
}

/// `pi(r,s,p)` as the reversal product cut at the set bits of the profile,
/// cross-checked against `n -> n + 1 - L(n) + R(n)`.
pub fn pi_of(r: usize, s: usize, p: Prime) -> Result<Permutation> {
    let profile = delta_profile(r, s, p)?;
    pi_from_profile(&profile)
}

fn pi_from_profile(d: &DeltaProfile) -> Result<Permutation> {
    let pi = subset_to_perm(&d.subset());
    if (1..=d.r).any(|n| pi.apply(n) != n + 1 + d.r_gap(n) - d.l(n)) {
        return Err(Error::Internal(format!("reversal form and gap form of pi({},{},{}) differ", d.r, d.s, d.p)));
    }
    Ok(pi)
}

pub fn deviation(r: usize, s: usize, p: Prime) -> Result<DeviationVector> {
    Ok(jordan(r, s, p)?.epsilon)
}

/// The full delta-route result.
pub fn jordan(r: usize, s: usize, p: Prime) -> Result<JordanResult> {
    let profile = delta_profile(r, s, p)?;
    let lambda = lambda_from_profile(&profile)?;
    let pi = pi_from_profile(&profile)?;
    let result = JordanResult::assemble(r, s, p, lambda, pi, Method::DeltaRoute, Some(profile))?;
    // The deviation vector must also be the image of the cut set.
    let from_subset = crate::corr::subset_to_eps(&result.profile.as_ref().expect("set above").subset());
    if from_subset != result.epsilon || perm_to_eps(&result.pi)? != result.epsilon {
        return Err(Error::Internal(format!("deviation vector of ({r},{s},{p}) disagrees with its cut set")));
    }
    Ok(result)
}
