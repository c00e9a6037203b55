//! The correspondence between subsets `T` of `[r-1]`, deviation vectors
//! and products of reversals of consecutive intervals.
//!
//! A subset `T = {t_1 < ... < t_k}` cuts `[r]` into intervals
//! `[t_i + 1, t_{i+1}]` (with `t_0 = 0`, `t_{k+1} = r`). The matching
//! permutation reverses each interval in place and the matching deviation
//! vector is constant on each interval with value `r - t_i - t_{i+1}`.

use serde::Serialize;

use crate::error::{invalid, DeviationViolation, Error, Result};
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SubsetProfile {
    r: usize,
    members: Vec<usize>,
}

impl SubsetProfile {
    pub fn new(r: usize, mut members: Vec<usize>) -> Result<Self> {
        if r == 0 {
            return Err(invalid("r must be positive"));
        }
        members.sort_unstable();
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(invalid("repeated member"));
        }
        if let Some(&bad) = members.iter().find(|&&t| t == 0 || t >= r) {
            return Err(invalid(format!("member {bad} outside [1,{}]", r - 1)));
        }
        Ok(SubsetProfile { r, members })
    }

    /// The subset whose bits are set in `mask` (bit `k` is member `k + 1`).
    pub fn from_mask(r: usize, mask: u64) -> Result<Self> {
        if r == 0 || r > 64 || mask >> (r - 1) != 0 {
            return Err(invalid(format!("mask {mask:#b} does not describe a subset of [{}]", r.saturating_sub(1))));
        }
        let members = (1..r).filter(|t| mask >> (t - 1) & 1 == 1).collect();
        Ok(SubsetProfile { r, members })
    }

    pub fn full(r: usize) -> Result<Self> {
        Self::new(r, (1..r).collect())
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// `0, t_1, ..., t_k, r`.
    pub fn cuts(&self) -> Vec<usize> {
        let mut c = Vec::with_capacity(self.members.len() + 2);
        c.push(0);
        c.extend_from_slice(&self.members);
        c.push(self.r);
        c
    }

    /// The intervals `[t_i + 1, t_{i+1}]`.
    pub fn intervals(&self) -> Vec<(usize, usize)> {
        self.cuts().windows(2).map(|w| (w[0] + 1, w[1])).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct DeviationVector {
    entries: Vec<i64>,
}

impl DeviationVector {
    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn r(&self) -> usize {
        self.entries.len()
    }
}

/// Checks monotonicity, then `eps_i - eps_j != j - i`, then `1 - n <= eps_n <= r - n`.
pub fn validate_eps(entries: Vec<i64>) -> Result<DeviationVector> {
    let r = entries.len();
    if r == 0 {
        return Err(Error::Deviation(DeviationViolation::Empty));
    }
    if let Some(i) = entries.windows(2).position(|w| w[0] < w[1]) {
        return Err(Error::Deviation(DeviationViolation::NotDecreasing { i: i + 1 }));
    }
    for i in 0..r {
        for j in i + 1..r {
            if entries[i] - entries[j] == (j - i) as i64 {
                return Err(Error::Deviation(DeviationViolation::Collision { i: i + 1, j: j + 1 }));
            }
        }
    }
    for (idx, &value) in entries.iter().enumerate() {
        let n = idx as i64 + 1;
        if value < 1 - n || value > r as i64 - n {
            return Err(Error::Deviation(DeviationViolation::OutOfRange { n: idx + 1, value }));
        }
    }
    Ok(DeviationVector { entries })
}

pub fn subset_to_perm(t: &SubsetProfile) -> Permutation {
    Permutation::reversal_product(&t.cuts()).expect("subset cuts increase strictly")
}

pub fn subset_to_eps(t: &SubsetProfile) -> DeviationVector {
    let r = t.r as i64;
    let mut entries = Vec::with_capacity(t.r);
    for w in t.cuts().windows(2) {
        let value = r - w[0] as i64 - w[1] as i64;
        entries.extend(std::iter::repeat_n(value, w[1] - w[0]));
    }
    DeviationVector { entries }
}

/// `n -> r + 1 - n - eps_n`.
pub fn eps_to_perm(eps: &DeviationVector) -> Permutation {
    let r = eps.r() as i64;
    let images = eps.entries.iter().enumerate().map(|(idx, &e)| (r - idx as i64 - e) as usize).collect();
    Permutation::from_images_unchecked(images)
}

/// Inverse of [`eps_to_perm`]; fails when `pi` is not a product of
/// reversals of consecutive intervals.
pub fn perm_to_eps(pi: &Permutation) -> Result<DeviationVector> {
    let r = pi.degree() as i64;
    let entries = (1..=pi.degree()).map(|n| r + 1 - n as i64 - pi.apply(n) as i64).collect();
    validate_eps(entries).map_err(|e| Error::Domain(format!("{pi} is not a reversal product ({e})")))
}

/// Strict descents of `eps`.
pub fn eps_to_subset(eps: &DeviationVector) -> SubsetProfile {
    let members = (1..eps.r()).filter(|&t| eps.entries[t - 1] > eps.entries[t]).collect();
    SubsetProfile { r: eps.r(), members }
}

/// Reads off the cut set of a reversal product in one left-to-right scan,
/// or `None` if `pi` does not reverse consecutive intervals in place.
pub fn reversal_cuts(pi: &Permutation) -> Option<SubsetProfile> {
    let r = pi.degree();
    let mut members = Vec::new();
    let mut start = 1;
    while start <= r {
        let end = pi.apply(start);
        if end < start {
            return None;
        }
        if (start..=end).any(|n| pi.apply(n) != start + end - n) {
            return None;
        }
        if end < r {
            members.push(end);
        }
        start = end + 1;
    }
    Some(SubsetProfile { r, members })
}

/// Round-trips every subset of `[r-1]` through the three bijections and
/// their inverses; returns the number of subsets checked.
pub fn check_bijections(r: usize) -> Result<usize> {
    if r == 0 || r > 30 {
        return Err(invalid(format!("bijection sweep needs 1 <= r <= 30, got {r}")));
    }
    let broken =
        |t: &SubsetProfile, what: &str| Error::Internal(format!("subset {:?} of [{}]: {what}", t.members, r - 1));
    let mut perms = std::collections::HashSet::new();
    for mask in 0..1u64 << (r - 1) {
        let t = SubsetProfile::from_mask(r, mask)?;
        let e = validate_eps(subset_to_eps(&t).entries).map_err(|e| broken(&t, &e.to_string()))?;
        let pi = subset_to_perm(&t);
        if eps_to_subset(&e) != t {
            return Err(broken(&t, "eps does not return to T"));
        }
        if eps_to_perm(&e) != pi || perm_to_eps(&pi)? != e {
            return Err(broken(&t, "eps and pi disagree"));
        }
        if reversal_cuts(&pi).as_ref() != Some(&t) {
            return Err(broken(&t, "cut detection failed"));
        }
        if !pi.is_involution_or_identity() {
            return Err(broken(&t, "pi is not an involution"));
        }
        perms.insert(pi);
    }
    if perms.len() != 1 << (r - 1) {
        return Err(Error::Internal(format!("only {} distinct permutations for r = {r}", perms.len())));
    }
    Ok(perms.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eps(v: &[i64]) -> DeviationVector {
        validate_eps(v.to_vec()).unwrap()
    }

    fn subset(r: usize, m: &[usize]) -> SubsetProfile {
        SubsetProfile::new(r, m.to_vec()).unwrap()
    }

    #[test]
    fn validate_examples() {
        eps(&[0, 0, 0]);
        eps(&[2, 0, -2]);
        assert_eq!(validate_eps(vec![1, 0, -1]), Err(Error::Deviation(DeviationViolation::Collision { i: 1, j: 2 })));
        assert_eq!(validate_eps(vec![0, 1, 0]), Err(Error::Deviation(DeviationViolation::NotDecreasing { i: 1 })));
        assert_eq!(
            validate_eps(vec![3, 3, 3]),
            Err(Error::Deviation(DeviationViolation::OutOfRange { n: 1, value: 3 }))
        );
        assert_eq!(validate_eps(vec![]), Err(Error::Deviation(DeviationViolation::Empty)));
    }

    #[test]
    fn subset_examples() {
        assert_eq!(subset_to_perm(&subset(3, &[])).format_cycles(), "(1,3)");
        for r in 1..8 {
            assert!(subset_to_perm(&SubsetProfile::full(r).unwrap()).is_identity());
        }
        assert_eq!(subset_to_perm(&subset(4, &[2])).format_cycles(), "(1,2)(3,4)");

        assert_eq!(subset_to_eps(&subset(4, &[2])).entries(), &[2, 2, -2, -2]);
        assert_eq!(subset_to_eps(&subset(3, &[1, 2])).entries(), &[2, 0, -2]);
        assert_eq!(subset_to_eps(&subset(3, &[])).entries(), &[0, 0, 0]);
    }

    #[test]
    fn eps_examples() {
        assert_eq!(eps_to_perm(&eps(&[0, 0, 0])).format_cycles(), "(1,3)");
        assert!(eps_to_perm(&eps(&[2, 0, -2])).is_identity());
        assert_eq!(eps_to_perm(&eps(&[2, 2, -2, -2])).format_cycles(), "(1,2)(3,4)");

        assert_eq!(perm_to_eps(&Permutation::identity(3)).unwrap().entries(), &[2, 0, -2]);
        let t13 = Permutation::parse_cycles("(1,3)", 3).unwrap();
        assert_eq!(perm_to_eps(&t13).unwrap().entries(), &[0, 0, 0]);
        let three_cycle = Permutation::parse_cycles("(1,2,3)", 3).unwrap();
        assert!(matches!(perm_to_eps(&three_cycle), Err(Error::Domain(_))));

        assert!(eps_to_subset(&eps(&[0, 0, 0])).members().is_empty());
        assert_eq!(eps_to_subset(&eps(&[2, 0, -2])).members(), &[1, 2]);
        assert_eq!(eps_to_subset(&eps(&[2, 2, -2, -2])).members(), &[2]);
    }

    #[test]
    fn reversal_cuts_detects_membership() {
        assert_eq!(reversal_cuts(&Permutation::identity(4)).unwrap(), SubsetProfile::full(4).unwrap());
        let p = Permutation::parse_cycles("(1,2)(3,6)(4,5)", 6).unwrap();
        assert_eq!(reversal_cuts(&p).unwrap().members(), &[2]);
        assert!(reversal_cuts(&Permutation::parse_cycles("(1,3)", 4).unwrap()).is_some());
        assert!(reversal_cuts(&Permutation::parse_cycles("(1,4)", 4).unwrap()).is_none());
        assert!(reversal_cuts(&Permutation::parse_cycles("(1,2,3)", 3).unwrap()).is_none());
    }

    #[test]
    fn bijection_sweep() {
        for r in 1..=12 {
            assert_eq!(check_bijections(r).unwrap(), 1 << (r - 1));
        }
        assert!(check_bijections(0).is_err());
    }

    #[test]
    fn triangle_of_bijections() {
        for r in 1..=12usize {
            let mut perms = std::collections::HashSet::new();
            for mask in 0..1u64 << (r - 1) {
                let t = SubsetProfile::from_mask(r, mask).unwrap();
                let e = subset_to_eps(&t);
                let e = validate_eps(e.entries).expect("subset_to_eps lands in E");
                let pi = subset_to_perm(&t);
                assert_eq!(eps_to_subset(&e), t);
                assert_eq!(eps_to_perm(&e), pi);
                assert_eq!(perm_to_eps(&pi).unwrap(), e);
                assert_eq!(reversal_cuts(&pi).as_ref(), Some(&t));
                assert!(pi.then(&pi).is_identity());
                assert_eq!(pi.is_identity(), t.members().len() == r - 1);
                let standard = e.entries().iter().enumerate().all(|(i, &x)| x == r as i64 - 1 - 2 * i as i64);
                assert_eq!(eps_to_perm(&e).is_identity(), standard);
                for w in t.intervals().windows(2) {
                    assert!(e.entries()[w[0].0 - 1] >= e.entries()[w[1].0 - 1] + 2);
                }
                perms.insert(pi);
            }
            assert_eq!(perms.len(), 1 << (r - 1));
        }
    }
}
