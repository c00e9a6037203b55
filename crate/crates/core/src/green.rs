//! `V_r (x) V_s` as a sum of indecomposables `V_k`, read off `lambda(r,s,p)`.

use std::fmt;

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::jordan::{lambda_of, pi_of, Partition};
use crate::parith::{p_parts, Prime};
use crate::perm::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summand {
    pub dim: usize,
    pub mult: usize,
}

/// Summands in decreasing order of dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GreenDecomposition {
    pub summands: Vec<Summand>,
}

impl GreenDecomposition {
    pub fn from_partition(lambda: &Partition) -> Self {
        let summands = lambda.multiplicities().into_iter().map(|(dim, mult)| Summand { dim, mult }).collect();
        GreenDecomposition { summands }
    }

    /// From `(dim, mult)` pairs in any order. `V_0` is the zero module, so
    /// zero dimensions and multiplicities are dropped; repeats are merged.
    pub fn from_terms(terms: &[(usize, usize)]) -> Self {
        let parts = terms.iter().filter(|t| t.0 > 0).flat_map(|&(d, m)| std::iter::repeat_n(d, m)).collect();
        Self::from_partition(&Partition::from_unsorted(parts).expect("dimensions are positive"))
    }

    pub fn dimension(&self) -> usize {
        self.summands.iter().map(|t| t.dim * t.mult).sum()
    }
}

impl fmt::Display for GreenDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .summands
            .iter()
            .map(|t| if t.mult == 1 { format!("V{}", t.dim) } else { format!("{}V{}", t.mult, t.dim) })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

pub fn decompose(r: usize, s: usize, p: Prime) -> Result<GreenDecomposition> {
    let g = GreenDecomposition::from_partition(&lambda_of(r, s, p)?);
    if g.dimension() != r * s {
        return Err(Error::Internal(format!("V{r} (x) V{s} has dimension {}", g.dimension())));
    }
    Ok(g)
}

/// One checked instance of a tensor or permutation identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Instance {
    pub identity: &'static str,
    pub r: usize,
    pub s: usize,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GreenReport {
    pub p: Prime,
    pub e_max: u32,
    pub checked: usize,
    pub instances: Vec<Instance>,
}

struct Checker {
    p: Prime,
    instances: Vec<Instance>,
}

impl Checker {
    fn tensor(&mut self, identity: &'static str, r: usize, s: usize, expected: &[(usize, usize)]) -> Result<()> {
        let (lo, hi) = (r.min(s), r.max(s));
        let got = decompose(lo, hi, self.p)?;
        let want = GreenDecomposition::from_terms(expected);
        if got != want {
            return Err(Error::IdentityViolation(format!(
                "{identity}: V{r} (x) V{s} over p = {} is {got}, expected {want}",
                self.p
            )));
        }
        self.instances.push(Instance { identity, r, s, value: got.to_string() });
        Ok(())
    }

    fn perm(&mut self, identity: &'static str, r: usize, s: usize, cuts: &[usize]) -> Result<()> {
        let got = pi_of(r, s, self.p)?;
        let want = Permutation::reversal_product(cuts)?;
        if got != want {
            return Err(Error::IdentityViolation(format!(
                "{identity}: pi({r},{s},{}) is {got}, expected {want}",
                self.p
            )));
        }
        self.instances.push(Instance { identity, r, s, value: got.format_cycles() });
        Ok(())
    }
}

/// Checks, for `b = p^e` with `e <= e_max` and every `p^m <= p^e_max`:
/// `V_b (x) V_1 = V_b`; `V_{b+1} (x) V_b = V_{2b} + (b-1)V_b`;
/// `V_{b+1} (x) V_r = V_{r+b} + (b-1)V_r + V_{r-b}` when `r` has `p`-part `b`;
/// and for `1 < b < r <= p^m` the values of `pi(r, p^m + c, p)` for
/// `c` in `{b, 2b, b + 1}` together with the decomposition of `V_r (x) V_{p^m+b+1}`.
pub fn check_green_identities(p: Prime, e_max: u32) -> Result<GreenReport> {
    if e_max == 0 {
        return Err(invalid("e_max must be at least 1"));
    }
    let top = p.pow(e_max).ok_or_else(|| invalid(format!("{p}^{e_max} overflows")))?;
    let mut c = Checker { p, instances: Vec::new() };

    for e in 0..=e_max {
        let b = p.pow(e).expect("below top");
        c.tensor("unit", b, 1, &[(b, 1)])?;
        if b > 1 {
            c.tensor("successor", b + 1, b, &[(2 * b, 1), (b, b - 1)])?;
        }
    }

    for r in 2..=top {
        let b = p_parts(r, p)?.b;
        if b == 1 {
            continue;
        }
        c.tensor("p-part", b + 1, r, &[(r + b, 1), (r, b - 1), (r - b, 1)])?;
        if b == r {
            continue;
        }
        for m in p.ceil_log(r)..=e_max {
            let q = p.pow(m).expect("below top");
            c.perm("rev-b", r, q + b, &[0, b, r])?;
            if 2 * b < r {
                c.perm("rev-2b", r, q + 2 * b, &[0, b, 2 * b, r])?;
            }
            c.perm("rev-b-plus-one", r, q + b + 1, &[0, 1, b, b + 1, r])?;
            c.tensor("shifted", r, q + b + 1, &[(q + r + b, 1), (q + r, b - 1), (q + r - b, 1), (q, r - b - 1)])?;
        }
    }

    Ok(GreenReport { p, e_max, checked: c.instances.len(), instances: c.instances })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::oracle_lambda;

    fn p(n: usize) -> Prime {
        Prime::new(n).unwrap()
    }

    fn show(r: usize, s: usize, q: usize) -> String {
        decompose(r, s, p(q)).unwrap().to_string()
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(show(2, 3, 3), "2V3");
        assert_eq!(show(3, 4, 3), "V6 + 2V3");
        assert_eq!(show(4, 6, 3), "V9 + 2V6 + V3");
        assert_eq!(show(6, 13, 3), "V18 + 2V15 + V12 + 2V9");
        assert_eq!(show(5, 12, 2), "V16 + 3V12 + V8");
        assert_eq!(show(1, 9, 3), "V9");
        let json = serde_json::to_string(&decompose(2, 3, p(3)).unwrap()).unwrap();
        assert_eq!(json, r#"{"summands":[{"dim":3,"mult":2}]}"#);
    }

    #[test]
    fn terms_merge() {
        let g = GreenDecomposition::from_terms(&[(3, 1), (5, 0), (3, 2), (0, 4), (7, 1)]);
        assert_eq!(g.to_string(), "V7 + 3V3");
        assert_eq!(g.dimension(), 16);
    }

    #[test]
    fn identities_hold_up_to_81() {
        for (q, e_max) in [(2, 6), (3, 4), (5, 2)] {
            let report = check_green_identities(p(q), e_max).unwrap();
            for name in ["unit", "successor", "p-part", "rev-b", "rev-b-plus-one", "shifted"] {
                assert!(report.instances.iter().any(|i| i.identity == name), "{name} never checked for p = {q}");
            }
        }
        assert!(check_green_identities(p(3), 0).is_err());
    }

    #[test]
    fn decompose_agrees_with_oracle() {
        for q in [2, 3, 5] {
            for s in 1..=14 {
                for r in 1..=s {
                    let oracle = GreenDecomposition::from_partition(&oracle_lambda(r, s, p(q)).unwrap());
                    assert_eq!(decompose(r, s, p(q)).unwrap(), oracle);
                }
            }
        }
    }
}
