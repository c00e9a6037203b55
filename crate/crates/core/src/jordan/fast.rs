//! Closed-form evaluation of `pi(r,s,p)` for parameters covered by known
//! identities. Nothing here touches the delta profile, so agreement with
//! [`super::pi_of`] is a genuine cross-check.
//!
//! Throughout, `q = p^m` is the least power of `p` with `r <= q` and
//! `res = s mod q`; `pi(r,s,p)` only depends on `res`.

use serde::Serialize;

use crate::corr::reversal_cuts;
use crate::delta::check_rs;
use crate::error::Result;
use crate::parith::{p_parts, Prime};
use crate::perm::Permutation;

/// Which identity produced a fast-path value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case", tag = "rule", content = "case")]
pub enum Rule {
    /// `r = 1`.
    Trivial,
    /// `r = 2`: `(1,2)` iff `p | s`.
    DegreeTwo,
    /// `r = 3`, by `s` modulo `p` (odd `p`) or `4` (`p = 2`).
    DegreeThree,
    /// `s mod q` in `{0, 1, 2, 3}`.
    SmallResidue(u8),
    /// `s mod q` in `{b, 2b, b + 1}` where `b` is the `p`-part of `r`.
    PPartBlocks(u8),
    /// `s <= p <= r + s - 2`: `Rev(1, r + s - p)`.
    LargePrime,
    /// `1 <= s mod q < r`: `pi(s1, r, p) Rev(s1 + 1, r)`.
    Truncation,
    /// `q - r < s mod q`: the dual of [`Rule::Truncation`].
    DualTruncation,
    /// `p | r` and `p | s`: cut points of `pi(r/p, s/p, p)` scaled by `p`.
    PMultiple,
    /// `pi(r, s', p)` conjugated by `Rev(1, r)` for `s + s' = 0 mod q`.
    Duality,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FastPath {
    pub pi: Permutation,
    pub rule: Rule,
}

/// `pi(r,s,p)` when one of the closed-form identities applies; the first
/// applicable identity in a fixed order wins.
pub fn pi_fast_path(r: usize, s: usize, p: Prime) -> Result<Option<FastPath>> {
    check_rs(r, s)?;
    Ok(evaluate(r, s, p, true))
}

fn rev(i: usize, j: usize, r: usize) -> Permutation {
    Permutation::rev(i, j, r).expect("interval inside [r]")
}

fn reversals(cuts: &[usize]) -> Permutation {
    Permutation::reversal_product(cuts).expect("cuts increase strictly from 0")
}

fn found(pi: Permutation, rule: Rule) -> Option<FastPath> {
    Some(FastPath { pi, rule })
}

/// `pi(3, s, p)`.
fn degree_three(s: usize, p: Prime) -> Permutation {
    let modulus = if p.get() == 2 { 4 } else { p.get() };
    let text = match s % modulus {
        0 => "(1,3)",
        1 => "(2,3)",
        x if x == modulus - 1 => "(1,2)",
        _ => "()",
    };
    Permutation::parse_cycles(text, 3).expect("literal cycle text")
}

fn evaluate(r: usize, s: usize, p: Prime, allow_duality: bool) -> Option<FastPath> {
    let pv = p.get();
    if r == 1 {
        return found(Permutation::identity(1), Rule::Trivial);
    }
    if r == 2 {
        let pi = if s.is_multiple_of(pv) { rev(1, 2, 2) } else { Permutation::identity(2) };
        return found(pi, Rule::DegreeTwo);
    }
    if r == 3 {
        return found(degree_three(s, p), Rule::DegreeThree);
    }

    let q = p.covering_power(r);
    let res = s % q;

    match res {
        0 => return found(rev(1, r, r), Rule::SmallResidue(0)),
        1 => return found(rev(2, r, r), Rule::SmallResidue(1)),
        2 => {
            let tail = rev(3, r, r);
            let pi = if r.is_multiple_of(pv) { rev(1, 2, r).then(&tail) } else { tail };
            return found(pi, Rule::SmallResidue(2));
        }
        _ => {}
    }

    let b = p_parts(r, p).expect("r >= 1").b;
    if 1 < b && b < r {
        if res == b {
            return found(reversals(&[0, b, r]), Rule::PPartBlocks(1));
        }
        if 2 * b < r && res == 2 * b {
            return found(reversals(&[0, b, 2 * b, r]), Rule::PPartBlocks(2));
        }
        if res == b + 1 {
            // Rev(2,b) Rev(b+2,r) fixes 1 and b + 1.
            return found(reversals(&[0, 1, b, b + 1, r]), Rule::PPartBlocks(3));
        }
    }

    if s <= pv && pv + 2 <= r + s {
        return found(rev(1, r + s - pv, r), Rule::LargePrime);
    }

    if r < q && res < r {
        let s1 = res;
        if let Some(inner) = evaluate(s1, r, p, allow_duality) {
            let head = inner.pi.embed(r).expect("s1 < r");
            return found(head.then(&rev(s1 + 1, r, r)), Rule::Truncation);
        }
    }

    if r < q && res > q - r {
        let s1 = q - res;
        if let Some(inner) = evaluate(s1, r, p, allow_duality) {
            let flip = rev(1, r, r);
            let tail = inner.pi.embed(r).expect("s1 < r").conjugate(&flip).expect("same degree");
            return found(rev(1, r - s1, r).then(&tail), Rule::DualTruncation);
        }
    }

    if res == 3 {
        return found(degree_three(r, p).embed(r).expect("r > 3").then(&rev(4, r, r)), Rule::SmallResidue(3));
    }

    if r.is_multiple_of(pv) && s.is_multiple_of(pv) {
        if let Some(inner) = evaluate(r / pv, s / pv, p, allow_duality) {
            let cuts = reversal_cuts(&inner.pi).expect("fast-path values are reversal products").cuts();
            let scaled: Vec<usize> = cuts.iter().map(|c| c * pv).collect();
            return found(reversals(&scaled), Rule::PMultiple);
        }
    }

    if allow_duality {
        let mut dual = (q - res) % q;
        while dual < r {
            dual += q;
        }
        if let Some(inner) = evaluate(r, dual, p, false) {
            let pi = inner.pi.conjugate(&rev(1, r, r)).expect("same degree");
            return found(pi, Rule::Duality);
        }
    }

    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::pi_of;

    fn p(n: usize) -> Prime {
        Prime::new(n).unwrap()
    }

    fn fast(r: usize, s: usize, q: usize) -> FastPath {
        pi_fast_path(r, s, p(q)).unwrap().expect("fast path should fire")
    }

    #[test]
    fn documented_examples() {
        let f = fast(6, 9, 3);
        assert_eq!((f.pi, f.rule), (Permutation::rev(1, 6, 6).unwrap(), Rule::SmallResidue(0)));

        // pi(3,5,3) = (1,2) since 5 = -1 mod 3
        let f = fast(5, 12, 3);
        assert_eq!((f.pi.format_cycles().as_str(), f.rule), ("(1,2)(4,5)", Rule::Truncation));

        let f = fast(6, 12, 3);
        assert_eq!((f.pi.format_cycles().as_str(), f.rule), ("(1,3)(4,6)", Rule::PPartBlocks(1)));

        let f = fast(6, 11, 3);
        assert_eq!((f.pi.format_cycles().as_str(), f.rule), ("(1,2)(3,6)(4,5)", Rule::SmallResidue(2)));
    }

    #[test]
    fn agrees_with_delta_route() {
        let mut fired = 0;
        let mut total = 0;
        for q in [2, 3, 5, 7] {
            for s in 1..=40 {
                for r in 1..=s {
                    total += 1;
                    if let Some(f) = pi_fast_path(r, s, p(q)).unwrap() {
                        fired += 1;
                        assert_eq!(f.pi, pi_of(r, s, p(q)).unwrap(), "({r},{s},{q}) via {:?}", f.rule);
                    }
                }
            }
        }
        assert!(fired * 2 > total, "fast path fired on only {fired} of {total} cells");
    }
}
