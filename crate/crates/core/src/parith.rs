//! Exact p-adic and modular arithmetic on machine integers.

use serde::Serialize;

use crate::error::{invalid, Result};

/// A validated prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Prime(usize);

impl Prime {
    pub fn new(p: usize) -> Result<Self> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(invalid(format!("{p} is not prime")))
        }
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0
    }

    /// `p^e`, or `None` on overflow.
    pub fn pow(self, e: u32) -> Option<usize> {
        self.0.checked_pow(e)
    }

    /// Smallest `m >= 0` with `r <= p^m`.
    pub fn ceil_log(self, r: usize) -> u32 {
        let mut m = 0;
        let mut q = 1usize;
        while q < r {
            q = q.saturating_mul(self.0);
            m += 1;
        }
        m
    }

    /// The least `p`-power `p^m` with `r <= p^m`.
    pub fn covering_power(self, r: usize) -> usize {
        let mut q = 1usize;
        while q < r {
            q = q.saturating_mul(self.0);
        }
        q
    }

    /// Exponent of `p` in `n` (`n > 0`).
    pub fn valuation(self, mut n: usize) -> u32 {
        debug_assert!(n > 0);
        let mut e = 0;
        while n.is_multiple_of(self.0) {
            n /= self.0;
            e += 1;
        }
        e
    }
}

impl std::fmt::Display for Prime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Deterministic trial division.
pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// The representative of `n` modulo `modulus` in `[0, modulus - 1]`.
pub fn mod_interval(n: i64, modulus: usize) -> Result<usize> {
    if modulus == 0 {
        return Err(invalid("modulus must be positive"));
    }
    Ok(n.rem_euclid(modulus as i64) as usize)
}

/// `v_p(C(n, k))`: the number of carries when adding `k` and `n - k` in base `p`.
pub fn binom_valuation(n: usize, k: usize, p: Prime) -> Result<u32> {
    if k > n {
        return Err(invalid(format!("binomial C({n},{k}) needs k <= n")));
    }
    Ok(carries(k, n - k, p.get()))
}

#[inline]
pub(crate) fn carries(mut x: usize, mut y: usize, p: usize) -> u32 {
    let mut carry = 0;
    let mut count = 0;
    while x > 0 || y > 0 || carry > 0 {
        let digit = x % p + y % p + carry;
        carry = usize::from(digit >= p);
        count += carry as u32;
        x /= p;
        y /= p;
    }
    count
}

/// `r = a * b` with `b = p^e` the `p`-part and `a` the `p'`-part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PPart {
    pub r: usize,
    pub a: usize,
    pub b: usize,
    pub e: u32,
}

pub fn p_parts(r: usize, p: Prime) -> Result<PPart> {
    if r == 0 {
        return Err(invalid("p_parts needs r >= 1"));
    }
    let e = p.valuation(r);
    let b = p.get().pow(e);
    Ok(PPart { r, a: r / b, b, e })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use proptest::prelude::*;

    fn p(n: usize) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn rejects_composites() {
        for n in [0, 1, 4, 9, 15, 91, 561] {
            assert!(Prime::new(n).is_err(), "{n}");
        }
        for n in [2, 3, 5, 7, 11, 61, 97] {
            assert!(Prime::new(n).is_ok(), "{n}");
        }
    }

    #[test]
    fn mod_interval_examples() {
        assert_eq!(mod_interval(7, 5).unwrap(), 2);
        assert_eq!(mod_interval(-1, 4).unwrap(), 3);
        assert_eq!(mod_interval(12, 9).unwrap(), 3);
        assert!(mod_interval(3, 0).is_err());
    }

    #[test]
    fn binom_valuation_examples() {
        assert_eq!(binom_valuation(2, 1, p(2)).unwrap(), 1);
        assert_eq!(binom_valuation(3, 2, p(3)).unwrap(), 1);
        assert_eq!(binom_valuation(6, 3, p(3)).unwrap(), 0);
        assert!(binom_valuation(2, 3, p(2)).is_err());
    }

    #[test]
    fn p_parts_examples() {
        assert_eq!(p_parts(6, p(3)).unwrap(), PPart { r: 6, a: 2, b: 3, e: 1 });
        assert_eq!(p_parts(12, p(2)).unwrap(), PPart { r: 12, a: 3, b: 4, e: 2 });
        assert_eq!(p_parts(5, p(3)).unwrap(), PPart { r: 5, a: 5, b: 1, e: 0 });
    }

    #[test]
    fn ceil_log() {
        assert_eq!(p(3).ceil_log(1), 0);
        assert_eq!(p(3).ceil_log(3), 1);
        assert_eq!(p(3).ceil_log(4), 2);
        assert_eq!(p(2).ceil_log(9), 4);
        assert_eq!(p(2).covering_power(5), 8);
    }

    fn big_valuation(c: &BigUint, p: usize) -> u32 {
        let bp = BigUint::from(p);
        let zero = BigUint::from(0u32);
        let mut c = c.clone();
        let mut v = 0;
        while &c % &bp == zero {
            c /= &bp;
            v += 1;
        }
        v
    }

    #[test]
    fn kummer_agrees_with_bigint() {
        // Pascal rows, exact.
        let mut row = vec![BigUint::from(1u32)];
        for n in 0..=200usize {
            for (k, c) in row.iter().enumerate() {
                for q in [2, 3, 5, 7] {
                    assert_eq!(binom_valuation(n, k, p(q)).unwrap(), big_valuation(c, q), "C({n},{k}) p={q}");
                }
            }
            let mut next = Vec::with_capacity(row.len() + 1);
            next.push(BigUint::from(1u32));
            for w in row.windows(2) {
                next.push(&w[0] + &w[1]);
            }
            next.push(BigUint::from(1u32));
            row = next;
        }
    }

    proptest! {
        #[test]
        fn mod_interval_is_floor_remainder(n in -10_000i64..10_000, l in 1usize..500) {
            let m = mod_interval(n, l).unwrap();
            prop_assert!(m < l);
            prop_assert_eq!(m as i64 + l as i64 * n.div_euclid(l as i64), n);
        }

        #[test]
        fn p_parts_round_trip(r in 1usize..100_000, idx in 0usize..5) {
            let q = p([2, 3, 5, 7, 11][idx]);
            let pp = p_parts(r, q).unwrap();
            prop_assert_eq!(pp.a * pp.b, r);
            prop_assert!(!pp.a.is_multiple_of(q.get()));
            prop_assert_eq!(q.pow(pp.e), Some(pp.b));
        }
    }
}
