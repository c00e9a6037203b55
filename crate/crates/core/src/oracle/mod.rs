//! Brute-force Jordan partitions from ranks of matrix powers over GF(p).
//!
//! Nothing here uses determinants, carries or the delta profile, so it is an
//! independent check on [`crate::jordan`].

mod graded;
pub mod matrix;

use serde::Serialize;

use crate::delta::check_rs;
use crate::error::{Error, Result};
use crate::jordan::Partition;
use crate::parith::Prime;

pub use matrix::{
    build_tensor, jcf_partition_single_eigenvalue, matrix_cap, partition_from_ranks, rank_gfp, rank_sequence, Kind,
    MatrixGfp,
};

/// How [`oracle_lambda_with`] obtains the rank sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    /// Powers of the explicit Kronecker product.
    Dense,
    /// Degree-by-degree blocks of the similar operator `x + y` on
    /// `F[x,y]/(x^r, y^s)`.
    Graded,
    /// Dense for small `rs`, graded otherwise.
    Auto,
}

const DENSE_LIMIT: usize = 144;

/// Rank sequence of `J_r (x) J_s - I`.
pub fn unipotent_ranks(r: usize, s: usize, p: Prime, engine: Engine, cap: usize) -> Result<Vec<usize>> {
    check_rs(r, s)?;
    let size = r * s;
    if size > cap {
        return Err(Error::Resource { what: "tensor dimension", size, cap });
    }
    let dense = match engine {
        Engine::Dense => true,
        Engine::Graded => false,
        Engine::Auto => size <= DENSE_LIMIT,
    };
    if dense {
        rank_sequence(&build_tensor(r, s, p, Kind::Unipotent, cap)?, 1)
    } else {
        Ok(graded::unipotent_ranks(r, s, matrix::small_modulus(p)?))
    }
}

pub fn oracle_lambda_with(r: usize, s: usize, p: Prime, engine: Engine, cap: usize) -> Result<Partition> {
    let lambda = partition_from_ranks(&unipotent_ranks(r, s, p, engine, cap)?)?;
    if lambda.len() != r {
        return Err(Error::Internal(format!("Jordan form of J_{r} (x) J_{s} has {} blocks", lambda.len())));
    }
    Ok(lambda)
}

/// Jordan partition of `J_r (x) J_s` over GF(p).
pub fn oracle_lambda(r: usize, s: usize, p: Prime) -> Result<Partition> {
    oracle_lambda_with(r, s, p, Engine::Auto, matrix_cap()?)
}

/// Jordan form of `N_r (x) N_s`: `s - r + 1` blocks of size `r` plus every
/// other block size twice, the halves forming `mu`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NilpotentReport {
    pub r: usize,
    pub s: usize,
    pub p: Prime,
    pub partition: Partition,
    pub mu: Partition,
}

pub fn oracle_nilpotent(r: usize, s: usize, p: Prime) -> Result<NilpotentReport> {
    oracle_nilpotent_with_cap(r, s, p, matrix_cap()?)
}

pub fn oracle_nilpotent_with_cap(r: usize, s: usize, p: Prime, cap: usize) -> Result<NilpotentReport> {
    check_rs(r, s)?;
    let partition = jcf_partition_single_eigenvalue(&build_tensor(r, s, p, Kind::Nilpotent, cap)?, 0)?;
    let mu = extract_mu(&partition, r, s)?;
    Ok(NilpotentReport { r, s, p, partition, mu })
}

fn extract_mu(partition: &Partition, r: usize, s: usize) -> Result<Partition> {
    let broken = |what: String| Error::Internal(format!("N_{r} (x) N_{s} = {partition}: {what}"));
    let forced = s - r + 1;
    let mut mu = Vec::new();
    for (part, mult) in partition.multiplicities() {
        let free = if part == r {
            mult.checked_sub(forced).ok_or_else(|| broken(format!("part {r} occurs {mult} < {forced} times")))?
        } else {
            mult
        };
        if free % 2 == 1 {
            return Err(broken(format!("part {part} left with odd multiplicity {free}")));
        }
        mu.extend(std::iter::repeat_n(part, free / 2));
    }
    let mu = Partition::new(mu).map_err(|e| broken(e.to_string()))?;
    if mu.sum() != r * (r - 1) / 2 {
        return Err(broken(format!("mu = {mu} does not sum to {}", r * (r - 1) / 2)));
    }
    Ok(mu)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize) -> Prime {
        Prime::new(n).unwrap()
    }

    fn lam(r: usize, s: usize, q: usize) -> Vec<usize> {
        oracle_lambda(r, s, p(q)).unwrap().parts().to_vec()
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lam(2, 3, 3), [3, 3]);
        assert_eq!(lam(3, 4, 2), [4, 4, 4]);
        assert_eq!(lam(4, 5, 7), [7, 7, 4, 2]);
        assert_eq!(lam(3, 5, 3), [6, 6, 3]);
        assert_eq!(lam(5, 12, 3), [15, 15, 12, 9, 9]);
    }

    #[test]
    fn srinivasan_range_is_standard() {
        for s in 1..=8 {
            for r in 1..=s {
                let q = (r + s - 1..).find(|&q| crate::parith::is_prime(q)).unwrap();
                let expected: Vec<usize> = (1..=r).map(|n| r + s + 1 - 2 * n).collect();
                assert_eq!(lam(r, s, q), expected);
            }
        }
    }

    #[test]
    fn engines_agree() {
        for q in [2, 3, 5] {
            for s in 1..=12 {
                for r in 1..=s {
                    let dense = unipotent_ranks(r, s, p(q), Engine::Dense, 4096).unwrap();
                    let graded = unipotent_ranks(r, s, p(q), Engine::Graded, 4096).unwrap();
                    assert_eq!(dense, graded, "({r},{s},{q})");
                }
            }
        }
    }

    #[test]
    fn rank_sequences_are_convex() {
        for q in [2, 3, 5, 7] {
            for s in 1..=20 {
                for r in 1..=s {
                    let ranks = unipotent_ranks(r, s, p(q), Engine::Graded, 4096).unwrap();
                    let drops: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
                    assert!(drops.windows(2).all(|w| w[0] >= w[1]), "({r},{s},{q}) {ranks:?}");
                    // r blocks, and no block longer than r + s - 1
                    assert_eq!(drops[0], r);
                    assert!(ranks.len() <= r + s + 1);
                }
            }
        }
    }

    #[test]
    fn nilpotent_examples() {
        for s in 1..6 {
            let n = oracle_nilpotent(1, s, p(3)).unwrap();
            assert_eq!(n.partition.parts(), vec![1; s].as_slice());
            assert!(n.mu.is_empty());
        }
        let n = oracle_nilpotent(2, 2, p(2)).unwrap();
        assert_eq!(n.partition.parts(), &[2, 1, 1]);
        assert_eq!(n.mu.parts(), &[1]);
        assert_eq!(oracle_nilpotent(3, 5, p(2)).unwrap().partition, oracle_nilpotent(3, 5, p(5)).unwrap().partition);
    }

    #[test]
    fn nilpotent_order_is_r() {
        for s in 1..=8 {
            for r in 1..=s {
                let m = build_tensor(r, s, p(3), Kind::Nilpotent, 4096).unwrap();
                let ranks = rank_sequence(&m, 0).unwrap();
                assert_eq!(ranks.len(), r + 1, "N_{r} (x) N_{s} should have order exactly {r}");
            }
        }
    }

    #[test]
    fn mu_rejects_unpaired_parts() {
        let bad = Partition::new(vec![2, 2, 1]).unwrap();
        assert!(extract_mu(&bad, 2, 2).is_err());
    }
}
