//! Rank sequence of `J_r (x) J_s - I` without forming the `rs x rs` matrix.
//!
//! Identify `F^r (x) F^s` with `A = F[x,y]/(x^r, y^s)`, so that `J_r (x) J_s`
//! is multiplication by `(1+x)(1+y)`. Then `J_r (x) J_s - I` multiplies by
//! `x + y(1+x)`, and `y -> y(1+x)` is an automorphism of `A`, so the operator
//! is similar to multiplication by `x + y`. That map raises total degree by
//! one, so `rank((x+y)^k)` is the sum over `d` of the ranks of the blocks
//! `A_d -> A_{d+k}`, each at most `min(r,s)` square, with entries
//! `C(k, i' - i) mod p` in the monomial bases.

use super::matrix::rank_in_place;

/// `C(n, k) mod p` for `n < rows`.
fn pascal_mod(rows: usize, p: u32) -> Vec<Vec<u32>> {
    let mut table: Vec<Vec<u32>> = Vec::with_capacity(rows);
    for n in 0..rows {
        let mut row = vec![1u32; n + 1];
        for k in 1..n {
            row[k] = (table[n - 1][k - 1] + table[n - 1][k]) % p;
        }
        table.push(row);
    }
    table
}

/// Exponents of `x` in the monomials of total degree `d`.
fn x_range(d: usize, r: usize, s: usize) -> std::ops::Range<usize> {
    d.saturating_sub(s - 1)..d.min(r - 1) + 1
}

/// `rank((J_r (x) J_s - I)^k)` for `k = 0, 1, ...` up to the first zero.
pub(crate) fn unipotent_ranks(r: usize, s: usize, p: u32) -> Vec<usize> {
    let top = r + s - 2;
    let binom = pascal_mod(top + 2, p);
    let mut ranks = vec![r * s];
    let mut scratch = Vec::new();
    for k in 1..=top + 1 {
        let mut total = 0;
        for d in 0..=top.saturating_sub(k) {
            let src = x_range(d, r, s);
            let dst = x_range(d + k, r, s);
            if src.is_empty() || dst.is_empty() {
                continue;
            }
            let (rows, cols) = (src.len(), dst.len());
            scratch.clear();
            scratch.resize(rows * cols, 0);
            for (a, i) in src.clone().enumerate() {
                for (b, i2) in dst.clone().enumerate() {
                    if i2 >= i && i2 - i <= k {
                        scratch[a * cols + b] = binom[k][i2 - i];
                    }
                }
            }
            total += rank_in_place(&mut scratch, rows, cols, p);
        }
        ranks.push(total);
        if total == 0 {
            break;
        }
    }
    ranks
}
