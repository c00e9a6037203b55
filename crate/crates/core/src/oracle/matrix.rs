//! Dense square matrices over GF(p) with exact elimination.

use serde::{Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::jordan::Partition;
use crate::parith::Prime;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    /// `J_r (x) J_s` with `J = I + N`.
    Unipotent,
    /// `N_r (x) N_s`.
    Nilpotent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixGfp {
    dim: usize,
    p: u32,
    entries: Vec<u32>,
}

impl Serialize for MatrixGfp {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().collect::<Vec<_>>().serialize(serializer)
    }
}

/// Residues must fit in `u32` so products fit in `u64`.
pub(crate) fn small_modulus(p: Prime) -> Result<u32> {
    u32::try_from(p.get()).map_err(|_| invalid(format!("p = {p} is too large for matrix arithmetic")))
}

impl MatrixGfp {
    pub fn zero(dim: usize, p: Prime) -> Result<Self> {
        Ok(MatrixGfp { dim, p: small_modulus(p)?, entries: vec![0; dim * dim] })
    }

    pub fn identity(dim: usize, p: Prime) -> Result<Self> {
        let mut m = Self::zero(dim, p)?;
        for i in 0..dim {
            m.entries[i * dim + i] = 1;
        }
        Ok(m)
    }

    /// Row-major entries, reduced mod `p`.
    pub fn from_rows(rows: &[Vec<u64>], p: Prime) -> Result<Self> {
        let dim = rows.len();
        let q = small_modulus(p)?;
        if rows.iter().any(|row| row.len() != dim) {
            return Err(invalid("matrix rows must all have length equal to the row count"));
        }
        let entries = rows.iter().flatten().map(|&x| (x % q as u64) as u32).collect();
        Ok(MatrixGfp { dim, p: q, entries })
    }

    /// The `l x l` Jordan block with eigenvalue `e`.
    pub fn jordan_block(l: usize, e: u32, p: Prime) -> Result<Self> {
        let mut m = Self::zero(l, p)?;
        let e = e % m.p;
        for i in 0..l {
            m.entries[i * l + i] = e;
            if i + 1 < l {
                m.entries[i * l + i + 1] = 1;
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        self.entries.chunks(self.dim.max(1)).take(self.dim)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn kronecker(&self, other: &Self) -> Self {
        let (n, m) = (self.dim, other.dim);
        let d = n * m;
        let mut entries = vec![0; d * d];
        for i in 0..n {
            for j in 0..n {
                let a = self.get(i, j) as u64;
                if a == 0 {
                    continue;
                }
                for k in 0..m {
                    for l in 0..m {
                        let v = a * other.get(k, l) as u64 % self.p as u64;
                        entries[(i * m + k) * d + j * m + l] = v as u32;
                    }
                }
            }
        }
        MatrixGfp { dim: d, p: self.p, entries }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.dim;
        let q = self.p as u64;
        let mut out = vec![0u64; n * n];
        for i in 0..n {
            let acc = &mut out[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.entries[i * n + k] as u64;
                if a == 0 {
                    continue;
                }
                let row = &other.entries[k * n..(k + 1) * n];
                for (slot, &b) in acc.iter_mut().zip(row) {
                    *slot = (*slot + a * b as u64) % q;
                }
            }
        }
        MatrixGfp { dim: n, p: self.p, entries: out.into_iter().map(|x| x as u32).collect() }
    }

    /// `self - e I`.
    pub fn shift(&self, e: u32) -> Self {
        let mut m = self.clone();
        let e = e % self.p;
        for i in 0..self.dim {
            let slot = &mut m.entries[i * self.dim + i];
            *slot = (*slot + self.p - e) % self.p;
        }
        m
    }
}

fn inverse_mod(a: u32, p: u32) -> u32 {
    // a^(p-2) by square and multiply
    let (mut base, mut exp, mut acc) = (a as u64, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

/// Rank of a `rows x cols` row-major matrix over GF(p); destroys `data`.
pub(crate) fn rank_in_place(data: &mut [u32], rows: usize, cols: usize, p: u32) -> usize {
    let q = p as u64;
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| data[r * cols + c] != 0) else {
            continue;
        };
        if pivot != rank {
            for k in c..cols {
                data.swap(pivot * cols + k, rank * cols + k);
            }
        }
        let inv = inverse_mod(data[rank * cols + c], p) as u64;
        for k in c..cols {
            data[rank * cols + k] = (data[rank * cols + k] as u64 * inv % q) as u32;
        }
        let (head, tail) = data.split_at_mut((rank + 1) * cols);
        let pivot_row = &head[rank * cols..];
        for row in tail.chunks_mut(cols) {
            let f = row[c] as u64;
            if f == 0 {
                continue;
            }
            let neg = q - f;
            for k in c..cols {
                row[k] = ((row[k] as u64 + neg * pivot_row[k] as u64) % q) as u32;
            }
        }
        rank += 1;
    }
    rank
}

pub fn rank_gfp(m: &MatrixGfp) -> usize {
    let mut data = m.entries.clone();
    rank_in_place(&mut data, m.dim, m.dim, m.p)
}

/// The rs x rs cap for dense matrices: `NORMAN_CAP` if set, else 4096.
pub fn matrix_cap() -> Result<usize> {
    env_cap(4096)
}

pub(crate) fn env_cap(default: usize) -> Result<usize> {
    match std::env::var("NORMAN_CAP") {
        Ok(text) => {
            text.trim().parse().map_err(|_| invalid(format!("NORMAN_CAP must be a positive integer, got {text:?}")))
        }
        Err(_) => Ok(default),
    }
}

pub fn build_tensor(r: usize, s: usize, p: Prime, kind: Kind, cap: usize) -> Result<MatrixGfp> {
    if r == 0 || s == 0 {
        return Err(invalid("block sizes must be positive"));
    }
    let size = r.saturating_mul(s);
    if size > cap {
        return Err(Error::Resource { what: "tensor dimension", size, cap });
    }
    let e = match kind {
        Kind::Unipotent => 1,
        Kind::Nilpotent => 0,
    };
    Ok(MatrixGfp::jordan_block(r, e, p)?.kronecker(&MatrixGfp::jordan_block(s, e, p)?))
}

/// Partition with `r_{k-1} - r_k` parts of size at least `k`, from a rank
/// sequence `r_0 = dim, r_1, ...` ending in `0`.
pub fn partition_from_ranks(ranks: &[usize]) -> Result<Partition> {
    let ge: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut parts = Vec::new();
    for k in (1..=ge.len()).rev() {
        let exactly = ge[k - 1] - ge.get(k).copied().unwrap_or(0);
        parts.extend(std::iter::repeat_n(k, exactly));
    }
    Partition::new(parts)
}

/// `rank((M - eI)^k)` for `k = 0, 1, ...` up to the first zero.
pub fn rank_sequence(m: &MatrixGfp, eigenvalue: u32) -> Result<Vec<usize>> {
    let a = m.shift(eigenvalue);
    let mut ranks = vec![m.dim];
    let mut power = a.clone();
    loop {
        let rank = rank_gfp(&power);
        let prev = *ranks.last().expect("starts with the dimension");
        if rank == prev && rank > 0 {
            return Err(Error::Precondition(format!("M - {eigenvalue}I is not nilpotent")));
        }
        if rank > prev {
            // ranks of powers of one matrix never rise
            return Err(Error::Internal(format!("rank rose from {prev} to {rank}")));
        }
        ranks.push(rank);
        if rank == 0 {
            return Ok(ranks);
        }
        power = power.mul(&a);
    }
}

pub fn jcf_partition_single_eigenvalue(m: &MatrixGfp, eigenvalue: u32) -> Result<Partition> {
    partition_from_ranks(&rank_sequence(m, eigenvalue)?)
}
