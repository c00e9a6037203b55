//! Permutation groups via a deterministic Schreier-Sims stabilizer chain.

pub mod wreath;

use std::collections::{HashSet, VecDeque};
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{invalid, Error, Result};
use crate::oracle::matrix::env_cap;
use crate::perm::Permutation;

pub use wreath::{
    diagonal_embed, generator_census, group_generators, phi_image, verify_wreath, BlockSystem, GroupReport,
};

/// The largest degree a group may have: `NORMAN_CAP` if set, else 64.
pub fn degree_cap() -> Result<usize> {
    env_cap(64)
}

/// 0-based images; `x^g = g[x]`.
type Perm = Vec<u8>;

fn mul(g: &[u8], h: &[u8]) -> Perm {
    g.iter().map(|&x| h[x as usize]).collect()
}

fn inv(g: &[u8]) -> Perm {
    let mut out = vec![0; g.len()];
    for (x, &y) in g.iter().enumerate() {
        out[y as usize] = x as u8;
    }
    out
}

fn is_id(g: &[u8]) -> bool {
    g.iter().enumerate().all(|(x, &y)| x == y as usize)
}

fn first_moved(g: &[u8]) -> Option<usize> {
    g.iter().enumerate().position(|(x, &y)| x != y as usize)
}

#[derive(Debug, Clone)]
struct Level {
    base: usize,
    /// Grows by appending, so transversal entries never change once set.
    orbit: Vec<usize>,
    /// `u[x]` maps the base point to `x`; `u_inv[x]` is its inverse.
    u: Vec<Option<Perm>>,
    u_inv: Vec<Option<Perm>>,
    /// Schreier generators from `orbit[..checked_orbit]` and strong
    /// generators `strong[..checked_gens]` are known to sift to the identity.
    checked_orbit: usize,
    checked_gens: usize,
}

impl Level {
    fn new(degree: usize, base: usize) -> Self {
        let mut u: Vec<Option<Perm>> = vec![None; degree];
        u[base] = Some((0..degree as u8).collect());
        let u_inv = u.clone();
        Level { base, orbit: vec![base], u, u_inv, checked_orbit: 0, checked_gens: 0 }
    }
}

#[derive(Debug, Clone)]
struct Chain {
    levels: Vec<Level>,
    strong: Vec<Perm>,
}

impl Chain {
    fn build(degree: usize, gens: &[Perm]) -> Self {
        let strong: Vec<Perm> = gens.iter().filter(|g| !is_id(g)).cloned().collect();
        let mut chain = Chain { levels: Vec::new(), strong };
        for g in 0..chain.strong.len() {
            let g = &chain.strong[g];
            if chain.levels.iter().all(|l| g[l.base] as usize == l.base) {
                let b = first_moved(g).expect("not the identity");
                chain.levels.push(Level::new(degree, b));
            }
        }
        for i in 0..chain.levels.len() {
            chain.extend(i);
        }

        let mut i = chain.levels.len();
        while i > 0 {
            let level = i - 1;
            match chain.schreier_failure(level) {
                None => {
                    let lv = &mut chain.levels[level];
                    lv.checked_orbit = lv.orbit.len();
                    lv.checked_gens = chain.strong.len();
                    i -= 1;
                }
                Some((residue, dropped)) => {
                    if dropped == chain.levels.len() {
                        let b = first_moved(&residue).expect("non-identity residue");
                        chain.levels.push(Level::new(degree, b));
                    }
                    chain.strong.push(residue);
                    for l in 0..=dropped {
                        chain.extend(l);
                    }
                    i = dropped + 1;
                }
            }
        }
        chain
    }

    fn base_points(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Indices of strong generators fixing the first `level` base points.
    fn stabilizer_gens(&self, level: usize) -> Vec<usize> {
        let base = &self.levels[..level];
        (0..self.strong.len()).filter(|&i| base.iter().all(|l| self.strong[i][l.base] as usize == l.base)).collect()
    }

    /// Closes the orbit at `level` under its current generators.
    fn extend(&mut self, level: usize) {
        let gens = self.stabilizer_gens(level);
        let lv = &mut self.levels[level];
        let mut next = 0;
        while next < lv.orbit.len() {
            let x = lv.orbit[next];
            for &g in &gens {
                let g = &self.strong[g];
                let y = g[x] as usize;
                if lv.u[y].is_none() {
                    let t = mul(lv.u[x].as_ref().expect("reached"), g);
                    lv.u_inv[y] = Some(inv(&t));
                    lv.u[y] = Some(t);
                    lv.orbit.push(y);
                }
            }
            next += 1;
        }
    }

    /// Sifts `g` through the levels from `start`; returns the residue and the
    /// level where it fell out (`levels.len()` if it passed every level).
    fn sift(&self, mut g: Perm, start: usize) -> (Perm, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            let x = g[level.base] as usize;
            match &level.u_inv[x] {
                Some(back) => g = mul(&g, back),
                None => return (g, i),
            }
        }
        let end = self.levels.len();
        (g, end)
    }

    /// The first Schreier generator at `level` not yet known to sift to the
    /// identity through the levels below.
    fn schreier_failure(&self, level: usize) -> Option<(Perm, usize)> {
        let lv = &self.levels[level];
        let gens = self.stabilizer_gens(level);
        for (pos, &x) in lv.orbit.iter().enumerate() {
            let ux = lv.u[x].as_ref().expect("orbit point");
            for &gi in &gens {
                if pos < lv.checked_orbit && gi < lv.checked_gens {
                    continue;
                }
                let s = &self.strong[gi];
                let y = s[x] as usize;
                let uxs = mul(ux, s);
                if lv.u[y].as_ref() == Some(&uxs) {
                    continue;
                }
                let h = mul(&uxs, lv.u_inv[y].as_ref().expect("orbit is closed"));
                let (residue, dropped) = self.sift(h, level + 1);
                if dropped < self.levels.len() || !is_id(&residue) {
                    return Some((residue, dropped));
                }
            }
        }
        None
    }

    fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }
}

/// A group given by generators; the chain is built on first use.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<Chain>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        Self::with_cap(degree, generators, degree_cap()?)
    }

    pub fn with_cap(degree: usize, generators: Vec<Permutation>, cap: usize) -> Result<Self> {
        if degree > cap.min(255) {
            return Err(Error::Resource { what: "group degree", size: degree, cap: cap.min(255) });
        }
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(invalid(format!("generator {g} has degree {}, expected {degree}", g.degree())));
        }
        Ok(PermGroup { degree, generators, chain: OnceLock::new() })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    fn chain(&self) -> &Chain {
        self.chain.get_or_init(|| {
            let gens: Vec<Perm> = self.generators.iter().map(to_internal).collect();
            Chain::build(self.degree, &gens)
        })
    }

    /// 1-based base points of the stabilizer chain.
    pub fn base(&self) -> Vec<usize> {
        self.chain().base_points().into_iter().map(|b| b + 1).collect()
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        if g.degree() != self.degree {
            return Err(invalid(format!("{g} has degree {}, group has degree {}", g.degree(), self.degree)));
        }
        let chain = self.chain();
        let (residue, dropped) = chain.sift(to_internal(g), 0);
        Ok(dropped == chain.levels.len() && is_id(&residue))
    }

    /// Order by closing the generators under multiplication, or `None` once
    /// more than `limit` elements turn up.
    pub fn naive_order(&self, limit: usize) -> Option<usize> {
        let gens: Vec<Perm> = self.generators.iter().map(to_internal).collect();
        let id: Perm = (0..self.degree as u8).collect();
        let mut seen = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = mul(&x, g);
                if seen.insert(y.clone()) {
                    if seen.len() > limit {
                        return None;
                    }
                    queue.push_back(y);
                }
            }
        }
        Some(seen.len())
    }
}

fn to_internal(g: &Permutation) -> Perm {
    g.images().iter().map(|&y| (y - 1) as u8).collect()
}
