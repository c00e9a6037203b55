//! `G(r,p) = <pi(r,s,p) : s >= r>` and its structure `S_a wr D_b`, where
//! `b` is the `p`-part of `r` and `a = r / b`.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Serialize, Serializer};

use super::PermGroup;
use crate::error::{invalid, Error, Result};
use crate::jordan::pi_of;
use crate::parith::{p_parts, Prime};
use crate::perm::Permutation;

/// The residue classes `Omega_j = {n in [r] : n = j mod b}`, `j = 1..b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BlockSystem {
    pub r: usize,
    pub b: usize,
}

impl BlockSystem {
    pub fn new(r: usize, b: usize) -> Result<Self> {
        if b == 0 || !r.is_multiple_of(b) {
            return Err(invalid(format!("{b} does not divide {r}")));
        }
        Ok(BlockSystem { r, b })
    }

    /// Size of each block.
    pub fn a(&self) -> usize {
        self.r / self.b
    }

    /// 1-based index of the block containing `n`.
    pub fn block_of(&self, n: usize) -> usize {
        (n - 1) % self.b + 1
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        (1..=self.b).map(|j| (j..=self.r).step_by(self.b).collect()).collect()
    }

    /// The permutation `g` induces on block indices, if it permutes the blocks.
    pub fn induced(&self, g: &Permutation) -> Option<Permutation> {
        if g.degree() != self.r {
            return None;
        }
        let images: Vec<usize> = (1..=self.b).map(|j| self.block_of(g.apply(j))).collect();
        if (1..=self.r).any(|n| self.block_of(g.apply(n)) != images[self.block_of(n) - 1]) {
            return None;
        }
        Permutation::from_images(images).ok()
    }
}

/// Distinct non-identity values of `pi(r,s,p)` for `r <= s < r + p^m`, in
/// order of first appearance.
pub fn group_generators(r: usize, p: Prime) -> Result<Vec<Permutation>> {
    Ok(period_values(r, p)?.into_iter().filter(|g| !g.is_identity()).collect())
}

/// Distinct values of `pi(r,s,p)` over one period, the identity included.
pub fn generator_census(r: usize, p: Prime) -> Result<usize> {
    Ok(period_values(r, p)?.len())
}

fn period_values(r: usize, p: Prime) -> Result<Vec<Permutation>> {
    if r == 0 {
        return Err(invalid("r must be positive"));
    }
    let mut seen: Vec<Permutation> = Vec::new();
    for s in r..r + p.covering_power(r) {
        let g = pi_of(r, s, p)?;
        if !seen.contains(&g) {
            seen.push(g);
        }
    }
    Ok(seen)
}

/// The action of `pi` on the residue classes mod `b`.
pub fn phi_image(pi: &Permutation, b: usize) -> Result<Permutation> {
    let system = BlockSystem::new(pi.degree(), b)?;
    system.induced(pi).ok_or_else(|| Error::Domain(format!("{pi} does not permute the residue classes mod {b}")))
}

/// `((i-1)b + j) -> (i^sigma - 1)b + j` for `i` in `[a]`, `j` in `[b]`.
pub fn diagonal_embed(sigma: &Permutation, a: usize, b: usize) -> Result<Permutation> {
    if sigma.degree() != a {
        return Err(invalid(format!("{sigma} has degree {}, expected {a}", sigma.degree())));
    }
    let images = (1..=a).flat_map(|i| (1..=b).map(move |j| (sigma.apply(i) - 1) * b + j)).collect();
    Permutation::from_images(images)
}

/// `|D_b|`: `2b` for `b >= 3`, else `b`.
pub fn dihedral_order(b: usize) -> usize {
    if b >= 3 {
        2 * b
    } else {
        b
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

fn as_decimal<S: Serializer>(n: &BigUint, serializer: S) -> std::result::Result<S::Ok, S::Error> {
    serializer.serialize_str(&n.to_str_radix(10))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupReport {
    pub r: usize,
    pub p: Prime,
    pub a: usize,
    pub b: usize,
    pub generator_count: usize,
    pub census: usize,
    #[serde(serialize_with = "as_decimal")]
    pub order: BigUint,
    #[serde(serialize_with = "as_decimal")]
    pub expected_order: BigUint,
    pub blocks_invariant: bool,
    pub phi_image_is_dihedral: bool,
    /// `None` when `a = 1`.
    pub diagonal_contained: Option<bool>,
    /// `None` unless `a > 1` and `b > 1`.
    pub l9_transposition_found: Option<bool>,
    pub verdict: bool,
}

/// The rotation `(1,2,...,b)` and the reflection `n -> b + 1 - n`.
fn dihedral_generators(b: usize) -> Vec<Permutation> {
    let rotation = Permutation::from_images((1..=b).map(|n| n % b + 1).collect()).expect("cycle");
    let reflection = Permutation::rev(1, b, b).expect("full interval");
    vec![rotation, reflection]
}

fn is_dihedral(images: Vec<Permutation>, b: usize) -> Result<bool> {
    let h = PermGroup::new(b, images)?;
    if h.order() != BigUint::from(dihedral_order(b)) {
        return Ok(false);
    }
    for g in dihedral_generators(b) {
        if !h.contains(&g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn verify_wreath(r: usize, p: Prime) -> Result<GroupReport> {
    if r == 0 {
        return Err(invalid("r must be positive"));
    }
    let parts = p_parts(r, p)?;
    let (a, b) = (parts.a, parts.b);
    let expected_order = factorial(a).pow(b as u32) * BigUint::from(dihedral_order(b));
    if r == 1 {
        let one = BigUint::one();
        return Ok(GroupReport {
            r,
            p,
            a,
            b,
            generator_count: 0,
            census: 1,
            order: one.clone(),
            expected_order: one,
            blocks_invariant: true,
            phi_image_is_dihedral: true,
            diagonal_contained: None,
            l9_transposition_found: None,
            verdict: true,
        });
    }

    let gens = group_generators(r, p)?;
    let census = generator_census(r, p)?;
    let group = PermGroup::new(r, gens.clone())?;
    let order = group.order();

    let system = BlockSystem::new(r, b)?;
    let induced: Option<Vec<Permutation>> = gens.iter().map(|g| system.induced(g)).collect();
    let blocks_invariant = induced.is_some();
    let phi_image_is_dihedral = match induced {
        Some(images) => is_dihedral(images, b)?,
        None => false,
    };

    let diagonal_contained = if a > 1 {
        let swap = Permutation::rev(1, 2, a)?;
        let cycle = Permutation::from_images((1..=a).map(|n| n % a + 1).collect())?;
        Some(group.contains(&diagonal_embed(&swap, a, b)?)? && group.contains(&diagonal_embed(&cycle, a, b)?)?)
    } else {
        None
    };

    let l9_transposition_found = if a > 1 && b > 1 {
        let q = p.covering_power(r);
        let pk = |k: usize| pi_of(r, q + k, p);
        let product = pk(1)?.compose(&pk(0)?)?.compose(&pk(b)?)?.compose(&pk(b + 1)?)?;
        Some(product == Permutation::parse_cycles(&format!("(1,{})", b + 1), r)?)
    } else {
        None
    };

    let verdict = order == expected_order
        && blocks_invariant
        && phi_image_is_dihedral
        && diagonal_contained != Some(false)
        && l9_transposition_found != Some(false);
    Ok(GroupReport {
        r,
        p,
        a,
        b,
        generator_count: gens.len(),
        census,
        order,
        expected_order,
        blocks_invariant,
        phi_image_is_dihedral,
        diagonal_contained,
        l9_transposition_found,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize) -> Prime {
        Prime::new(n).unwrap()
    }

    fn cycles(gs: &[Permutation]) -> Vec<String> {
        gs.iter().map(|g| g.format_cycles()).collect()
    }

    #[test]
    fn generator_examples() {
        assert_eq!(cycles(&group_generators(2, p(2)).unwrap()), ["(1,2)"]);
        let mut g3 = cycles(&group_generators(3, p(2)).unwrap());
        g3.sort();
        assert_eq!(g3, ["(1,2)", "(1,3)", "(2,3)"]);
        let g4 = cycles(&group_generators(4, p(2)).unwrap());
        assert!(g4.contains(&"(1,4)(2,3)".to_string()) && g4.contains(&"(2,4)".to_string()));
        assert_eq!(generator_census(2, p(2)).unwrap(), 2);
        assert_eq!(generator_census(3, p(2)).unwrap(), 4);
        for r in 1..=12 {
            assert!(generator_census(r, p(3)).unwrap() <= p(3).covering_power(r));
        }
    }

    #[test]
    fn phi_examples() {
        let pi = pi_of(6, 9, p(3)).unwrap();
        assert_eq!(phi_image(&pi, 3).unwrap().format_cycles(), "(1,3)");
        assert!(phi_image(&Permutation::identity(6), 3).unwrap().is_identity());
        let flip = Permutation::rev(1, 6, 6).unwrap();
        assert_eq!(phi_image(&flip, 3).unwrap().format_cycles(), "(1,3)");
        assert!(phi_image(&Permutation::parse_cycles("(1,2)", 6).unwrap(), 3).is_err());
        assert!(phi_image(&flip, 4).is_err());
    }

    #[test]
    fn diagonal_examples() {
        let swap = Permutation::parse_cycles("(1,2)", 2).unwrap();
        assert_eq!(diagonal_embed(&swap, 2, 3).unwrap().format_cycles(), "(1,4)(2,5)(3,6)");
        assert!(diagonal_embed(&Permutation::identity(4), 4, 3).unwrap().is_identity());
        let c = Permutation::from_images(vec![2, 3, 4, 1]).unwrap();
        assert_eq!(diagonal_embed(&c, 4, 1).unwrap(), c);
    }

    #[test]
    fn blocks() {
        let sys = BlockSystem::new(6, 3).unwrap();
        assert_eq!(sys.blocks(), vec![vec![1, 4], vec![2, 5], vec![3, 6]]);
        assert_eq!(sys.a(), 2);
        assert!(BlockSystem::new(6, 4).is_err());
    }

    #[test]
    fn wreath_examples() {
        let cases = [(4, 2, 8u32), (6, 2, 72), (6, 3, 48), (5, 3, 120), (12, 2, 10368)];
        for (r, q, order) in cases {
            let rep = verify_wreath(r, p(q)).unwrap();
            assert_eq!(rep.order, BigUint::from(order), "G({r},{q})");
            assert!(rep.verdict, "{rep:?}");
        }
        assert_eq!(verify_wreath(6, p(3)).unwrap().l9_transposition_found, Some(true));
        assert_eq!(verify_wreath(5, p(3)).unwrap().l9_transposition_found, None);
        assert!(verify_wreath(1, p(5)).unwrap().verdict);
        let d = serde_json::to_value(verify_wreath(12, p(2)).unwrap()).unwrap();
        assert_eq!(d["order"], "10368");
    }

    #[test]
    fn membership_of_diagonal() {
        let g = PermGroup::new(6, group_generators(6, p(3)).unwrap()).unwrap();
        let swap = Permutation::parse_cycles("(1,2)", 2).unwrap();
        assert!(g.contains(&diagonal_embed(&swap, 2, 3).unwrap()).unwrap());
    }

    #[test]
    fn small_groups_match_enumeration() {
        for q in [2, 3, 5] {
            for r in 2..=8 {
                let g = PermGroup::new(r, group_generators(r, p(q)).unwrap()).unwrap();
                if let Some(n) = g.naive_order(5000) {
                    assert_eq!(g.order(), BigUint::from(n), "G({r},{q})");
                }
            }
        }
    }

    #[test]
    fn phi_is_a_homomorphism() {
        for (r, q) in [(6, 3), (12, 2), (8, 2), (10, 5)] {
            let b = p_parts(r, p(q)).unwrap().b;
            let gens = group_generators(r, p(q)).unwrap();
            for x in &gens {
                for y in &gens {
                    let xy = x.compose(y).unwrap();
                    let lhs = phi_image(&xy, b).unwrap();
                    let rhs = phi_image(x, b).unwrap().compose(&phi_image(y, b).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
