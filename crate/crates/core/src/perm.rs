//! Permutations of `[r] = {1, ..., r}` acting on the right.
//!
//! Points are 1-based throughout. The product `f * g` first applies `f`
//! and then `g`, so `n^(fg) = (n^f)^g`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{invalid, Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (1..=degree).collect() }
    }

    /// Builds a permutation from its one-line form `[1^f, 2^f, ..., r^f]`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let r = images.len();
        let mut seen = vec![false; r + 1];
        for (i, &x) in images.iter().enumerate() {
            if x == 0 || x > r {
                return Err(invalid(format!("image {x} of point {} is outside [1,{r}]", i + 1)));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(invalid(format!("image {x} repeated")));
            }
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// The reversal of the interval `[i, j]` inside `[r]`.
    pub fn rev(i: usize, j: usize, r: usize) -> Result<Self> {
        if i == 0 || i > j || j > r {
            return Err(invalid(format!("Rev({i},{j}) needs 1 <= i <= j <= r = {r}")));
        }
        let mut p = Self::identity(r);
        p.images[i - 1..j].reverse();
        Ok(p)
    }

    /// Product of the reversals of consecutive blocks `[c_k + 1, c_{k+1}]`
    /// for a strictly increasing list of cut points starting at 0.
    pub fn reversal_product(cuts: &[usize]) -> Result<Self> {
        let r = *cuts.last().ok_or_else(|| invalid("empty cut list"))?;
        if cuts[0] != 0 || cuts.windows(2).any(|w| w[0] >= w[1]) {
            return Err(invalid(format!("cut points {cuts:?} must increase strictly from 0")));
        }
        let mut p = Self::identity(r);
        for w in cuts.windows(2) {
            p.images[w[0]..w[1]].reverse();
        }
        Ok(p)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `n^f` for a 1-based point `n`.
    #[inline]
    pub fn apply(&self, n: usize) -> usize {
        self.images[n - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    pub fn is_involution_or_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| self.images[x - 1] == i + 1)
    }

    fn check_degree(&self, other: &Self) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(invalid(format!("degree mismatch: {} vs {}", self.degree(), other.degree())));
        }
        Ok(())
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_degree(other)?;
        Ok(self.then(other))
    }

    pub(crate) fn then(&self, other: &Self) -> Self {
        Permutation { images: self.images.iter().map(|&x| other.images[x - 1]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    /// `g^-1 f g`.
    pub fn conjugate(&self, g: &Self) -> Result<Self> {
        self.check_degree(g)?;
        // n^(g^-1 f g): relabel every point by g.
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[g.images[i] - 1] = g.images[x - 1];
        }
        Ok(Permutation { images })
    }

    /// Extends to a larger degree by fixing the new points.
    pub fn embed(&self, degree: usize) -> Result<Self> {
        if degree < self.degree() {
            return Err(invalid(format!("cannot embed degree {} into {degree}", self.degree())));
        }
        let mut images = self.images.clone();
        images.extend(self.degree() + 1..=degree);
        Ok(Permutation { images })
    }

    /// Moved points, ascending.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.degree()).filter(|&n| self.apply(n) != n).collect()
    }

    /// Disjoint cycles of length >= 2, each starting at its least point,
    /// sorted by least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree() + 1];
        let mut out = Vec::new();
        for start in 1..=self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut n = self.apply(start);
            while n != start {
                seen[n] = true;
                cycle.push(n);
                n = self.apply(n);
            }
            out.push(cycle);
        }
        out
    }

    pub fn format_cycles(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut s = String::new();
        for c in cycles {
            s.push('(');
            let body: Vec<String> = c.iter().map(|n| n.to_string()).collect();
            s.push_str(&body.join(","));
            s.push(')');
        }
        s
    }

    /// Parses disjoint cycle notation such as `(1,3)(4,6)`; `()` is the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        CycleParser { bytes: text.as_bytes(), pos: 0, degree }.parse()
    }
}

struct CycleParser<'a> {
    bytes: &'a [u8],
    pos: usize,
    degree: usize,
}

impl CycleParser<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a point"));
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        let n: usize = digits.parse().map_err(|_| Error::Parse { pos: start, msg: "point out of range".into() })?;
        if n == 0 || n > self.degree {
            return Err(Error::Parse { pos: start, msg: format!("point {n} outside [1,{}]", self.degree) });
        }
        Ok(n)
    }

    fn parse(mut self) -> Result<Permutation> {
        let mut images: Vec<usize> = (1..=self.degree).collect();
        let mut used = vec![false; self.degree + 1];
        self.skip_ws();
        if self.peek().is_none() {
            return Err(self.err("empty input; write () for the identity"));
        }
        // the identity
        let rest = &self.bytes[self.pos..];
        if rest.iter().filter(|b| !b.is_ascii_whitespace()).eq(b"()".iter()) {
            return Ok(Permutation { images });
        }
        loop {
            self.skip_ws();
            if self.peek().is_none() {
                break;
            }
            self.expect(b'(')?;
            let mut cycle = Vec::new();
            loop {
                let at = self.pos;
                let n = self.number()?;
                if std::mem::replace(&mut used[n], true) {
                    return Err(Error::Parse { pos: at, msg: format!("point {n} repeated") });
                }
                cycle.push(n);
                self.skip_ws();
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.err("expected ',' or ')'")),
                }
            }
            for (k, &n) in cycle.iter().enumerate() {
                images[n - 1] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_cycles())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.format_cycles(), self.degree())
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.format_cycles())
    }
}
