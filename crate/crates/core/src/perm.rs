//! Permutations stored as 0-based image arrays.
//!
//! Composition applies the right operand first: `p.compose(&q)` is the map
//! `x -> p(q(x))`. Every module in the crate relies on this convention.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u16).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n > u16::MAX as usize {
            return Err(Error::invalid(format!("degree {n} too large")));
        }
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::invalid(format!("{images:?} is not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|i| i as u16).collect(),
        })
    }

    /// Same as [`Permutation::from_images`] but with 1-based images, as in
    /// two-line notation.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::invalid("one-based images must be positive"));
        }
        Self::from_images(images.iter().map(|&i| i - 1).collect())
    }

    /// Parses disjoint-cycle notation with 1-based points, e.g. `"(1 6 7)(2 3)"`.
    /// Points may also be separated by commas.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        let mut rest = text.trim();
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                let tok: String = rest.chars().take_while(|c| *c != '(').collect();
                return Err(Error::parse(tok.trim(), "expected `(`"));
            }
            let close = match rest.find(')') {
                Some(i) => i,
                None => return Err(Error::parse(rest, "unclosed parenthesis")),
            };
            let body = &rest[1..close];
            if body.contains('(') {
                return Err(Error::parse(&rest[..=close], "nested parenthesis"));
            }
            let mut cycle = Vec::new();
            for tok in body.split(|c: char| c.is_whitespace() || c == ',') {
                if tok.is_empty() {
                    continue;
                }
                let point: usize = tok
                    .parse()
                    .map_err(|_| Error::parse(tok, "not a positive integer"))?;
                if point == 0 || point > degree {
                    return Err(Error::parse(tok, format!("point outside 1..={degree}")));
                }
                if used[point - 1] {
                    return Err(Error::parse(tok, "repeated point"));
                }
                used[point - 1] = true;
                cycle.push(point - 1);
            }
            for (i, &p) in cycle.iter().enumerate() {
                images[p] = cycle[(i + 1) % cycle.len()];
            }
            rest = rest[close + 1..].trim_start();
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// `x -> self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other
                .images
                .iter()
                .map(|&i| self.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u16; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u16;
        }
        Permutation { images: inv }
    }

    /// Disjoint cycles of length at least two, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Cycle lengths (fixed points included) sorted in decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut lens = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.apply(x);
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn order(&self) -> usize {
        self.cycle_type().into_iter().fold(1, lcm)
    }

    /// Restricts to the block of points `offset..offset + len`, which must be
    /// invariant.
    pub(crate) fn block(&self, offset: usize, len: usize) -> Permutation {
        Permutation {
            images: self.images[offset..offset + len]
                .iter()
                .map(|&i| i - offset as u16)
                .collect(),
        }
    }

    /// Disjoint union: `self` on the first block of points, `other` shifted
    /// after it.
    pub(crate) fn direct_sum(&self, other: &Permutation) -> Permutation {
        let shift = self.degree() as u16;
        let mut images = self.images.clone();
        images.extend(other.images.iter().map(|&i| i + shift));
        Permutation { images }
    }

    /// Embeds into a larger degree by fixing the new points.
    pub fn extend_to(&self, degree: usize) -> Permutation {
        let mut images = self.images.clone();
        images.extend(self.degree() as u16..degree as u16);
        Permutation { images }
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{}", self)
    }
}
