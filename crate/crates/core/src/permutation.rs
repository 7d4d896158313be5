//! Permutations of `{1, …, m}`.
//!
//! Products are taken left to right, matching word concatenation: in
//! `p.then(q)` the permutation `p` is applied first. With this convention
//! `(1 2)·(2n 1) = (1 2 2n)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    // images[i] = image of point i+1, stored 0-based
    images: Vec<u16>,
}

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Permutation { images: (0..m as u16).collect() }
    }

    /// Builds from 1-based one-line notation `[p(1), …, p(m)]`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m];
        let mut out = Vec::with_capacity(m);
        for &x in images {
            if x == 0 || x > m || seen[x - 1] {
                return Err(Error::OutOfRange { what: "permutation image", value: x, max: m });
            }
            seen[x - 1] = true;
            out.push((x - 1) as u16);
        }
        Ok(Permutation { images: out })
    }

    /// Builds from 1-based disjoint cycles, e.g. `&[&[1, 2, 6]]`.
    pub fn from_cycles(m: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut p = Self::identity(m);
        let mut touched = vec![false; m];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                let y = cycle[(i + 1) % cycle.len()];
                for &z in &[x, y] {
                    if z == 0 || z > m {
                        return Err(Error::OutOfRange { what: "cycle point", value: z, max: m });
                    }
                }
                if touched[x - 1] {
                    return Err(Error::OutOfRange { what: "repeated cycle point", value: x, max: m });
                }
                touched[x - 1] = true;
                p.images[x - 1] = (y - 1) as u16;
            }
        }
        Ok(p)
    }

    /// The transposition `(a b)`.
    pub fn transposition(m: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(m);
        p.images.swap(a - 1, b - 1);
        p
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `x`.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1] as usize + 1
    }

    pub fn preimage(&self, y: usize) -> usize {
        self.images.iter().position(|&v| v as usize == y - 1).expect("bijection") + 1
    }

    /// One-line notation, 1-based.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// Left-to-right product: apply `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation { images: self.images.iter().map(|&v| other.images[v as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u16; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize] = i as u16;
        }
        Permutation { images: inv }
    }

    /// Non-trivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let m = self.degree();
        let mut seen = vec![false; m];
        let mut out = Vec::new();
        for start in 0..m {
            if seen[start] || self.images[start] as usize == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Lexicographic rank in `S_m`, in `0..m!`.
    pub fn rank(&self) -> u64 {
        let m = self.degree();
        let mut rank = 0u64;
        let mut used = vec![false; m];
        for i in 0..m {
            let v = self.images[i] as usize;
            let smaller = (0..v).filter(|&u| !used[u]).count() as u64;
            rank = rank * (m - i) as u64 + smaller;
            used[v] = true;
        }
        rank
    }

    /// Inverse of [`rank`](Self::rank).
    pub fn unrank(m: usize, mut rank: u64) -> Permutation {
        let mut digits = vec![0usize; m];
        for i in (0..m).rev() {
            let base = (m - i) as u64;
            digits[i] = (rank % base) as usize;
            rank /= base;
        }
        let mut pool: Vec<u16> = (0..m as u16).collect();
        let images = digits.into_iter().map(|d| pool.remove(d)).collect();
        Permutation { images }
    }

    /// All of `S_m` in rank order.
    pub fn all(m: usize) -> impl Iterator<Item = Permutation> {
        (0..factorial(m)).map(move |r| Permutation::unrank(m, r))
    }
}

pub fn factorial(m: usize) -> u64 {
    (1..=m as u64).product()
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}
