//! Permutations of `{1..n}` and their action on vectors, lines, subspaces and
//! set partitions.
//!
//! The action on vectors is `σ(x) = (x_{σ(1)}, …, x_{σ(n)})`. Products are
//! defined so that the action is a homomorphism: `(σ * τ)(x) = σ(τ(x))`,
//! which in one-line notation means `(σ * τ)(k) = τ(σ(k))`.
//!
//! Internally everything is 0-based; `Display`, parsing and JSON are 1-based.

use std::fmt;
use std::ops::Mul;

use itertools::Itertools;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{QLine, QSubspace, QVector};
use crate::partition::SetPartition;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// From a 0-based one-line image array.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// From 1-based cycles, e.g. `&[&[1, 2], &[3, 4]]`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (&a, &b) in cycle.iter().zip(cycle.iter().cycle().skip(1)) {
                if a == 0 || a > n || b == 0 || b > n || touched[a - 1] {
                    return Err(Error::InvalidPermutation(format!("bad cycle {cycle:?} for n={n}")));
                }
                touched[a - 1] = true;
                images[a - 1] = b - 1;
            }
        }
        Self::from_images(images)
    }

    /// Parses cycle notation such as `"(1 2)(3 4)"` or `"()"`.
    pub fn parse_cycles(n: usize, s: &str) -> Result<Self> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        for chunk in s.split(')') {
            let chunk = chunk.trim();
            if chunk.is_empty() {
                continue;
            }
            let body =
                chunk.strip_prefix('(').ok_or_else(|| Error::Parse(format!("malformed cycle notation {s:?}")))?;
            let cycle = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad entry {t:?}"))))
                .collect::<Result<Vec<_>>>()?;
            cycles.push(cycle);
        }
        let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
        Self::from_cycles(n, &refs)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// 0-based image of `k`.
    pub fn image(&self, k: usize) -> usize {
        self.images[k]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// `self * g * self⁻¹`.
    pub fn conjugate(&self, g: &Permutation) -> Permutation {
        &(self * g) * &self.inverse()
    }

    /// Disjoint cycles of length at least 2, 0-based, each starting at its minimum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for start in 0..self.n() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut k = self.images[start];
            while k != start {
                seen[k] = true;
                cycle.push(k);
                k = self.images[k];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Cycle partition including fixed points.
    pub fn orbit_partition(&self) -> SetPartition {
        let mut labels: Vec<usize> = (0..self.n()).collect();
        for cycle in self.cycles() {
            for &k in &cycle {
                labels[k] = cycle[0];
            }
        }
        SetPartition::from_labels(&labels)
    }

    pub fn act_vector(&self, x: &QVector) -> QVector {
        let c = x.coords();
        QVector::new(self.images.iter().map(|&j| c[j].clone()).collect())
    }

    pub fn act_line(&self, l: &QLine) -> QLine {
        QLine::new(&self.act_vector(l.rep())).expect("permutations preserve nonzero vectors")
    }

    pub fn act_subspace(&self, s: &QSubspace) -> QSubspace {
        let images: Vec<QVector> = s.basis().iter().map(|b| self.act_vector(b)).collect();
        QSubspace::span(s.ambient_dim(), &images).expect("dimensions agree")
    }

    /// Image of a partition, compatible with `act_vector`:
    /// `partition_of_point(σ(x)) = σ.act_partition(partition_of_point(x))`.
    pub fn act_partition(&self, p: &SetPartition) -> SetPartition {
        let labels: Vec<usize> = self.images.iter().map(|&j| p.label(j)).collect();
        SetPartition::from_labels(&labels)
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.n(), rhs.n(), "permutations on different ground sets");
        Permutation { images: self.images.iter().map(|&k| rhs.images[k]).collect() }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "({})", c.iter().map(|k| k + 1).join(" "))?;
        }
        Ok(())
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Every permutation of `{1..n}` in lexicographic one-line order.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    (0..n).permutations(n).map(|images| Permutation { images })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_notation_round_trip() {
        let p = Permutation::parse_cycles(5, "(1 3)(2 5 4)").unwrap();
        assert_eq!(p.to_string(), "(1 3)(2 5 4)");
        assert_eq!(Permutation::parse_cycles(3, "()").unwrap(), Permutation::identity(3));
        assert!(Permutation::parse_cycles(3, "(1 4)").is_err());
        assert!(Permutation::parse_cycles(3, "(1 2)(2 3)").is_err());
    }

    #[test]
    fn action_is_a_homomorphism() {
        let x = QVector::from_ints(&[5, 7, 11, 13]);
        for s in all_permutations(4) {
            for t in all_permutations(4) {
                let lhs = (&s * &t).act_vector(&x);
                let rhs = s.act_vector(&t.act_vector(&x));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn literal_action_formula() {
        // σ(x) = (x_{σ(1)}, …, x_{σ(n)}) with σ = (1 2 3): σ(1)=2, σ(2)=3, σ(3)=1.
        let s = Permutation::parse_cycles(3, "(1 2 3)").unwrap();
        let x = QVector::from_ints(&[10, 20, 30]);
        assert_eq!(s.act_vector(&x), QVector::from_ints(&[20, 30, 10]));
    }

    #[test]
    fn inverse_and_identity() {
        for s in all_permutations(4) {
            assert!((&s * &s.inverse()).is_identity());
            assert!((&s.inverse() * &s).is_identity());
        }
        assert_eq!(all_permutations(5).count(), 120);
    }
}
