//! The partition lattice `Πₙ` and its correspondence with the intersection
//! lattice of the braid arrangement.
//!
//! Order convention: `p ≤ q` iff `q` coarsens `p`. The one-block partition
//! `1̂` is the top and corresponds to `{0}`; the all-singletons partition `0̂`
//! is the bottom and corresponds to all of `V`. Hence `p ≤ q` iff
//! `subspace_of(q) ⊆ subspace_of(p)`.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_traits::Zero;
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{q, QSubspace, QVector, Q};

/// A set partition of `{1..n}`, stored as a restricted growth string: element
/// `k` carries the index of its block, blocks numbered by first appearance.
/// Equality is therefore structural.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SetPartition {
    labels: Vec<usize>,
}

impl SetPartition {
    /// Canonicalizes arbitrary block labels.
    pub fn from_labels<T: Ord + Clone>(labels: &[T]) -> Self {
        let mut seen: BTreeMap<T, usize> = BTreeMap::new();
        let labels = labels
            .iter()
            .map(|l| {
                let next = seen.len();
                *seen.entry(l.clone()).or_insert(next)
            })
            .collect();
        SetPartition { labels }
    }

    /// From 1-based blocks, e.g. `&[&[1, 2], &[3]]`.
    pub fn from_blocks(n: usize, blocks: &[&[usize]]) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::Parse("empty block".into()));
            }
            for &k in *block {
                if k == 0 || k > n || labels[k - 1] != usize::MAX {
                    return Err(Error::Parse(format!("blocks {blocks:?} do not partition 1..{n}")));
                }
                labels[k - 1] = b;
            }
        }
        if labels.contains(&usize::MAX) {
            return Err(Error::Parse(format!("blocks {blocks:?} do not cover 1..{n}")));
        }
        Ok(Self::from_labels(&labels))
    }

    /// `0̂`: all singletons, corresponding to `V`.
    pub fn bottom(n: usize) -> Self {
        SetPartition { labels: (0..n).collect() }
    }

    /// `1̂`: a single block, corresponding to `{0}`.
    pub fn top(n: usize) -> Self {
        SetPartition { labels: vec![0; n] }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// Block index of the 0-based element `k`.
    pub fn label(&self, k: usize) -> usize {
        self.labels[k]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn num_blocks(&self) -> usize {
        self.labels.iter().max().map_or(0, |m| m + 1)
    }

    /// Blocks as sorted 0-based element lists, ordered by minimum element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (k, &l) in self.labels.iter().enumerate() {
            out[l].push(k);
        }
        out
    }

    pub fn is_bottom(&self) -> bool {
        self.num_blocks() == self.n()
    }

    pub fn is_top(&self) -> bool {
        self.num_blocks() <= 1
    }

    pub fn same_block(&self, i: usize, j: usize) -> bool {
        self.labels[i] == self.labels[j]
    }

    fn check_same(&self, other: &SetPartition) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::GroundSetMismatch { left: self.n(), right: other.n() });
        }
        Ok(())
    }

    /// Common refinement.
    pub fn meet(&self, other: &SetPartition) -> Result<SetPartition> {
        self.check_same(other)?;
        let pairs: Vec<(usize, usize)> = self.labels.iter().copied().zip(other.labels.iter().copied()).collect();
        Ok(Self::from_labels(&pairs))
    }

    /// `self ≤ other`, i.e. `self` refines `other`.
    pub fn leq(&self, other: &SetPartition) -> Result<bool> {
        self.check_same(other)?;
        let mut target = vec![usize::MAX; self.num_blocks()];
        for (k, &l) in self.labels.iter().enumerate() {
            if target[l] == usize::MAX {
                target[l] = other.labels[k];
            } else if target[l] != other.labels[k] {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `{x ∈ V : xᵢ = xⱼ whenever i, j share a block}`.
    pub fn subspace(&self) -> QSubspace {
        let n = self.n();
        let rows: Vec<QVector> = self
            .blocks()
            .iter()
            .map(|b| {
                let size = q(b.len() as i64);
                let nn = q(n as i64);
                let coords = (0..n)
                    .map(|k| if self.labels[k] == self.labels[b[0]] { &nn - &size } else { -size.clone() })
                    .collect();
                QVector::new(coords)
            })
            .collect();
        QSubspace::span(n, &rows).expect("rows have length n")
    }

    /// Orthogonal projection of `v` onto the complement of `subspace()` in
    /// `V`: subtract the block averages. The result has zero block sums.
    pub fn project_off(&self, v: &QVector) -> QVector {
        let mut sums = vec![Q::zero(); self.num_blocks()];
        let mut sizes = vec![0i64; self.num_blocks()];
        for (k, c) in v.coords().iter().enumerate() {
            sums[self.labels[k]] += c;
            sizes[self.labels[k]] += 1;
        }
        let avgs: Vec<Q> = sums.into_iter().zip(sizes).map(|(s, c)| s / q(c)).collect();
        QVector::new(v.coords().iter().enumerate().map(|(k, c)| c - &avgs[self.labels[k]]).collect())
    }
}

impl SetPartition {
    /// `L · project_off(v)` for an integer `v`, where `L` is the lcm of the
    /// block sizes. `None` on overflow.
    pub fn project_off_scaled(&self, v: &[i64]) -> Option<Vec<i128>> {
        let blocks = self.num_blocks();
        let mut sums = vec![0i128; blocks];
        let mut sizes = vec![0i128; blocks];
        for (k, &c) in v.iter().enumerate() {
            sums[self.labels[k]] = sums[self.labels[k]].checked_add(c as i128)?;
            sizes[self.labels[k]] += 1;
        }
        let lcm = sizes.iter().fold(1i128, |l, &s| l / num_integer::gcd(l, s) * s);
        v.iter()
            .enumerate()
            .map(|(k, &c)| {
                let b = self.labels[k];
                (c as i128).checked_mul(lcm)?.checked_sub(sums[b].checked_mul(lcm / sizes[b])?)
            })
            .collect()
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, b) in self.blocks().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{{}}}", b.iter().map(|k| k + 1).join(","))?;
        }
        write!(f, "}}")
    }
}

impl Serialize for SetPartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let blocks: Vec<Vec<usize>> =
            self.blocks().into_iter().map(|b| b.into_iter().map(|k| k + 1).collect()).collect();
        blocks.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SetPartition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let blocks = Vec::<Vec<usize>>::deserialize(deserializer)?;
        let n = blocks.iter().map(Vec::len).sum();
        let refs: Vec<&[usize]> = blocks.iter().map(Vec::as_slice).collect();
        SetPartition::from_blocks(n, &refs).map_err(de::Error::custom)
    }
}

/// Partition into classes of equal coordinates.
pub fn partition_of_point(x: &QVector) -> SetPartition {
    SetPartition::from_labels(x.coords())
}

/// The lattice element `{x ∈ V : xᵢ = xⱼ for i ~ j}`.
pub fn subspace_of(p: &SetPartition) -> QSubspace {
    p.subspace()
}

/// The finest partition whose subspace contains `s`: `i ~ j` iff `xᵢ = xⱼ`
/// for every `x ∈ s`.
pub fn partition_of_subspace(s: &QSubspace) -> Result<SetPartition> {
    if !s.is_inside_v() {
        return Err(Error::NotInsideV);
    }
    let basis = s.basis();
    let columns: Vec<Vec<Q>> =
        (0..s.ambient_dim()).map(|k| basis.iter().map(|b| b.coords()[k].clone()).collect()).collect();
    Ok(SetPartition::from_labels(&columns))
}

pub fn meet(p: &SetPartition, q: &SetPartition) -> Result<SetPartition> {
    p.meet(q)
}

pub fn leq(p: &SetPartition, q: &SetPartition) -> Result<bool> {
    p.leq(q)
}

/// True iff the partitions are pairwise comparable, i.e. form a chain. For the
/// maximal building set this is exactly the nested-set condition.
pub fn is_nested(chain: &[SetPartition]) -> bool {
    chain
        .iter()
        .tuple_combinations()
        .all(|(a, b)| a.n() == b.n() && (a.leq(b).unwrap_or(false) || b.leq(a).unwrap_or(false)))
}

/// Every set partition of `{1..n}` in restricted-growth-string order.
pub fn all_partitions(n: usize) -> Vec<SetPartition> {
    let mut out = Vec::new();
    if n == 0 {
        out.push(SetPartition { labels: Vec::new() });
        return out;
    }
    let mut rgs = vec![0usize; n];
    loop {
        out.push(SetPartition { labels: rgs.clone() });
        // Next restricted growth string: bump the rightmost position that
        // may still grow, then reset the tail.
        let mut i = n - 1;
        loop {
            if i == 0 {
                return out;
            }
            let max_prefix = rgs[..i].iter().copied().max().unwrap_or(0);
            if rgs[i] <= max_prefix {
                rgs[i] += 1;
                for r in rgs.iter_mut().skip(i + 1) {
                    *r = 0;
                }
                break;
            }
            i -= 1;
        }
    }
}

/// The building set `Πₙ ∖ {0̂}`.
pub fn building_set(n: usize) -> Vec<SetPartition> {
    all_partitions(n).into_iter().filter(|p| !p.is_bottom()).collect()
}
