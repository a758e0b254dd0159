//! Points of the wonderful model `Y_{Πₙ}` in point/line form
//! `ω = (x, H₁, l₁, …, H_t, l_t)`.
//!
//! `H₁` is the smallest lattice element containing `x`, each `lᵢ` is a line
//! orthogonal to `Hᵢ` inside `V`, and `Hᵢ₊₁` is the smallest lattice element
//! containing both `Hᵢ` and `lᵢ`. The chain stops once `⟨H_t, l_t⟩` lies in
//! no lattice element other than `V`. The `Hᵢ` are derived data: a point is
//! fully determined by `x` and the lines.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{IntEchelon, QLine, QSubspace, QVector};
use crate::partition::{building_set, partition_of_point, partition_of_subspace, SetPartition};
use crate::perm::Permutation;

/// One step `(Hᵢ, lᵢ)` of the chain.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ChainStep {
    pub partition: SetPartition,
    pub subspace: QSubspace,
    pub line: QLine,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ModelPoint {
    x: QVector,
    chain: Vec<ChainStep>,
}

/// Result of [`build_chain_reporting`].
#[derive(Clone, Debug)]
pub struct BuiltPoint {
    pub point: ModelPoint,
    /// Whether the final line was forced by a hyperplane `H_t` and filled in.
    pub auto_completed: bool,
}

/// Builds a model point from `x` and a sequence of lines. Each supplied line
/// is orthogonally projected onto `Hᵢ^⟂` (inside `V`). When the lines run out
/// while the current `H` is a hyperplane of `V`, the forced last line is
/// filled in.
pub fn build_chain(x: &QVector, lines: &[QVector]) -> Result<ModelPoint> {
    build_chain_reporting(x, lines).map(|b| b.point)
}

pub fn build_chain_reporting(x: &QVector, lines: &[QVector]) -> Result<BuiltPoint> {
    let n = x.dim();
    if !x.in_v() {
        return Err(Error::NotInV);
    }
    for l in lines {
        if l.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: l.dim() });
        }
    }
    let mut chain = Vec::new();
    let mut auto_completed = false;
    let mut current = partition_of_point(x);
    let mut supplied = lines.iter().enumerate();
    while !current.is_bottom() {
        let step = chain.len() + 1;
        let line = match supplied.next() {
            Some((index, l)) => {
                let projected = current.project_off(l);
                QLine::new(&projected).map_err(|_| Error::ZeroProjection { index })?
            }
            None if current.num_blocks() + 1 == n => {
                auto_completed = true;
                forced_line(&current)
            }
            None => return Err(Error::IncompleteChain { step }),
        };
        let subspace = current.subspace();
        let grown = subspace.with_vector(line.rep())?;
        let next = partition_of_subspace(&grown)?;
        chain.push(ChainStep { partition: current, subspace, line });
        current = next;
    }
    let unused = supplied.count();
    if unused > 0 {
        return Err(Error::SuperfluousLines { unused });
    }
    Ok(BuiltPoint { point: ModelPoint { x: x.clone(), chain }, auto_completed })
}

/// The unique line orthogonal to a hyperplane `H` of `V`. Such an `H` has
/// exactly one block `{i, j}` of size two.
fn forced_line(h: &SetPartition) -> QLine {
    let pair = h.blocks().into_iter().find(|b| b.len() == 2).expect("hyperplane has a 2-block");
    let mut e = vec![0i64; h.n()];
    e[pair[0]] = 1;
    e[pair[1]] = -1;
    QLine::from_ints(&e).expect("nonzero")
}

impl ModelPoint {
    pub fn n(&self) -> usize {
        self.x.dim()
    }

    pub fn x(&self) -> &QVector {
        &self.x
    }

    /// Length of the chain.
    pub fn t(&self) -> usize {
        self.chain.len()
    }

    pub fn chain(&self) -> &[ChainStep] {
        &self.chain
    }

    pub fn lines(&self) -> Vec<QLine> {
        self.chain.iter().map(|s| s.line.clone()).collect()
    }

    pub fn line_vectors(&self) -> Vec<QVector> {
        self.chain.iter().map(|s| s.line.rep().clone()).collect()
    }

    /// Re-checks every structural invariant of the encoding.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidModelPoint(msg.to_string()));
        if !self.x.in_v() {
            return Err(Error::NotInV);
        }
        let mut expected = partition_of_point(&self.x);
        for (i, step) in self.chain.iter().enumerate() {
            if step.partition != expected {
                return bad(&format!("H{} does not follow the growth law", i + 1));
            }
            if step.subspace != step.partition.subspace() {
                return bad("cached subspace disagrees with its partition");
            }
            if !step.line.rep().in_v() || step.partition.project_off(step.line.rep()) != *step.line.rep() {
                return bad(&format!("l{} is not orthogonal to H{} inside V", i + 1, i + 1));
            }
            let next = step.partition.meet(&partition_of_point(step.line.rep()))?;
            if next == step.partition {
                return bad("chain is not strictly increasing");
            }
            expected = next;
        }
        if !expected.is_bottom() {
            return bad("chain does not terminate");
        }
        Ok(())
    }

    /// `[H₁, …, H_t]`: the nested set whose open stratum contains this point.
    pub fn nested_stratum(&self) -> Vec<SetPartition> {
        self.chain.iter().map(|s| s.partition.clone()).collect()
    }

    /// The coordinate `ω_H = ⟨l_j, H⟩/H ∈ ℙ(V/H)`, where `j` is the largest
    /// index with `H_j ⊆ H` (`H₀ = {0}`, `l₀ = ⟨x⟩`). The class is represented
    /// by the orthogonal projection of `l_j` onto `H^⟂`.
    pub fn expand_coordinate(&self, h: &SetPartition) -> Result<(usize, QLine)> {
        if h.n() != self.n() {
            return Err(Error::GroundSetMismatch { left: self.n(), right: h.n() });
        }
        if h.is_bottom() {
            return Err(Error::UndefinedCoordinate);
        }
        let mut j = 0;
        for (i, step) in self.chain.iter().enumerate() {
            if h.leq(&step.partition)? {
                j = i + 1;
            } else {
                break;
            }
        }
        let v = if j == 0 { &self.x } else { self.chain[j - 1].line.rep() };
        let rep = QLine::new(&h.project_off(v)).map_err(|_| Error::UndefinedCoordinate)?;
        Ok((j, rep))
    }

    /// Action of a permutation; the chain is rebuilt from the moved point and
    /// lines and must reproduce the moved partitions.
    pub fn act(&self, g: &Permutation) -> ModelPoint {
        let x = g.act_vector(&self.x);
        let lines: Vec<QVector> = self.chain.iter().map(|s| g.act_vector(s.line.rep())).collect();
        let moved = build_chain(&x, &lines).expect("the action preserves valid model points");
        debug_assert!(moved.chain.iter().zip(&self.chain).all(|(a, b)| a.partition == g.act_partition(&b.partition)));
        moved
    }

    /// Divisor membership by the chain criterion: `ω ∈ D_G` iff `G` is one of
    /// the `Hᵢ`.
    pub fn in_divisor(&self, g: &SetPartition) -> bool {
        self.chain.iter().any(|s| &s.partition == g)
    }

    /// Divisor membership by coordinates: `ω ∈ D_G` iff `x ∈ G` and for every
    /// `H` with `H ≰ G` the coordinate `ω_H` lies in `ℙ(⟨G, H⟩/H)`.
    pub fn in_divisor_by_coordinates(&self, g: &SetPartition) -> Result<bool> {
        if g.n() != self.n() {
            return Err(Error::GroundSetMismatch { left: self.n(), right: g.n() });
        }
        if g.is_bottom() {
            return Ok(false);
        }
        let lattice = lattice(self.n());
        let coords = self.coordinates(&lattice)?;
        let index =
            lattice.iter().position(|(h, _, _)| h == g).expect("the building set contains every non-bottom partition");
        self.coordinate_test(&lattice, &coords, index)
    }

    /// Every `G` with `ω ∈ D_G` by the coordinate criterion, in building-set order.
    pub fn divisors_by_coordinates(&self) -> Result<Vec<SetPartition>> {
        let lattice = lattice(self.n());
        let coords = self.coordinates(&lattice)?;
        let mut out = Vec::new();
        for (i, (g, _, _)) in lattice.iter().enumerate() {
            if self.coordinate_test(&lattice, &coords, i)? {
                out.push(g.clone());
            }
        }
        Ok(out)
    }

    fn coordinates(&self, lattice: &[LatticeEntry]) -> Result<Vec<Coordinate>> {
        lattice
            .iter()
            .map(|(h, _, _)| {
                let (_, rep) = self.expand_coordinate(h)?;
                let ints = integer_rows(std::slice::from_ref(rep.rep()));
                Ok((rep, ints))
            })
            .collect()
    }

    fn coordinate_test(&self, lattice: &[LatticeEntry], coords: &[Coordinate], gi: usize) -> Result<bool> {
        let (g, gs, g_rows) = &lattice[gi];
        if !gs.contains_vector(&self.x)? {
            return Ok(false);
        }
        for ((h, hs, h_rows), (rep, rep_ints)) in lattice.iter().zip(coords) {
            if h.leq(g)? {
                continue;
            }
            let fast = match (g_rows, h_rows, rep_ints) {
                (Some(a), Some(b), Some(v)) => {
                    let rows: Vec<Vec<i128>> = a.iter().chain(b).cloned().collect();
                    IntEchelon::new(&rows).and_then(|e| e.contains(&v[0]))
                }
                _ => None,
            };
            let inside = match fast {
                Some(answer) => answer,
                None => gs.sum(hs)?.contains_line(rep)?,
            };
            if !inside {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `ω_H` with its integer form, when that fits.
type Coordinate = (QLine, Option<Vec<Vec<i128>>>);

type LatticeEntry = (SetPartition, QSubspace, Option<Vec<Vec<i128>>>);

/// The building set with subspaces and integer bases, computed once per `n`.
fn lattice(n: usize) -> Arc<Vec<LatticeEntry>> {
    static CACHE: OnceLock<Mutex<BTreeMap<usize, Arc<Vec<LatticeEntry>>>>> = OnceLock::new();
    let mut cache = CACHE.get_or_init(Default::default).lock().unwrap_or_else(|e| e.into_inner());
    cache
        .entry(n)
        .or_insert_with(|| {
            Arc::new(
                building_set(n)
                    .into_iter()
                    .map(|h| {
                        let hs = h.subspace();
                        let rows = integer_rows(&hs.basis());
                        (h, hs, rows)
                    })
                    .collect(),
            )
        })
        .clone()
}

fn integer_rows(vs: &[QVector]) -> Option<Vec<Vec<i128>>> {
    vs.iter().map(|v| v.integer_multiple().map(|r| r.into_iter().map(i128::from).collect())).collect()
}

/// JSON form `{ "n", "x", "lines" }`; partitions are derived on ingestion.
#[derive(Serialize, Deserialize)]
struct ModelPointJson {
    n: usize,
    x: QVector,
    lines: Vec<QVector>,
}

impl Serialize for ModelPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ModelPointJson { n: self.n(), x: self.x.clone(), lines: self.line_vectors() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ModelPoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = ModelPointJson::deserialize(deserializer)?;
        if raw.x.dim() != raw.n {
            return Err(de::Error::custom(format!("x has {} coordinates, expected {}", raw.x.dim(), raw.n)));
        }
        build_chain(&raw.x, &raw.lines).map_err(de::Error::custom)
    }
}
