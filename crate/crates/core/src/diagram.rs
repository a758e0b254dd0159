//! n-diagrams over t-families of cubes and their automorphism groups.
//!
//! An `I`-cube is the set of subsets of `I ⊆ {1..t}`. Index sets and vertices
//! are stored as bit masks over the directions (bit `j` is direction `j + 1`),
//! so a vertex of an `I`-cube is a submask of `I`. A flip `σ ∈ ℤ₂ᵗ` moves the
//! vertex `v` of an `I`-cube to `v ⊕ (σ ∧ I)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::f2::{self, F2Subspace, MAX_T};
use crate::linalg::{QLine, QVector, Q};
use crate::partition::SetPartition;
use crate::perm::Permutation;
use crate::stabilizer::ElemAbelian2Group;

/// Default ground-set bound for enumerating automorphisms.
pub const AUT_ENUM_BOUND: usize = 8;

/// The symmetry subgroup `G ⊆ ℤ₂ᵗ` of a diagram.
pub type SymmetrySubgroup = F2Subspace;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Cube {
    index_set: u64,
}

impl Cube {
    pub fn new(index_set: u64) -> Self {
        Cube { index_set }
    }

    /// From 1-based directions.
    pub fn from_directions(dirs: &[usize]) -> Self {
        Cube { index_set: dirs.iter().fold(0, |m, &d| m | 1 << (d - 1)) }
    }

    pub fn index_set(&self) -> u64 {
        self.index_set
    }

    pub fn dim(&self) -> usize {
        self.index_set.count_ones() as usize
    }

    /// 1-based directions, sorted.
    pub fn directions(&self) -> Vec<usize> {
        mask_to_dirs(self.index_set)
    }

    /// Every vertex, as submasks of the index set.
    pub fn vertices(&self) -> impl Iterator<Item = u64> {
        submasks(self.index_set)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CubeFamily {
    pub t: usize,
    pub cubes: Vec<Cube>,
}

/// A flip `σ ∈ ℤ₂ᵗ`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FlipVector {
    pub t: usize,
    pub bits: u64,
}

impl FlipVector {
    /// `σ_j = proj_{I(j)}(σ)`.
    pub fn project(&self, cube: &Cube) -> u64 {
        self.bits & cube.index_set
    }
}

impl fmt::Display for FlipVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&f2::bits_string(self.bits, self.t))
    }
}

/// An n-diagram: every `k` is sent to a cube `α(k)` and a vertex `v_k` of it.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Diagram {
    n: usize,
    family: CubeFamily,
    assign: Vec<(usize, u64)>,
}

fn mask_to_dirs(m: u64) -> Vec<usize> {
    (0..64).filter(|j| m >> j & 1 == 1).map(|j| j + 1).collect()
}

fn submasks(m: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == m { None } else { Some(((cur | !m).wrapping_add(1)) & m) };
        Some(cur)
    })
}

impl Diagram {
    pub fn new(n: usize, family: CubeFamily, assign: Vec<(usize, u64)>) -> Result<Self> {
        if family.t > MAX_T {
            return Err(Error::TooManyDirections { t: family.t, max: MAX_T });
        }
        if assign.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: assign.len() });
        }
        let width = if family.t == 64 { u64::MAX } else { (1u64 << family.t) - 1 };
        for cube in &family.cubes {
            if cube.index_set & !width != 0 {
                return Err(Error::Parse(format!("cube index set exceeds t = {}", family.t)));
            }
        }
        for (k, &(c, v)) in assign.iter().enumerate() {
            let cube = family
                .cubes
                .get(c)
                .ok_or_else(|| Error::Parse(format!("element {} assigned to missing cube {c}", k + 1)))?;
            if v & !cube.index_set != 0 {
                return Err(Error::Parse(format!("vertex of element {} is not inside its cube", k + 1)));
            }
        }
        Ok(Diagram { n, family, assign })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.family.t
    }

    pub fn family(&self) -> &CubeFamily {
        &self.family
    }

    pub fn cubes(&self) -> &[Cube] {
        &self.family.cubes
    }

    /// `(α(k), v_k)` for 0-based `k`.
    pub fn assignment(&self, k: usize) -> (usize, u64) {
        self.assign[k]
    }

    /// The fiber over the vertex `v` of cube `c`, 0-based and sorted.
    pub fn fiber(&self, c: usize, v: u64) -> Vec<usize> {
        (0..self.n).filter(|&k| self.assign[k] == (c, v)).collect()
    }

    /// The fiber over a whole cube.
    pub fn cube_fiber(&self, c: usize) -> Vec<usize> {
        (0..self.n).filter(|&k| self.assign[k].0 == c).collect()
    }

    /// Nonempty vertex fibers of every cube, keyed by `(cube, vertex)`.
    fn fibers(&self) -> BTreeMap<(usize, u64), Vec<usize>> {
        let mut out: BTreeMap<(usize, u64), Vec<usize>> = BTreeMap::new();
        for (k, &key) in self.assign.iter().enumerate() {
            out.entry(key).or_default().push(k);
        }
        out
    }

    /// `ρ(D)`: the nonempty vertex fibers as a set partition.
    pub fn fiber_partition(&self) -> SetPartition {
        let keys: Vec<(usize, u64)> = self.assign.clone();
        let labels: Vec<usize> = keys.iter().map(|key| keys.iter().position(|k| k == key).unwrap()).collect();
        SetPartition::from_labels(&labels)
    }

    /// Drops cubes with empty fibers and orders the remaining cubes by their
    /// smallest element. Directions are left untouched.
    pub fn canonicalize(&self) -> Diagram {
        let mut order: Vec<usize> = Vec::new();
        for &(c, _) in &self.assign {
            if !order.contains(&c) {
                order.push(c);
            }
        }
        let cubes = order.iter().map(|&c| self.family.cubes[c]).collect();
        let assign = self.assign.iter().map(|&(c, v)| (order.iter().position(|&o| o == c).unwrap(), v)).collect();
        Diagram { n: self.n, family: CubeFamily { t: self.family.t, cubes }, assign }
    }

    /// Every cube has the same fiber cardinality over all of its vertices.
    pub fn is_reduced(&self) -> bool {
        let fibers = self.fibers();
        self.family.cubes.iter().enumerate().all(|(c, cube)| {
            let sizes: Vec<usize> = fibers.iter().filter(|((fc, _), _)| *fc == c).map(|(_, f)| f.len()).collect();
            sizes.is_empty()
                || (cube.dim() < 64 && sizes.len() as u64 == 1u64 << cube.dim() && sizes.iter().all(|&s| s == sizes[0]))
        })
    }

    /// `G = {σ : |D⁻¹(K,v)| = |D⁻¹(K, v ⊕ σ_K)| for all K, v}`.
    ///
    /// Computed cube by cube: the admissible flips of a single cube form a
    /// subgroup `S_K` of `ℤ₂^{I(K)}`, and `G` is the intersection of their
    /// preimages in `ℤ₂ᵗ`. Cardinality matching is also sufficient, since
    /// fiber-wise bijections then assemble into an automorphism.
    pub fn symmetry_group(&self) -> SymmetrySubgroup {
        let t = self.family.t;
        let fibers = self.fibers();
        let mut constraints = F2Subspace::zero(t);
        for (c, cube) in self.family.cubes.iter().enumerate() {
            let sizes: BTreeMap<u64, usize> =
                fibers.iter().filter(|((fc, _), _)| *fc == c).map(|(&(_, v), f)| (v, f.len())).collect();
            let Some((&v0, &s0)) = sizes.iter().next() else { continue };
            let local = F2Subspace::span(
                t,
                sizes.keys().map(|&w| v0 ^ w).filter(|&s| {
                    s0 == sizes[&(v0 ^ s)] && sizes.iter().all(|(&v, &sz)| sizes.get(&(v ^ s)) == Some(&sz))
                }),
            );
            // Annihilator of S_K inside the coordinates of I(K).
            let on_cube = local.annihilator().basis().iter().map(|&w| w & cube.index_set).collect::<Vec<_>>();
            constraints = constraints.sum(&F2Subspace::span(t, on_cube));
        }
        constraints.annihilator()
    }

    /// The flips `proj_K(σ)` that leave every vertex of cube `c` fixed, as a
    /// subspace of `G`.
    fn orbit_kernel(&self, g: &F2Subspace, c: usize) -> F2Subspace {
        let outside = F2Subspace::span(
            self.family.t,
            (0..self.family.t).map(|j| 1u64 << j).filter(|b| b & self.family.cubes[c].index_set == 0),
        );
        g.intersect(&outside)
    }

    /// Splits every cube into orbits of `G` and re-coordinatises them over a
    /// basis of `G` adapted to all orbit kernels. The result is reduced, has
    /// no more directions than `self`, and the same automorphism group.
    ///
    /// Fails with `IncompatibleOrbits` when the orbit kernels admit no common
    /// adapted basis; then no re-coordinatisation of this kind exists.
    pub fn reduce(&self) -> Result<Diagram> {
        let d = self.canonicalize();
        let g = d.symmetry_group();
        let kernels: Vec<F2Subspace> = (0..d.cubes().len()).map(|c| d.orbit_kernel(&g, c)).collect();
        let basis = f2::adapted_basis(&g, &kernels).ok_or(Error::IncompatibleOrbits)?;
        let used: Vec<u64> = basis.into_iter().filter(|&b| kernels.iter().any(|k| !k.contains(b))).collect();
        let new_t = used.len();

        let fibers = d.fibers();
        let mut cubes: Vec<Cube> = Vec::new();
        let mut assign = vec![(0usize, 0u64); d.n];
        for (c, cube) in d.cubes().iter().enumerate() {
            let dirs: Vec<usize> = (0..new_t).filter(|&j| !kernels[c].contains(used[j])).collect();
            let moves: Vec<u64> = dirs.iter().map(|&j| used[j] & cube.index_set).collect();
            let new_index = dirs.iter().fold(0u64, |m, &j| m | 1 << j);
            let mut placed: BTreeSet<u64> = BTreeSet::new();
            for (&(fc, v), _) in fibers.range((c, 0)..=(c, u64::MAX)) {
                debug_assert_eq!(fc, c);
                if placed.contains(&v) {
                    continue;
                }
                let orbit: Vec<u64> = (0u64..1 << moves.len()).map(|s| v ^ f2::combine(&moves, s)).collect();
                let base = *orbit.iter().min().unwrap();
                let cube_id = cubes.len();
                cubes.push(Cube::new(new_index));
                for s in 0u64..1 << moves.len() {
                    let w = base ^ f2::combine(&moves, s);
                    placed.insert(w);
                    let coords =
                        dirs.iter().enumerate().filter(|(i, _)| s >> i & 1 == 1).fold(0u64, |m, (_, &j)| m | 1 << j);
                    if let Some(f) = fibers.get(&(c, w)) {
                        for &k in f {
                            assign[k] = (cube_id, coords);
                        }
                    }
                }
            }
        }
        Ok(Diagram { n: d.n, family: CubeFamily { t: new_t, cubes }, assign }.canonicalize())
    }

    /// Whether `π` satisfies the automorphism definition directly: it keeps
    /// every element in its cube and moves vertices by one common flip.
    pub fn is_automorphism(&self, pi: &Permutation) -> bool {
        self.realized_flip(pi).is_some()
    }

    /// The common flip by which `π` moves vertices, restricted to
    /// [`Diagram::support`]; `None` if `π` is not an automorphism.
    pub fn realized_flip(&self, pi: &Permutation) -> Option<u64> {
        if pi.n() != self.n {
            return None;
        }
        let mut known = 0u64;
        let mut sigma = 0u64;
        for k in 0..self.n {
            let (c, v) = self.assign[k];
            let (c2, w) = self.assign[pi.image(k)];
            if c != c2 {
                return None;
            }
            let i = self.family.cubes[c].index_set;
            let flip = v ^ w;
            if (sigma ^ flip) & known & i != 0 {
                return None;
            }
            sigma |= flip & !known;
            known |= i;
        }
        Some(sigma)
    }

    /// Directions of the cubes with nonempty fibers.
    pub fn support(&self) -> u64 {
        self.assign.iter().fold(0, |m, &(c, _)| m | self.family.cubes[c].index_set)
    }

    /// `Aut(D)` by scanning all of `Sₙ` with [`Diagram::is_automorphism`].
    pub fn aut_brute(&self) -> Result<BTreeSet<Permutation>> {
        if self.n > AUT_ENUM_BOUND {
            return Err(Error::GroundSetTooLarge { n: self.n, bound: AUT_ENUM_BOUND });
        }
        Ok(crate::perm::all_permutations(self.n).filter(|p| self.is_automorphism(p)).collect())
    }

    /// `Aut(D)` by enumeration: every `σ ∈ G` combined with every choice of
    /// fiber-wise bijections realising it.
    pub fn aut_elements(&self) -> Result<BTreeSet<Permutation>> {
        self.aut_elements_bounded(AUT_ENUM_BOUND)
    }

    pub fn aut_elements_bounded(&self, bound: usize) -> Result<BTreeSet<Permutation>> {
        if self.n > bound {
            return Err(Error::GroundSetTooLarge { n: self.n, bound });
        }
        let fibers = self.fibers();
        let mut out = BTreeSet::new();
        for sigma in self.symmetry_group().elements() {
            let pairs: Vec<(&Vec<usize>, &Vec<usize>)> = fibers
                .iter()
                .map(|(&(c, v), src)| (src, &fibers[&(c, v ^ (sigma & self.family.cubes[c].index_set))]))
                .collect();
            let choices: Vec<Vec<Vec<usize>>> =
                pairs.iter().map(|(_, dst)| dst.iter().copied().permutations(dst.len()).collect()).collect();
            for pick in choices.iter().multi_cartesian_product() {
                let mut images = vec![0; self.n];
                for ((src, _), dst) in pairs.iter().zip(pick) {
                    for (&a, &b) in src.iter().zip(dst) {
                        images[a] = b;
                    }
                }
                out.insert(Permutation::from_images(images).expect("fiber bijections assemble a bijection"));
            }
            if pairs.is_empty() {
                out.insert(Permutation::identity(self.n));
            }
        }
        Ok(out)
    }

    /// `Aut(D) ≅ ℤ₂ʰ` read off a reduced diagram whose vertex fibers have at
    /// most two elements, at most one fiber having two.
    pub fn aut_structured(&self) -> Result<ElemAbelian2Group> {
        let d = self.canonicalize();
        let fibers = d.fibers();
        let mut pair: Option<(usize, usize)> = None;
        for f in fibers.values() {
            match f.len() {
                1 => {}
                2 if pair.is_none() => pair = Some((f[0], f[1])),
                size => return Err(Error::FiberTooLarge { size }),
            }
        }
        if !d.is_reduced() {
            return Err(Error::NotReduced);
        }
        let g = d.symmetry_group();
        let trivial = (0..d.cubes().len()).map(|c| d.orbit_kernel(&g, c)).fold(g.clone(), |acc, k| acc.intersect(&k));
        let realise = |sigma: u64| -> Permutation {
            let images = (0..d.n)
                .map(|k| {
                    let (c, v) = d.assign[k];
                    let target = &fibers[&(c, v ^ (sigma & d.family.cubes[c].index_set))];
                    if target.len() == 1 {
                        target[0]
                    } else {
                        k
                    }
                })
                .collect();
            Permutation::from_images(images).expect("singleton fibers give a bijection")
        };
        let mut span = trivial;
        let mut generators = Vec::new();
        for &b in g.basis() {
            if !span.contains(b) {
                span = span.sum(&F2Subspace::span(g.t(), [b]));
                generators.push(realise(b));
            }
        }
        if let Some((a, b)) = pair {
            let mut images: Vec<usize> = (0..d.n).collect();
            images.swap(a, b);
            generators.push(Permutation::from_images(images).expect("transposition"));
        }
        generators.sort();
        Ok(ElemAbelian2Group::new(d.n, generators))
    }
}

/// One `∅`-cube per class of equal coordinates.
pub fn diagram_from_point(x: &QVector) -> Diagram {
    let p = crate::partition::partition_of_point(x);
    let family = CubeFamily { t: 0, cubes: vec![Cube::new(0); p.num_blocks()] };
    let assign = (0..x.dim()).map(|k| (p.label(k), 0)).collect();
    Diagram { n: x.dim(), family, assign }
}

/// A diagram over one direction whose automorphisms are the permutations
/// sending the representative `v` of `l` to `±v`. Each value class `a > 0`
/// is paired with the class of `−a` in a 1-cube (the positive class at `∅`);
/// the zero class is an `∅`-cube. If some nonzero class has no partner of
/// the same size, every class becomes an `∅`-cube instead.
pub fn diagram_from_line(l: &QLine) -> Diagram {
    let v = l.rep();
    let n = v.dim();
    let mut classes: BTreeMap<Q, Vec<usize>> = BTreeMap::new();
    for (k, c) in v.coords().iter().enumerate() {
        classes.entry(c.clone()).or_default().push(k);
    }
    let zero = Q::from_integer(0.into());
    let paired = classes.iter().all(|(a, ks)| *a == zero || classes.get(&-a.clone()).map(Vec::len) == Some(ks.len()));

    let mut cube_of_class: BTreeMap<Q, (u64, u64)> = BTreeMap::new();
    let mut owner: Vec<Q> = Vec::new();
    for k in 0..n {
        let a = &v.coords()[k];
        if cube_of_class.contains_key(a) {
            continue;
        }
        if paired && *a != zero {
            let pos = if *a > zero { a.clone() } else { -a.clone() };
            owner.push(pos.clone());
            cube_of_class.insert(pos.clone(), (1, 0));
            cube_of_class.insert(-pos, (1, 1));
        } else {
            owner.push(a.clone());
            cube_of_class.insert(a.clone(), (0, 0));
        }
    }
    let cubes = owner.iter().map(|a| Cube::new(cube_of_class[a].0)).collect();
    let assign = v
        .coords()
        .iter()
        .map(|a| {
            let key = if cube_of_class[a].0 == 1 && *a < zero { -a.clone() } else { a.clone() };
            (owner.iter().position(|o| *o == key).unwrap(), cube_of_class[a].1)
        })
        .collect();
    Diagram { n, family: CubeFamily { t: 1, cubes }, assign }
}

/// `D₁ ∩ D₂`: cube `M_{i,j}` has index set `I₁(i) ∪ (I₂(j) + t₁)`, and `k`
/// sits at `v_k⁽¹⁾ ∪ (v_k⁽²⁾ + t₁)` on `M_{α₁(k),α₂(k)}`. All `p₁·p₂` cubes
/// are kept; use [`Diagram::canonicalize`] to drop the empty ones.
pub fn intersect_diagrams(d1: &Diagram, d2: &Diagram) -> Result<Diagram> {
    if d1.n != d2.n {
        return Err(Error::GroundSetMismatch { left: d1.n, right: d2.n });
    }
    let t1 = d1.family.t;
    let t = t1 + d2.family.t;
    if t > MAX_T {
        return Err(Error::TooManyDirections { t, max: MAX_T });
    }
    let shift = |m: u64| if t1 == 64 { 0 } else { m << t1 };
    let p2 = d2.family.cubes.len();
    let cubes = d1
        .family
        .cubes
        .iter()
        .cartesian_product(&d2.family.cubes)
        .map(|(a, b)| Cube::new(a.index_set | shift(b.index_set)))
        .collect();
    let assign =
        d1.assign.iter().zip(&d2.assign).map(|(&(c1, v1), &(c2, v2))| (c1 * p2 + c2, v1 | shift(v2))).collect();
    Ok(Diagram { n: d1.n, family: CubeFamily { t, cubes }, assign })
}

#[derive(Serialize, Deserialize)]
struct CubeJson {
    #[serde(rename = "I")]
    index_set: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct DiagramJson {
    n: usize,
    t: usize,
    cubes: Vec<CubeJson>,
    assign: Vec<(usize, Vec<usize>)>,
}

impl Serialize for Diagram {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        DiagramJson {
            n: self.n,
            t: self.family.t,
            cubes: self.family.cubes.iter().map(|c| CubeJson { index_set: c.directions() }).collect(),
            assign: self.assign.iter().map(|&(c, v)| (c, mask_to_dirs(v))).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Diagram {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = DiagramJson::deserialize(deserializer)?;
        let check = |dirs: &[usize]| -> std::result::Result<u64, D::Error> {
            dirs.iter().try_fold(0u64, |m, &d| {
                if d == 0 || d > raw.t || d > MAX_T {
                    Err(de::Error::custom(format!("direction {d} outside 1..={}", raw.t)))
                } else {
                    Ok(m | 1 << (d - 1))
                }
            })
        };
        let cubes =
            raw.cubes.iter().map(|c| check(&c.index_set).map(Cube::new)).collect::<std::result::Result<_, _>>()?;
        let assign =
            raw.assign.iter().map(|(c, v)| check(v).map(|m| (*c, m))).collect::<std::result::Result<_, _>>()?;
        Diagram::new(raw.n, CubeFamily { t: raw.t, cubes }, assign).map_err(de::Error::custom)
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}-diagram over {} direction(s)", self.n, self.family.t)?;
        let fibers = self.fibers();
        for (c, cube) in self.family.cubes.iter().enumerate() {
            let dirs = cube.directions().iter().join(",");
            let parts = cube
                .vertices()
                .filter_map(|v| fibers.get(&(c, v)).map(|ks| (v, ks)))
                .map(|(v, ks)| {
                    format!("{{{}}}:{{{}}}", mask_to_dirs(v).iter().join(","), ks.iter().map(|k| k + 1).join(","))
                })
                .join(" ");
            writeln!(f, "  K{} I={{{}}} {}", c + 1, dirs, parts)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(xs: &[i64]) -> QLine {
        QLine::from_ints(xs).unwrap()
    }

    fn perms(n: usize, cycles: &[&str]) -> BTreeSet<Permutation> {
        cycles.iter().map(|c| Permutation::parse_cycles(n, c).unwrap()).collect()
    }

    fn sizes(d: &Diagram) -> Vec<Vec<usize>> {
        d.cubes().iter().enumerate().map(|(c, cube)| cube.vertices().map(|v| d.fiber(c, v).len()).collect()).collect()
    }

    #[test]
    fn submask_enumeration() {
        assert_eq!(submasks(0b101).collect::<Vec<_>>(), vec![0, 1, 4, 5]);
        assert_eq!(submasks(0).collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn from_point_examples() {
        let d = diagram_from_point(&QVector::from_ints(&[1, 1, -2]));
        assert_eq!(d.cubes().len(), 2);
        assert_eq!(d.cube_fiber(0), vec![0, 1]);
        assert_eq!(d.aut_elements().unwrap(), perms(3, &["()", "(1 2)"]));
        assert_eq!(diagram_from_point(&QVector::from_ints(&[0, 0, 0, 0])).cubes().len(), 1);
        assert_eq!(diagram_from_point(&QVector::from_ints(&[1, 2, -3])).cubes().len(), 3);
    }

    #[test]
    fn from_line_examples() {
        let d = diagram_from_line(&line(&[1, -1, 0]));
        assert_eq!(d.cubes(), &[Cube::new(1), Cube::new(0)]);
        assert_eq!(d.fiber(0, 0), vec![0]);
        assert_eq!(d.fiber(0, 1), vec![1]);
        assert_eq!(d.aut_elements().unwrap(), perms(3, &["()", "(1 2)"]));

        let d = diagram_from_line(&line(&[1, 1, -1, -1]));
        assert_eq!(d.cubes(), &[Cube::new(1)]);
        assert_eq!(d.aut_elements().unwrap().len(), 8);

        let d = diagram_from_line(&line(&[1, 1, -2]));
        assert_eq!(d.cubes(), &[Cube::new(0), Cube::new(0)]);
        assert_eq!(d.aut_elements().unwrap(), perms(3, &["()", "(1 2)"]));
    }

    #[test]
    fn intersection_example() {
        let d1 = diagram_from_line(&line(&[1, 1, -1, -1]));
        let d2 = diagram_from_line(&line(&[1, -1, 1, -1]));
        let d = intersect_diagrams(&d1, &d2).unwrap().canonicalize();
        assert_eq!(d.t(), 2);
        assert_eq!(d.cubes(), &[Cube::new(0b11)]);
        assert_eq!(d.fiber(0, 0b00), vec![0]);
        assert_eq!(d.fiber(0, 0b01), vec![2]);
        assert_eq!(d.fiber(0, 0b10), vec![1]);
        assert_eq!(d.fiber(0, 0b11), vec![3]);
        assert!(d.fiber_partition().is_bottom());
        assert_eq!(d.aut_elements().unwrap(), perms(4, &["()", "(1 2)(3 4)", "(1 3)(2 4)", "(1 4)(2 3)"]));
        let g = d.aut_structured().unwrap();
        assert_eq!(g.rank(), 2);
        assert_eq!(
            g.generators(),
            &[Permutation::parse_cycles(4, "(1 2)(3 4)").unwrap(), Permutation::parse_cycles(4, "(1 3)(2 4)").unwrap(),]
        );
    }

    #[test]
    fn intersecting_with_the_origin_relabels() {
        let d = diagram_from_line(&line(&[2, 1, -1, -2]));
        let o = diagram_from_point(&QVector::from_ints(&[0, 0, 0, 0]));
        let both = intersect_diagrams(&d, &o).unwrap();
        assert_eq!(both.fiber_partition(), d.fiber_partition());
        assert_eq!(both.aut_elements().unwrap(), d.aut_elements().unwrap());
    }

    #[test]
    fn symmetry_group_examples() {
        assert_eq!(diagram_from_line(&line(&[1, -1, 0])).symmetry_group(), F2Subspace::full(1));
        let unbalanced =
            Diagram::new(3, CubeFamily { t: 1, cubes: vec![Cube::new(1)] }, vec![(0, 0), (0, 0), (0, 1)]).unwrap();
        assert!(unbalanced.symmetry_group().is_zero());

        let parts = [
            diagram_from_point(&QVector::from_ints(&[0, 0, 0, 0])),
            diagram_from_line(&line(&[1, 1, -1, -1])),
            diagram_from_line(&line(&[1, -1, 0, 0])),
            diagram_from_line(&line(&[0, 0, 1, -1])),
        ];
        let d = parts[1..].iter().fold(parts[0].clone(), |acc, p| intersect_diagrams(&acc, p).unwrap());
        assert_eq!(d.t(), 3);
        let g = d.symmetry_group();
        assert_eq!(g.dim(), 2);
        assert!(g.elements().all(|s| s & 1 == 0));
    }

    #[test]
    fn symmetry_group_matches_full_enumeration() {
        let d = Diagram::new(
            6,
            CubeFamily { t: 3, cubes: vec![Cube::new(0b011), Cube::new(0b110)] },
            vec![(0, 0b00), (0, 0b11), (0, 0b01), (1, 0b000), (1, 0b110), (1, 0b010)],
        )
        .unwrap();
        let fibers = d.fibers();
        let size = |c: usize, v: u64| fibers.get(&(c, v)).map_or(0, Vec::len);
        let brute: Vec<u64> = (0..8)
            .filter(|&s| {
                d.cubes()
                    .iter()
                    .enumerate()
                    .all(|(c, cube)| cube.vertices().all(|v| size(c, v) == size(c, v ^ (s & cube.index_set()))))
            })
            .collect();
        assert_eq!(d.symmetry_group(), F2Subspace::span(3, brute));
    }

    #[test]
    fn reduce_examples() {
        // 1-cube with fiber sizes (2,1) plus an ∅-cube.
        let d = Diagram::new(
            4,
            CubeFamily { t: 1, cubes: vec![Cube::new(1), Cube::new(0)] },
            vec![(0, 0), (0, 0), (0, 1), (1, 0)],
        )
        .unwrap();
        let r = d.reduce().unwrap();
        assert_eq!(r.t(), 0);
        assert_eq!(r.cubes(), &[Cube::new(0); 3]);
        assert_eq!(r.aut_elements().unwrap(), d.aut_elements().unwrap());

        // 2-cube with fiber sizes ∅:1, {1}:1, {2}:2, {1,2}:2.
        let d = Diagram::new(
            6,
            CubeFamily { t: 2, cubes: vec![Cube::new(0b11)] },
            vec![(0, 0b00), (0, 0b01), (0, 0b10), (0, 0b10), (0, 0b11), (0, 0b11)],
        )
        .unwrap();
        assert_eq!(d.symmetry_group(), F2Subspace::span(2, [0b01]));
        let r = d.reduce().unwrap();
        assert_eq!(r.t(), 1);
        assert!(r.is_reduced());
        assert_eq!(sizes(&r), vec![vec![1, 1], vec![2, 2]]);
        assert_eq!(r.aut_elements().unwrap(), d.aut_elements().unwrap());
        assert_eq!(r.reduce().unwrap(), r);
    }

    #[test]
    fn orbit_kernels_without_common_basis() {
        // G is the even-weight plane of ℤ₂³; its three lines are orbit kernels.
        let mut assign = vec![(0, 0b000), (0, 0b011), (0, 0b101), (0, 0b110)];
        for c in 1..=3 {
            assign.push((c, 0));
            assign.push((c, 1 << (c - 1)));
        }
        let cubes = vec![Cube::new(0b111), Cube::new(0b001), Cube::new(0b010), Cube::new(0b100)];
        let d = Diagram::new(10, CubeFamily { t: 3, cubes }, assign).unwrap();
        assert_eq!(d.symmetry_group(), F2Subspace::span(3, [0b011, 0b110]));
        assert_eq!(d.reduce(), Err(Error::IncompatibleOrbits));
    }

    #[test]
    fn aut_structured_examples() {
        let d = Diagram::new(2, CubeFamily { t: 0, cubes: vec![Cube::new(0)] }, vec![(0, 0), (0, 0)]).unwrap();
        let g = d.aut_structured().unwrap();
        assert_eq!(g.rank(), 1);
        assert_eq!(g.generators(), &[Permutation::parse_cycles(2, "(1 2)").unwrap()]);

        let big = diagram_from_point(&QVector::from_ints(&[0, 0, 0]));
        assert_eq!(big.aut_structured(), Err(Error::FiberTooLarge { size: 3 }));

        let unreduced =
            Diagram::new(3, CubeFamily { t: 1, cubes: vec![Cube::new(1)] }, vec![(0, 0), (0, 0), (0, 1)]).unwrap();
        assert_eq!(unreduced.aut_structured(), Err(Error::NotReduced));
    }

    #[test]
    fn is_automorphism_rejects_inconsistent_flips() {
        let d =
            intersect_diagrams(&diagram_from_line(&line(&[1, -1, 0, 0])), &diagram_from_line(&line(&[0, 0, 1, -1])))
                .unwrap();
        // (1 2) flips direction 1 only; (1 2)(3 4) flips both.
        assert!(d.is_automorphism(&Permutation::parse_cycles(4, "(1 2)").unwrap()));
        assert!(d.is_automorphism(&Permutation::parse_cycles(4, "(1 2)(3 4)").unwrap()));
        assert!(!d.is_automorphism(&Permutation::parse_cycles(4, "(1 3)").unwrap()));
        assert_eq!(d.aut_brute().unwrap(), d.aut_elements().unwrap());
    }

    #[test]
    fn json_round_trip() {
        let d = intersect_diagrams(&diagram_from_line(&line(&[1, -1, 0])), &diagram_from_line(&line(&[1, 1, -2])))
            .unwrap()
            .canonicalize();
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(json, r#"{"n":3,"t":2,"cubes":[{"I":[1]},{"I":[]}],"assign":[[0,[]],[0,[1]],[1,[]]]}"#);
        let back: Diagram = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d);
        assert!(serde_json::from_str::<Diagram>(r#"{"n":1,"t":1,"cubes":[{"I":[2]}],"assign":[[0,[]]]}"#).is_err());
    }
}
