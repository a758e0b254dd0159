//! Eigenspace loci `S(π)`, the added strata `B(W)`, and the refined
//! stratification that separates stabilizers.
//!
//! For `π ∈ Sₙ` and a lattice element `G`, `S(π,G) = (T₁(π) ∪ T₋₁(π)) ∩ G^⟂`
//! is a union of at most two subspaces. The stratum attached to `(π, G)` is
//! `B(W)` for the family `W = {(T_ε(π) ∩ G^⟂) ⊕ G}`; a piece with
//! `T_ε(π) ∩ G^⟂ = {0}` contributes `G` itself.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Equations, IntEchelon, QSubspace, QVector};
use crate::model::ModelPoint;
use crate::partition::{building_set, SetPartition};
use crate::perm::{all_permutations, Permutation};
use crate::stabilizer::brute_stabilizer;

/// Ground-set bound for enumerating `Sₙ × Πₙ`.
pub const STRATA_BOUND: usize = 8;

/// `(T₁(π), T₋₁(π))`: the `±1` eigenspaces of the permutation matrix of `π`
/// inside `V`.
pub fn eigenspaces(pi: &Permutation) -> (QSubspace, QSubspace) {
    let n = pi.n();
    let eigen = |sign: i64| {
        let mut rows: Vec<QVector> = (0..n)
            .map(|k| {
                let mut r = vec![0i64; n];
                r[pi.image(k)] += 1;
                r[k] -= sign;
                QVector::from_ints(&r)
            })
            .collect();
        rows.push(QVector::from_ints(&vec![1; n]));
        QSubspace::span(n, &rows).expect("dimensions agree").annihilator()
    };
    (eigen(1), eigen(-1))
}

/// A union (not a span) of subspaces.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct SubspaceUnion {
    pieces: Vec<QSubspace>,
}

impl SubspaceUnion {
    pub fn new(pieces: impl IntoIterator<Item = QSubspace>) -> Self {
        let pieces: BTreeSet<QSubspace> = pieces.into_iter().collect();
        SubspaceUnion { pieces: pieces.into_iter().collect() }
    }

    pub fn pieces(&self) -> &[QSubspace] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn contains_vector(&self, v: &QVector) -> Result<bool> {
        for p in &self.pieces {
            if p.contains_vector(v)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Image under a permutation.
    pub fn act(&self, g: &Permutation) -> SubspaceUnion {
        SubspaceUnion::new(self.pieces.iter().map(|p| g.act_subspace(p)))
    }
}

/// `S(π, G)` with zero pieces dropped; empty when `S(π, G) = {0}`.
pub fn s_locus(pi: &Permutation, g: &SetPartition) -> Result<SubspaceUnion> {
    let perp = g.subspace().orth_complement_in_v()?;
    let (t1, tm1) = eigenspaces(pi);
    Ok(SubspaceUnion::new([t1.intersect(&perp)?, tm1.intersect(&perp)?].into_iter().filter(|p| !p.is_zero())))
}

/// The stratum `B(S(π,G) × G)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct BStratumId {
    pub pi: Permutation,
    #[serde(rename = "G")]
    pub g: SetPartition,
    #[serde(rename = "W")]
    pub w: SubspaceUnion,
}

impl BStratumId {
    /// `None` unless `{0} ⊊ S(π, G)`.
    pub fn new(pi: &Permutation, g: &SetPartition) -> Result<Option<Self>> {
        if pi.n() != g.n() {
            return Err(Error::GroundSetMismatch { left: pi.n(), right: g.n() });
        }
        let perp = g.subspace().orth_complement_in_v()?;
        let (t1, tm1) = eigenspaces(pi);
        Self::from_parts(pi, g, &perp, [&t1, &tm1])
    }

    fn from_parts(
        pi: &Permutation,
        g: &SetPartition,
        perp: &QSubspace,
        eigen: [&QSubspace; 2],
    ) -> Result<Option<Self>> {
        let gs = g.subspace();
        let mut admissible = false;
        let mut pieces = Vec::new();
        for t in eigen {
            let s = t.intersect(perp)?;
            admissible |= !s.is_zero();
            pieces.push(s.sum(&gs)?);
        }
        if !admissible {
            return Ok(None);
        }
        Ok(Some(BStratumId { pi: pi.clone(), g: g.clone(), w: SubspaceUnion::new(pieces) }))
    }

    /// A piece equal to `V` makes `B(W)` the whole model.
    pub fn is_uninformative(&self) -> bool {
        let n = self.g.n();
        self.w.pieces.iter().any(|p| p.dim() + 1 == n)
    }
}

/// The projection of a piece off one lattice element.
#[derive(Clone)]
enum Projection {
    /// The lattice element contains the piece.
    Contained,
    Integer(IntEchelon),
    Exact(QSubspace),
}

impl CachedPiece {
    fn new(piece: &QSubspace, lattice_len: usize) -> Self {
        let int_basis = piece.basis().iter().map(QVector::integer_multiple).collect();
        let projections = (0..lattice_len).map(|_| OnceLock::new()).collect();
        CachedPiece { piece: piece.clone(), member: Equations::new(piece), int_basis, projections }
    }

    fn projection(&self, index: usize, h: &SetPartition) -> &Projection {
        self.projections[index].get_or_init(|| {
            if let Some(basis) = &self.int_basis {
                let projected: Option<Vec<Vec<i128>>> = basis.iter().map(|b| h.project_off_scaled(b)).collect();
                if let Some(e) = projected.as_deref().and_then(IntEchelon::new) {
                    return if e.rank() == 0 { Projection::Contained } else { Projection::Integer(e) };
                }
            }
            let projected: Vec<QVector> = self.piece.basis().iter().map(|b| h.project_off(b)).collect();
            let span = QSubspace::span(self.piece.ambient_dim(), &projected).expect("dimensions agree");
            if span.is_zero() {
                Projection::Contained
            } else {
                Projection::Exact(span)
            }
        })
    }

    /// `None` if `h` contains the piece, else whether `ω_H ∈ ⟨piece, H⟩`.
    /// Since `ω_H` is orthogonal to `H`, the latter holds iff `ω_H` lies in
    /// the projection of the piece off `H`.
    fn on_span(&self, index: usize, h: &SetPartition, omega: &QVector, ints: Option<&[i128]>) -> Option<bool> {
        let exact = |s: &QSubspace| s.contains_vector(omega).expect("dimensions agree");
        match self.projection(index, h) {
            Projection::Contained => None,
            Projection::Integer(e) => Some(match ints.and_then(|x| e.contains(x)) {
                Some(answer) => answer,
                None => {
                    let rows: Vec<QVector> = self.piece.basis().iter().map(|b| h.project_off(b)).collect();
                    exact(&QSubspace::span(self.piece.ambient_dim(), &rows).expect("dimensions agree"))
                }
            }),
            Projection::Exact(s) => Some(exact(s)),
        }
    }
}

impl fmt::Display for BStratumId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B({}, {})", self.pi, self.g)
    }
}

/// Direct evaluation of `ω ∈ B(W)`: `x ∈ ⋃W`, and for every lattice element
/// `H` containing no `Wᵢ`, the coordinate `ω_H` lies in `ℙ(⟨Wᵢ, H⟩/H)` for
/// some `i`.
pub fn in_b_stratum(w: &ModelPoint, id: &BStratumId) -> Result<bool> {
    if !id.w.contains_vector(w.x())? {
        return Ok(false);
    }
    for h in building_set(w.n()) {
        let hs = h.subspace();
        let mut contains_some = false;
        let mut spans = Vec::new();
        for piece in &id.w.pieces {
            contains_some |= hs.contains_subspace(piece)?;
            spans.push(piece.sum(&hs)?);
        }
        if contains_some {
            continue;
        }
        let (_, rep) = w.expand_coordinate(&h)?;
        if !spans.iter().map(|s| s.contains_line(&rep)).collect::<Result<Vec<_>>>()?.into_iter().any(|b| b) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A piece of some `W` with data for fast membership tests.
struct CachedPiece {
    piece: QSubspace,
    member: Equations,
    int_basis: Option<Vec<Vec<i64>>>,
    projections: Vec<OnceLock<Projection>>,
}

/// All informative strata `B(S(π,G) × G)` for one `n`, deduplicated by `W`,
/// with the linear algebra for membership tests cached.
pub struct Stratification {
    n: usize,
    lattice: Vec<SetPartition>,
    pieces: Vec<CachedPiece>,
    /// Each stratum with the indices of its pieces.
    strata: Vec<(BStratumId, Vec<usize>)>,
}

impl Stratification {
    pub fn new(n: usize) -> Result<Self> {
        if n > STRATA_BOUND {
            return Err(Error::GroundSetTooLarge { n, bound: STRATA_BOUND });
        }
        let lattice = building_set(n);
        let subspaces: Vec<QSubspace> = lattice.iter().map(SetPartition::subspace).collect();
        let perps: Vec<QSubspace> = subspaces.iter().map(QSubspace::orth_complement_in_v).collect::<Result<_>>()?;
        // (T ∩ G^⟂) ⊕ G, memoised: eigenspaces repeat across permutations.
        let mut memo: HashMap<(QSubspace, usize), (bool, QSubspace)> = HashMap::new();
        let mut by_w: BTreeMap<SubspaceUnion, BStratumId> = BTreeMap::new();
        for pi in all_permutations(n) {
            let (t1, tm1) = eigenspaces(&pi);
            for (gi, g) in lattice.iter().enumerate() {
                let mut admissible = false;
                let mut pieces = Vec::with_capacity(2);
                for t in [&t1, &tm1] {
                    let (nonzero, piece) = match memo.get(&(t.clone(), gi)) {
                        Some(hit) => hit.clone(),
                        None => {
                            let s = t.intersect(&perps[gi])?;
                            let entry = (!s.is_zero(), s.sum(&subspaces[gi])?);
                            memo.insert((t.clone(), gi), entry.clone());
                            entry
                        }
                    };
                    admissible |= nonzero;
                    pieces.push(piece);
                }
                if !admissible {
                    continue;
                }
                let id = BStratumId { pi: pi.clone(), g: g.clone(), w: SubspaceUnion::new(pieces) };
                if !id.is_uninformative() {
                    by_w.entry(id.w.clone()).or_insert(id);
                }
            }
        }
        let mut index: BTreeMap<QSubspace, usize> = BTreeMap::new();
        let mut pieces: Vec<CachedPiece> = Vec::new();
        let mut strata = Vec::with_capacity(by_w.len());
        for id in by_w.into_values() {
            let refs =
                id.w.pieces
                    .iter()
                    .map(|p| {
                        *index.entry(p.clone()).or_insert_with(|| {
                            pieces.push(CachedPiece::new(p, lattice.len()));
                            pieces.len() - 1
                        })
                    })
                    .collect();
            strata.push((id, refs));
        }
        Ok(Stratification { n, lattice, pieces, strata })
    }

    /// Shared instance for `n`, built on first use.
    pub fn cached(n: usize) -> Result<Arc<Stratification>> {
        static CACHE: OnceLock<Mutex<BTreeMap<usize, Arc<Stratification>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(s) = cache.lock().expect("cache lock").get(&n) {
            return Ok(s.clone());
        }
        let built = Arc::new(Stratification::new(n)?);
        Ok(cache.lock().expect("cache lock").entry(n).or_insert(built).clone())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn strata(&self) -> impl Iterator<Item = &BStratumId> {
        self.strata.iter().map(|(id, _)| id)
    }

    pub fn len(&self) -> usize {
        self.strata.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strata.is_empty()
    }

    /// The informative strata containing `ω`, together with its divisors.
    pub fn signature(&self, w: &ModelPoint) -> Result<Signature> {
        if w.n() != self.n {
            return Err(Error::GroundSetMismatch { left: self.n, right: w.n() });
        }
        let x_ints = w.x().integer_multiple();
        let coords: Vec<(QVector, Option<Vec<i128>>)> = self
            .lattice
            .iter()
            .map(|h| {
                w.expand_coordinate(h).map(|(_, rep)| {
                    let ints = rep.rep().integer_multiple().map(|v| v.into_iter().map(i128::from).collect());
                    (rep.rep().clone(), ints)
                })
            })
            .collect::<Result<_>>()?;
        let has_x: Vec<bool> = self.pieces.iter().map(|p| p.member.holds(w.x(), x_ints.as_deref())).collect();
        // Per piece and lattice element, filled on demand: None if H contains
        // the piece, else whether ω_H lies in ⟨piece, H⟩.
        let mut on_span: Vec<Vec<Option<Option<bool>>>> = vec![Vec::new(); self.pieces.len()];
        let mut bstrata = Vec::new();
        for (id, refs) in &self.strata {
            if !refs.iter().any(|&i| has_x[i]) {
                continue;
            }
            let mut inside = true;
            for (h, part) in self.lattice.iter().enumerate() {
                let mut contained = false;
                let mut hit = false;
                for &i in refs {
                    if on_span[i].is_empty() {
                        on_span[i] = vec![None; self.lattice.len()];
                    }
                    let cell = *on_span[i][h].get_or_insert_with(|| {
                        let (rep, ints) = &coords[h];
                        self.pieces[i].on_span(h, part, rep, ints.as_deref())
                    });
                    match cell {
                        None => contained = true,
                        Some(b) => hit |= b,
                    }
                }
                if !contained && !hit {
                    inside = false;
                    break;
                }
            }
            if inside {
                bstrata.push(id.clone());
            }
        }
        Ok(Signature { divisors: w.nested_stratum(), bstrata })
    }
}

/// The strata of the refined stratification containing a point.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Signature {
    pub divisors: Vec<SetPartition>,
    pub bstrata: Vec<BStratumId>,
}

impl Signature {
    /// Comparison key: the divisors and the set of `W` families.
    pub fn key(&self) -> (BTreeSet<SetPartition>, BTreeSet<SubspaceUnion>) {
        (self.divisors.iter().cloned().collect(), self.bstrata.iter().map(|b| b.w.clone()).collect())
    }

    /// The key of the translate of this signature by `g`.
    pub fn translated_key(&self, g: &Permutation) -> (BTreeSet<SetPartition>, BTreeSet<SubspaceUnion>) {
        (self.divisors.iter().map(|d| g.act_partition(d)).collect(), self.bstrata.iter().map(|b| b.w.act(g)).collect())
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "D[{}] B[{}]",
            self.divisors.iter().join(" "),
            self.bstrata.iter().map(|b| format!("({}, {})", b.pi, b.g)).join(" ")
        )
    }
}

/// Divisors and informative strata containing `ω`.
pub fn b_signature(w: &ModelPoint) -> Result<Signature> {
    Stratification::cached(w.n())?.signature(w)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Group points by the full refined signature.
    BSignature,
    /// Group points by their nested-set stratum only.
    NestedOnly,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::BSignature => "b-signature",
            Mode::NestedOnly => "nested-only",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassReport {
    pub signature: String,
    pub points: usize,
    pub stab_order: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub mode: Mode,
    pub n: usize,
    pub pass: bool,
    pub classes: Vec<ClassReport>,
    /// Two points in one class with different stabilizers.
    pub witness: Option<(ModelPoint, ModelPoint)>,
}

/// Groups `points` by signature and checks that each class has a single
/// stabilizer subgroup (compared element by element with the oracle).
pub fn check_distinguishing(n: usize, points: &[ModelPoint], mode: Mode) -> Result<Report> {
    let strat = match mode {
        Mode::BSignature => Some(Stratification::cached(n)?),
        Mode::NestedOnly => None,
    };
    type Key = (BTreeSet<SetPartition>, BTreeSet<SubspaceUnion>);
    type Members = Vec<(ModelPoint, BTreeSet<Permutation>)>;
    let mut classes: BTreeMap<Key, (String, Members)> = BTreeMap::new();
    for w in points {
        if w.n() != n {
            return Err(Error::GroundSetMismatch { left: n, right: w.n() });
        }
        let (key, label) = match &strat {
            Some(s) => {
                let sig = s.signature(w)?;
                (sig.key(), sig.to_string())
            }
            None => {
                let d = w.nested_stratum();
                let label = format!("D[{}]", d.iter().join(" "));
                ((d.into_iter().collect(), BTreeSet::new()), label)
            }
        };
        let stab = brute_stabilizer(w)?.elements().clone();
        classes.entry(key).or_insert_with(|| (label, Vec::new())).1.push((w.clone(), stab));
    }
    let mut witness = None;
    let reports: Vec<ClassReport> = classes
        .into_values()
        .map(|(signature, members)| {
            let first = &members[0];
            let odd = members.iter().find(|(_, s)| *s != first.1);
            if let (None, Some((other, _))) = (&witness, odd) {
                witness = Some((first.0.clone(), other.clone()));
            }
            ClassReport { signature, points: members.len(), stab_order: first.1.len(), pass: odd.is_none() }
        })
        .collect();
    Ok(Report { mode, n, pass: reports.iter().all(|c| c.pass), classes: reports, witness })
}
