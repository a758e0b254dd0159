//! Stabilizers of model points: the diagram pipeline and a brute-force
//! oracle over `Sₙ`.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use serde::{Serialize, Serializer};

use crate::diagram::{diagram_from_line, diagram_from_point, intersect_diagrams, Diagram};
use crate::error::{Error, Result};
use crate::linalg::{QLine, QVector};
use crate::model::ModelPoint;
use crate::perm::{all_permutations, Permutation};

/// Ground-set bound for the brute-force oracle.
pub const BRUTE_BOUND: usize = 8;

/// `ℤ₂ʰ` presented by `h` commuting involutions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ElemAbelian2Group {
    n: usize,
    generators: Vec<Permutation>,
}

impl ElemAbelian2Group {
    pub fn new(n: usize, generators: Vec<Permutation>) -> Self {
        ElemAbelian2Group { n, generators }
    }

    pub fn trivial(n: usize) -> Self {
        ElemAbelian2Group { n, generators: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn order(&self) -> u128 {
        1u128 << self.rank()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// All `2^h` products of subsets of the generators.
    pub fn elements(&self) -> BTreeSet<Permutation> {
        let mut out = BTreeSet::from([Permutation::identity(self.n)]);
        for g in &self.generators {
            let next: Vec<Permutation> = out.iter().map(|e| e * g).collect();
            out.extend(next);
        }
        out
    }

    /// Checks that the generators are commuting involutions generating a
    /// group of order exactly `2^h`, with `h ≤ ⌊n/2⌋`.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidPermutation(m));
        for g in &self.generators {
            if g.n() != self.n {
                return bad(format!("generator {g} acts on {} points, expected {}", g.n(), self.n));
            }
            if g.is_identity() || !(g * g).is_identity() {
                return bad(format!("generator {g} is not an involution"));
            }
        }
        for (a, b) in self.generators.iter().tuple_combinations() {
            if a * b != b * a {
                return bad(format!("generators {a} and {b} do not commute"));
            }
        }
        if self.rank() > self.n / 2 {
            return bad(format!("rank {} exceeds floor({}/2)", self.rank(), self.n));
        }
        if self.rank() <= 12 && self.elements().len() as u128 != self.order() {
            return bad("generators are not independent".to_string());
        }
        Ok(())
    }
}

impl fmt::Display for ElemAbelian2Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z2^{} = <{}>", self.rank(), self.generators.iter().join(", "))
    }
}

impl Serialize for ElemAbelian2Group {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            h: usize,
            order: u128,
            generators: &'a [Permutation],
        }
        Repr { h: self.rank(), order: self.order(), generators: &self.generators }.serialize(serializer)
    }
}

/// An explicitly listed permutation group.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PermSubgroup {
    n: usize,
    elements: BTreeSet<Permutation>,
}

impl PermSubgroup {
    pub fn new(n: usize, elements: BTreeSet<Permutation>) -> Self {
        PermSubgroup { n, elements }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &BTreeSet<Permutation> {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.contains(p)
    }

    pub fn is_closed(&self) -> bool {
        self.elements.contains(&Permutation::identity(self.n))
            && self.elements.iter().all(|a| self.elements.contains(&a.inverse()))
            && self.elements.iter().cartesian_product(&self.elements).all(|(a, b)| self.elements.contains(&(a * b)))
    }

    /// `g · S · g⁻¹`.
    pub fn conjugate_by(&self, g: &Permutation) -> PermSubgroup {
        PermSubgroup { n: self.n, elements: self.elements.iter().map(|s| g.conjugate(s)).collect() }
    }
}

/// The diagram whose automorphism group is `stab(ω)`: the intersection of
/// the point diagram of `x` with the line diagrams of `l₁, …, l_t`.
pub fn stabilizer_diagram(w: &ModelPoint) -> Result<Diagram> {
    let mut d = diagram_from_point(w.x());
    for step in w.chain() {
        d = intersect_diagrams(&d, &diagram_from_line(&step.line))?.canonicalize();
    }
    Ok(d)
}

/// `stab(ω) = stab(x) ∩ stab(l₁) ∩ … ∩ stab(l_t)` via diagrams: intersect,
/// reduce, and read off `ℤ₂ʰ`.
pub fn stabilizer(w: &ModelPoint) -> Result<ElemAbelian2Group> {
    let reduced = stabilizer_diagram(w)?.reduce()?;
    let group = reduced.aut_structured().map_err(|e| match e {
        Error::FiberTooLarge { .. } | Error::NotReduced => Error::InvalidModelPoint(e.to_string()),
        other => other,
    })?;
    debug_assert!(group.validate().is_ok());
    Ok(group)
}

fn check_bound(n: usize) -> Result<()> {
    if n > BRUTE_BOUND {
        return Err(Error::GroundSetTooLarge { n, bound: BRUTE_BOUND });
    }
    Ok(())
}

fn preserves_line(p: &Permutation, v: &QVector) -> bool {
    let image = p.act_vector(v);
    image == *v || image == v.neg()
}

/// `{σ ∈ Sₙ : σ(x) = x, σ(vᵢ) = ±vᵢ}` by scanning `Sₙ`.
pub fn brute_stabilizer(w: &ModelPoint) -> Result<PermSubgroup> {
    check_bound(w.n())?;
    let lines = w.line_vectors();
    let elements = all_permutations(w.n())
        .filter(|p| p.act_vector(w.x()) == *w.x() && lines.iter().all(|v| preserves_line(p, v)))
        .collect();
    Ok(PermSubgroup::new(w.n(), elements))
}

pub fn brute_stab_point(x: &QVector) -> Result<PermSubgroup> {
    check_bound(x.dim())?;
    let elements = all_permutations(x.dim()).filter(|p| p.act_vector(x) == *x).collect();
    Ok(PermSubgroup::new(x.dim(), elements))
}

pub fn brute_stab_line(l: &QLine) -> Result<PermSubgroup> {
    check_bound(l.dim())?;
    let elements = all_permutations(l.dim()).filter(|p| preserves_line(p, l.rep())).collect();
    Ok(PermSubgroup::new(l.dim(), elements))
}
