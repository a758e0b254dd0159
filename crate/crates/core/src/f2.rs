//! Linear algebra over F₂ on bit vectors of length `t ≤ 64`.
//!
//! Bit `j` of a `u64` is coordinate `j + 1` of `ℤ₂ᵗ`.

use std::fmt;

use serde::Serialize;

pub const MAX_T: usize = 64;

fn mask(t: usize) -> u64 {
    if t >= 64 {
        u64::MAX
    } else {
        (1u64 << t) - 1
    }
}

/// A subspace of `ℤ₂ᵗ` in reduced echelon form: pivots are lowest set bits,
/// rows sorted by pivot, and every pivot column is clear in all other rows.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct F2Subspace {
    t: usize,
    basis: Vec<u64>,
}

impl F2Subspace {
    pub fn zero(t: usize) -> Self {
        F2Subspace { t, basis: Vec::new() }
    }

    pub fn full(t: usize) -> Self {
        F2Subspace { t, basis: (0..t).map(|j| 1u64 << j).collect() }
    }

    pub fn span(t: usize, vectors: impl IntoIterator<Item = u64>) -> Self {
        assert!(t <= MAX_T);
        let mut rows: Vec<u64> = Vec::new();
        for v in vectors {
            debug_assert_eq!(v & !mask(t), 0, "vector wider than t");
            let r = reduce_by(&rows, v);
            if r == 0 {
                continue;
            }
            let pivot = r & r.wrapping_neg();
            for row in rows.iter_mut() {
                if *row & pivot != 0 {
                    *row ^= r;
                }
            }
            rows.push(r);
        }
        rows.sort_by_key(|r| r.trailing_zeros());
        F2Subspace { t, basis: rows }
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[u64] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains(&self, v: u64) -> bool {
        reduce_by(&self.basis, v) == 0
    }

    pub fn contains_subspace(&self, other: &F2Subspace) -> bool {
        other.basis.iter().all(|&v| self.contains(v))
    }

    pub fn sum(&self, other: &F2Subspace) -> F2Subspace {
        F2Subspace::span(self.t, self.basis.iter().chain(&other.basis).copied())
    }

    /// `{w : w·b = 0 for all b in self}`.
    pub fn annihilator(&self) -> F2Subspace {
        let pivots: u64 = self.basis.iter().fold(0, |acc, r| acc | (r & r.wrapping_neg()));
        let free = mask(self.t) & !pivots;
        let vectors = (0..self.t).filter(|j| free >> j & 1 == 1).map(|j| {
            let f = 1u64 << j;
            // Set each pivot coordinate so that the row containing it is orthogonal.
            self.basis.iter().fold(f, |w, r| if r & f != 0 { w | (r & r.wrapping_neg()) } else { w })
        });
        F2Subspace::span(self.t, vectors)
    }

    pub fn intersect(&self, other: &F2Subspace) -> F2Subspace {
        self.annihilator().sum(&other.annihilator()).annihilator()
    }

    /// All `2^dim` elements, in the order of binary counting over the basis.
    pub fn elements(&self) -> impl Iterator<Item = u64> + '_ {
        (0u64..1 << self.dim()).map(move |c| combine(&self.basis, c))
    }
}

impl fmt::Display for F2Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.basis.iter().map(|&r| bits_string(r, self.t)).collect();
        write!(f, "<{}>", rows.join(", "))
    }
}

impl Serialize for F2Subspace {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            t: usize,
            basis: Vec<String>,
        }
        Repr { t: self.t, basis: self.basis.iter().map(|&r| bits_string(r, self.t)).collect() }.serialize(serializer)
    }
}

/// `"0110"`-style rendering, coordinate 1 first.
pub fn bits_string(v: u64, t: usize) -> String {
    (0..t).map(|j| if v >> j & 1 == 1 { '1' } else { '0' }).collect()
}

/// The sum of the basis vectors selected by the bits of `coeffs`.
pub fn combine(basis: &[u64], coeffs: u64) -> u64 {
    basis.iter().enumerate().filter(|(i, _)| coeffs >> i & 1 == 1).fold(0, |acc, (_, &b)| acc ^ b)
}

fn reduce_by(rows: &[u64], mut v: u64) -> u64 {
    for &r in rows {
        if v & r & r.wrapping_neg() != 0 {
            v ^= r;
        }
    }
    v
}

/// Finds a basis of `g` such that every subspace in `parts` (each inside `g`)
/// is spanned by the basis vectors it contains.
///
/// Works up the intersection closure of `parts ∪ {g}`, extending at each
/// member `X` a basis of the sum of its proper sub-members. The result is
/// verified; `None` means no such basis was found, which happens exactly
/// when the subspaces are not simultaneously diagonalisable in this sense.
pub fn adapted_basis(g: &F2Subspace, parts: &[F2Subspace]) -> Option<Vec<u64>> {
    let mut family: Vec<F2Subspace> = vec![g.clone()];
    for p in parts {
        debug_assert!(g.contains_subspace(p));
        if !family.contains(p) {
            family.push(p.clone());
        }
    }
    let mut i = 0;
    while i < family.len() {
        for j in 0..i {
            let meet = family[i].intersect(&family[j]);
            if !family.contains(&meet) {
                family.push(meet);
            }
        }
        i += 1;
    }
    family.sort_by_key(F2Subspace::dim);

    let mut chosen: Vec<u64> = Vec::new();
    for x in &family {
        let below = family
            .iter()
            .filter(|y| y.dim() < x.dim() && x.contains_subspace(y))
            .fold(F2Subspace::zero(g.t), |acc, y| acc.sum(y));
        let mut current = below;
        for &v in &x.basis {
            if !current.contains(v) {
                current = current.sum(&F2Subspace::span(g.t, [v]));
                chosen.push(v);
            }
        }
    }
    chosen.sort_unstable();
    chosen.dedup();

    let spanned = F2Subspace::span(g.t, chosen.iter().copied());
    if chosen.len() != g.dim() || spanned != *g {
        return None;
    }
    for p in parts {
        let inside = F2Subspace::span(g.t, chosen.iter().copied().filter(|&v| p.contains(v)));
        if inside != *p {
            return None;
        }
    }
    Some(chosen)
}
