//! Exact rational linear algebra in `ℝⁿ` and in the sum-zero hyperplane
//! `V = {x : Σ xᵢ = 0}`.
//!
//! Subspaces are kept in reduced row-echelon form, so two subspaces are equal
//! exactly when their stored bases are identical. Everything is stored in
//! ambient coordinates; orthogonal complements are taken relative to `V`
//! unless a method says otherwise.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Q = BigRational;

pub(crate) fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    Q::from_str(s).map_err(|_| Error::Parse(format!("not a rational: {s:?}")))
}

/// A vector of `n` exact rationals.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct QVector {
    coords: Vec<Q>,
}

impl QVector {
    pub fn new(coords: Vec<Q>) -> Self {
        QVector { coords }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        QVector { coords: values.iter().map(|&v| q(v)).collect() }
    }

    pub fn zeros(n: usize) -> Self {
        QVector { coords: vec![Q::zero(); n] }
    }

    /// Parses a comma-separated list of integers or `p/q` rationals.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.trim().is_empty() {
            return Ok(QVector::new(Vec::new()));
        }
        s.split(',').map(parse_rational).collect::<Result<Vec<_>>>().map(QVector::new)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn sum(&self) -> Q {
        self.coords.iter().fold(Q::zero(), |acc, c| acc + c)
    }

    /// True when the coordinates sum to zero.
    pub fn in_v(&self) -> bool {
        self.sum().is_zero()
    }

    pub fn dot(&self, other: &QVector) -> Q {
        self.coords.iter().zip(&other.coords).fold(Q::zero(), |acc, (a, b)| acc + a * b)
    }

    /// A nonzero integer multiple of `self` (clearing denominators), if it
    /// fits in `i64`.
    pub fn integer_multiple(&self) -> Option<Vec<i64>> {
        let lcm = self.coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        self.coords.iter().map(|c| i64::try_from(c.numer() * (&lcm / c.denom())).ok()).collect()
    }

    pub fn scaled(&self, s: &Q) -> QVector {
        QVector { coords: self.coords.iter().map(|c| c * s).collect() }
    }

    pub fn neg(&self) -> QVector {
        QVector { coords: self.coords.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &QVector) -> QVector {
        QVector { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &QVector) -> QVector {
        QVector { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect() }
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if self.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: self.dim() });
        }
        Ok(())
    }
}

impl fmt::Display for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for QVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serialize_row(&self.coords, serializer)
    }
}

impl<'de> Deserialize<'de> for QVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Entry {
            Int(i64),
            Str(String),
        }
        let entries = Vec::<Entry>::deserialize(deserializer)?;
        entries
            .into_iter()
            .map(|e| match e {
                Entry::Int(v) => Ok(q(v)),
                Entry::Str(s) => parse_rational(&s).map_err(de::Error::custom),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(QVector::new)
    }
}

fn serialize_row<S: Serializer>(row: &[Q], serializer: S) -> Result<S::Ok, S::Error> {
    let mut seq = serializer.serialize_seq(Some(row.len()))?;
    for c in row {
        seq.serialize_element(&c.to_string())?;
    }
    seq.end()
}

/// A line through the origin, stored by its canonical integer representative:
/// coprime integer coordinates whose first nonzero entry is positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct QLine {
    rep: QVector,
}

/// Canonical representative of the line spanned by `v`.
pub fn canonical_line(v: &QVector) -> Result<QLine> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let lcm = v.coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = v.coords.iter().map(|c| (c * Q::from_integer(lcm.clone())).to_integer()).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if ints.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    let coords = ints.into_iter().map(|c| Q::from_integer(c / &gcd * &sign)).collect();
    Ok(QLine { rep: QVector::new(coords) })
}

impl QLine {
    pub fn new(v: &QVector) -> Result<Self> {
        canonical_line(v)
    }

    pub fn from_ints(values: &[i64]) -> Result<Self> {
        canonical_line(&QVector::from_ints(values))
    }

    pub fn rep(&self) -> &QVector {
        &self.rep
    }

    pub fn dim(&self) -> usize {
        self.rep.dim()
    }
}

impl fmt::Display for QLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.rep)
    }
}

impl Serialize for QLine {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.rep.serialize(serializer)
    }
}

/// A linear subspace of `ℝⁿ` with a basis in reduced row-echelon form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct QSubspace {
    n: usize,
    rows: Vec<Vec<Q>>,
}

/// Row-reduces in place and drops zero rows. Returns pivot columns.
fn rref(rows: &mut Vec<Vec<Q>>, n: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let inv = rows[r][col].recip();
        if !inv.is_one() {
            for c in rows[r].iter_mut().skip(col) {
                *c *= &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (c, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !p.is_zero() {
                    *c -= &factor * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

impl QSubspace {
    /// The zero subspace of `ℝⁿ`.
    pub fn zero(n: usize) -> Self {
        QSubspace { n, rows: Vec::new() }
    }

    /// All of `ℝⁿ`.
    pub fn full(n: usize) -> Self {
        let rows = (0..n).map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect();
        QSubspace { n, rows }
    }

    /// The sum-zero hyperplane `V`.
    pub fn sum_zero(n: usize) -> Self {
        if n == 0 {
            return QSubspace::zero(0);
        }
        let rows = (0..n - 1)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if j == i {
                            Q::one()
                        } else if j == n - 1 {
                            -Q::one()
                        } else {
                            Q::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        QSubspace { n, rows }
    }

    /// Linear span of `vectors` inside `ℝⁿ`.
    pub fn span(n: usize, vectors: &[QVector]) -> Result<Self> {
        for v in vectors {
            v.check_dim(n)?;
        }
        Ok(Self::from_rows(n, vectors.iter().map(|v| v.coords.clone()).collect()))
    }

    fn from_rows(n: usize, mut rows: Vec<Vec<Q>>) -> Self {
        rref(&mut rows, n);
        QSubspace { n, rows }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// The RREF basis rows.
    pub fn basis(&self) -> Vec<QVector> {
        self.rows.iter().cloned().map(QVector::new).collect()
    }

    fn check_same(&self, other: &QSubspace) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        Ok(())
    }

    /// Residue of `v` after elimination against the pivots.
    fn residue(&self, v: &[Q]) -> Vec<Q> {
        let mut v = v.to_vec();
        for row in &self.rows {
            let p = row.iter().position(|c| !c.is_zero()).expect("rref rows are nonzero");
            if v[p].is_zero() {
                continue;
            }
            let factor = v[p].clone();
            for (c, r) in v.iter_mut().zip(row).skip(p) {
                if !r.is_zero() {
                    *c -= &factor * r;
                }
            }
        }
        v
    }

    pub fn contains_vector(&self, v: &QVector) -> Result<bool> {
        v.check_dim(self.n)?;
        Ok(self.residue(&v.coords).iter().all(Zero::is_zero))
    }

    pub fn contains_line(&self, l: &QLine) -> Result<bool> {
        self.contains_vector(l.rep())
    }

    pub fn contains_subspace(&self, other: &QSubspace) -> Result<bool> {
        self.check_same(other)?;
        if other.dim() > self.dim() {
            return Ok(false);
        }
        Ok(other.rows.iter().all(|r| self.residue(r).iter().all(Zero::is_zero)))
    }

    /// Orthogonal complement in `ℝⁿ` (the null space of the basis rows).
    pub fn annihilator(&self) -> QSubspace {
        let n = self.n;
        let pivots: Vec<usize> =
            self.rows.iter().map(|r| r.iter().position(|c| !c.is_zero()).expect("rref rows are nonzero")).collect();
        let mut out = Vec::new();
        for free in (0..n).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Q::zero(); n];
            v[free] = Q::one();
            for (row, &p) in self.rows.iter().zip(&pivots) {
                v[p] = -row[free].clone();
            }
            out.push(v);
        }
        QSubspace::from_rows(n, out)
    }

    /// `self + other`.
    pub fn sum(&self, other: &QSubspace) -> Result<QSubspace> {
        self.check_same(other)?;
        let rows = self.rows.iter().chain(&other.rows).cloned().collect();
        Ok(QSubspace::from_rows(self.n, rows))
    }

    /// `self + ⟨v⟩`.
    pub fn with_vector(&self, v: &QVector) -> Result<QSubspace> {
        v.check_dim(self.n)?;
        let mut rows = self.rows.clone();
        rows.push(v.coords.clone());
        Ok(QSubspace::from_rows(self.n, rows))
    }

    pub fn intersect(&self, other: &QSubspace) -> Result<QSubspace> {
        self.check_same(other)?;
        let a = self.annihilator();
        let b = other.annihilator();
        Ok(a.sum(&b)?.annihilator())
    }

    pub fn is_inside_v(&self) -> bool {
        self.rows.iter().all(|r| r.iter().fold(Q::zero(), |acc, c| acc + c).is_zero())
    }

    /// Orthogonal complement relative to `V` under the standard dot product.
    pub fn orth_complement_in_v(&self) -> Result<QSubspace> {
        if !self.is_inside_v() {
            return Err(Error::NotInsideV);
        }
        let mut rows = self.rows.clone();
        rows.push(vec![Q::one(); self.n]);
        Ok(QSubspace::from_rows(self.n, rows).annihilator())
    }

    /// Orthogonal projection of `v` onto this subspace.
    pub fn project(&self, v: &QVector) -> Result<QVector> {
        v.check_dim(self.n)?;
        let k = self.dim();
        if k == 0 {
            return Ok(QVector::zeros(self.n));
        }
        let basis = self.basis();
        // Solve the normal equations (B Bᵀ) c = B v.
        let mut system: Vec<Vec<Q>> = (0..k)
            .map(|i| {
                let mut row: Vec<Q> = (0..k).map(|j| basis[i].dot(&basis[j])).collect();
                row.push(basis[i].dot(v));
                row
            })
            .collect();
        rref(&mut system, k);
        let mut out = QVector::zeros(self.n);
        for (i, b) in basis.iter().enumerate() {
            out = out.add(&b.scaled(&system[i][k]));
        }
        Ok(out)
    }
}

impl fmt::Display for QSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for (i, r) in self.basis().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for QSubspace {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows.len()))?;
        for r in &self.rows {
            seq.serialize_element(&QVector::new(r.clone()))?;
        }
        seq.end()
    }
}

/// A subspace described by integer linear equations, for fast repeated
/// membership tests. Falls back to exact arithmetic when a test would not fit
/// in machine integers.
#[derive(Clone, Debug)]
pub struct Equations {
    subspace: QSubspace,
    rows: Option<Vec<Vec<i64>>>,
}

impl Equations {
    pub fn new(subspace: &QSubspace) -> Self {
        let rows = subspace.annihilator().basis().iter().map(|r| r.integer_multiple()).collect::<Option<Vec<_>>>();
        Equations { subspace: subspace.clone(), rows }
    }

    pub fn subspace(&self) -> &QSubspace {
        &self.subspace
    }

    /// Membership of `v`; `ints` may carry a precomputed integer multiple of `v`.
    pub fn holds(&self, v: &QVector, ints: Option<&[i64]>) -> bool {
        if let (Some(rows), Some(x)) = (&self.rows, ints) {
            let fast = rows.iter().try_fold(true, |ok, r| {
                let dot = r.iter().zip(x).try_fold(0i128, |acc, (&a, &b)| acc.checked_add(a as i128 * b as i128))?;
                Some(ok && dot == 0)
            });
            if let Some(answer) = fast {
                return answer;
            }
        }
        self.subspace.contains_vector(v).expect("dimensions agree")
    }
}

/// An echelon form of integer rows, built by fraction-free elimination with
/// content removal. Construction and tests return `None` on overflow.
#[derive(Clone, Debug)]
pub struct IntEchelon {
    rows: Vec<(usize, Vec<i128>)>,
}

impl IntEchelon {
    pub fn new(rows: &[Vec<i128>]) -> Option<Self> {
        let mut e = IntEchelon { rows: Vec::new() };
        for row in rows {
            let r = e.eliminate(row.clone())?;
            if let Some(p) = r.iter().position(|&a| a != 0) {
                e.rows.push((p, r));
            }
        }
        Some(e)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Whether `v` lies in the rational span of the rows.
    pub fn contains(&self, v: &[i128]) -> Option<bool> {
        Some(self.eliminate(v.to_vec())?.iter().all(|&a| a == 0))
    }

    fn eliminate(&self, mut r: Vec<i128>) -> Option<Vec<i128>> {
        for (p, e) in &self.rows {
            if r[*p] != 0 {
                let (a, b) = (e[*p], r[*p]);
                for k in 0..r.len() {
                    r[k] = r[k].checked_mul(a)?.checked_sub(e[k].checked_mul(b)?)?;
                }
                let g = r.iter().fold(0i128, |g, &a| num_integer::gcd(g, a));
                if g > 1 {
                    r.iter_mut().for_each(|a| *a /= g);
                }
            }
        }
        Some(r)
    }
}

/// Whether `v` lies in the rational span of the integer `rows`; `None` on overflow.
pub fn int_in_span(rows: &[Vec<i128>], v: &[i128]) -> Option<bool> {
    IntEchelon::new(rows)?.contains(v)
}

/// Convenience wrapper matching the free-function style of the rest of the crate.
pub fn span(n: usize, vectors: &[QVector]) -> Result<QSubspace> {
    QSubspace::span(n, vectors)
}

pub fn intersect(a: &QSubspace, b: &QSubspace) -> Result<QSubspace> {
    a.intersect(b)
}

pub fn orth_complement_in_v(a: &QSubspace) -> Result<QSubspace> {
    a.orth_complement_in_v()
}
