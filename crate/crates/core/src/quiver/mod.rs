//! Quivers, their doubles, dimension vectors and rational weights.
//!
//! Vertices and arrows are addressed by their declaration index. The double
//! of a quiver interleaves every base arrow `a` with its dual `a*`, so the
//! arrow with double index `2j` is base arrow `j` and `2j + 1` is its dual.
//! That interleaving is the total arrow order used for canonical necklaces.

mod dsl;
mod json;

pub use dsl::{parse_document, parse_quiver, ParseError};
pub use json::{document_from_json, document_to_json, serialize};

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

/// Suffix marking a dual arrow.
pub const STAR: char = '*';

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("duplicate identifier {0}")]
    DuplicateId(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("invalid identifier {0:?}")]
    InvalidId(String),
    #[error("dimension mismatch: expected {expected} entries, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("negative dimension vector entry {0}")]
    NegativeEntry(String),
}

/// A named arrow `tail -> head`; endpoints are vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub tail: usize,
    pub head: usize,
}

/// A finite quiver. Loops and parallel arrows are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

pub(crate) fn valid_identifier(id: &str) -> bool {
    !id.is_empty()
        && !id
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '*' | '=' | '{' | '}' | '#' | ','))
}

impl Quiver {
    /// Builds a quiver from vertex names and `(id, tail, head)` triples.
    pub fn new<V, A, S>(vertices: V, arrows: A) -> Result<Self, QuiverError>
    where
        V: IntoIterator<Item = S>,
        A: IntoIterator<Item = (S, S, S)>,
        S: Into<String>,
    {
        let mut quiver = Quiver {
            vertices: Vec::new(),
            arrows: Vec::new(),
        };
        let mut seen = HashSet::new();
        for v in vertices {
            let v = v.into();
            if !valid_identifier(&v) {
                return Err(QuiverError::InvalidId(v));
            }
            if !seen.insert(v.clone()) {
                return Err(QuiverError::DuplicateId(v));
            }
            quiver.vertices.push(v);
        }
        for (id, tail, head) in arrows {
            quiver.push_arrow(&mut seen, id.into(), &tail.into(), &head.into())?;
        }
        Ok(quiver)
    }

    fn push_arrow(
        &mut self,
        seen: &mut HashSet<String>,
        id: String,
        tail: &str,
        head: &str,
    ) -> Result<(), QuiverError> {
        if !valid_identifier(&id) {
            return Err(QuiverError::InvalidId(id));
        }
        let tail = self
            .vertex_index(tail)
            .ok_or_else(|| QuiverError::UnknownVertex(tail.to_string()))?;
        let head = self
            .vertex_index(head)
            .ok_or_else(|| QuiverError::UnknownVertex(head.to_string()))?;
        if !seen.insert(id.clone()) {
            return Err(QuiverError::DuplicateId(id));
        }
        self.arrows.push(Arrow { id, tail, head });
        Ok(())
    }

    /// Builds a quiver directly from index data; names are generated.
    pub fn from_indices(vertex_count: usize, arrows: &[(usize, usize)]) -> Self {
        let vertices = (0..vertex_count).map(|i| format!("v{i}")).collect();
        let arrows = arrows
            .iter()
            .enumerate()
            .map(|(j, &(tail, head))| {
                assert!(tail < vertex_count && head < vertex_count);
                Arrow {
                    id: format!("a{j}"),
                    tail,
                    head,
                }
            })
            .collect();
        Quiver { vertices, arrows }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.id == name)
    }

    /// Number of loops at vertex `i`.
    pub fn loops_at(&self, i: usize) -> usize {
        self.arrows.iter().filter(|a| a.tail == i && a.head == i).count()
    }

    /// Number of arrows `i -> j`.
    pub fn arrows_between(&self, i: usize, j: usize) -> usize {
        self.arrows.iter().filter(|a| a.tail == i && a.head == j).count()
    }

    pub fn double(&self) -> DoubleQuiver {
        DoubleQuiver { base: self.clone() }
    }
}

/// The double of a quiver: every base arrow `a` gets a reversed dual `a*`.
///
/// There is no way to double a `DoubleQuiver` again; only `Quiver::double`
/// produces one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DoubleQuiver {
    base: Quiver,
}

impl DoubleQuiver {
    pub fn base(&self) -> &Quiver {
        &self.base
    }

    pub fn vertex_count(&self) -> usize {
        self.base.vertex_count()
    }

    /// Number of arrows in the double (twice the base count).
    pub fn arrow_count(&self) -> usize {
        2 * self.base.arrow_count()
    }

    pub fn is_dual(&self, c: usize) -> bool {
        c % 2 == 1
    }

    /// Base arrow underlying the double arrow `c`.
    pub fn base_arrow(&self, c: usize) -> usize {
        c / 2
    }

    pub fn star(&self, c: usize) -> usize {
        c ^ 1
    }

    pub fn tail(&self, c: usize) -> usize {
        let a = &self.base.arrows[c / 2];
        if c.is_multiple_of(2) {
            a.tail
        } else {
            a.head
        }
    }

    pub fn head(&self, c: usize) -> usize {
        let a = &self.base.arrows[c / 2];
        if c.is_multiple_of(2) {
            a.head
        } else {
            a.tail
        }
    }

    pub fn arrow_name(&self, c: usize) -> String {
        let id = &self.base.arrows[c / 2].id;
        if c.is_multiple_of(2) {
            id.clone()
        } else {
            format!("{id}{STAR}")
        }
    }

    /// Resolves `a` or `a*` to a double arrow index.
    pub fn arrow_by_name(&self, token: &str) -> Option<usize> {
        match token.strip_suffix(STAR) {
            Some(base) => self.base.arrow_index(base).map(|j| 2 * j + 1),
            None => self.base.arrow_index(token).map(|j| 2 * j),
        }
    }

    /// Double arrows leaving vertex `v`, in arrow order.
    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrow_count()).filter(move |&c| self.tail(c) == v)
    }
}

/// A dimension vector: one nonnegative integer per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVector(pub Vec<u64>);

impl DimVector {
    pub fn zero(len: usize) -> Self {
        DimVector(vec![0; len])
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = vec![0; len];
        v[i] = 1;
        DimVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &DimVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self - other`, or `None` if some entry would go negative.
    pub fn checked_sub(&self, other: &DimVector) -> Option<DimVector> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(DimVector)
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: u64) -> DimVector {
        DimVector(self.0.iter().map(|a| a * k).collect())
    }

    pub fn to_bigint(&self) -> Vec<BigInt> {
        self.0.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Converts an integer vector with nonnegative entries.
    pub fn from_bigint(v: &[BigInt]) -> Result<DimVector, QuiverError> {
        v.iter()
            .map(|x| {
                if x.is_negative() {
                    return Err(QuiverError::NegativeEntry(x.to_string()));
                }
                u64::try_from(x).map_err(|_| QuiverError::NegativeEntry(x.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(DimVector)
    }

    /// Every vector `v` with `0 <= v <= self`, in lexicographic order.
    pub fn sub_vectors(&self) -> Vec<DimVector> {
        let mut out = vec![DimVector(Vec::with_capacity(self.len()))];
        for &bound in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=bound).map(move |x| {
                        let mut v = prefix.0.clone();
                        v.push(x);
                        DimVector(v)
                    })
                })
                .collect();
        }
        out
    }

    pub fn check_len(&self, vertex_count: usize) -> Result<(), QuiverError> {
        if self.len() != vertex_count {
            return Err(QuiverError::DimensionMismatch {
                expected: vertex_count,
                found: self.len(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<u64>> for DimVector {
    fn from(v: Vec<u64>) -> Self {
        DimVector(v)
    }
}

impl std::ops::Deref for DimVector {
    type Target = [u64];
    fn deref(&self) -> &[u64] {
        &self.0
    }
}

/// Exact rational weights, one per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Weights(pub Vec<BigRational>);

impl Weights {
    pub fn zero(len: usize) -> Self {
        Weights(vec![BigRational::zero(); len])
    }

    pub fn from_integers(v: &[i64]) -> Self {
        Weights(v.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `sum_i lambda_i * alpha_i`.
    pub fn dot(&self, alpha: &DimVector) -> BigRational {
        self.0
            .iter()
            .zip(alpha.iter())
            .fold(BigRational::zero(), |acc, (l, &a)| {
                acc + l * BigRational::from_integer(a.into())
            })
    }

    pub fn check_len(&self, vertex_count: usize) -> Result<(), QuiverError> {
        if self.len() != vertex_count {
            return Err(QuiverError::DimensionMismatch {
                expected: vertex_count,
                found: self.len(),
            });
        }
        Ok(())
    }
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q` with `q > 0`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = |t: &str| {
        let body = t.strip_prefix('-').unwrap_or(t);
        !body.is_empty() && body.chars().all(|c| c.is_ascii_digit())
    };
    if !digits(num) {
        return None;
    }
    let numer: BigInt = num.parse().ok()?;
    match den {
        None => Some(BigRational::from_integer(numer)),
        Some(d) => {
            if d.is_empty() || !d.chars().all(|c| c.is_ascii_digit()) {
                return None;
            }
            let denom: BigInt = d.parse().ok()?;
            if denom.is_zero() {
                return None;
            }
            Some(BigRational::new(numer, denom))
        }
    }
}

/// A quiver together with the optional `alpha` and `lambda` blocks of a file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverDocument {
    pub quiver: Quiver,
    pub alpha: Option<DimVector>,
    pub lambda: Option<Weights>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cm() -> Quiver {
        Quiver::new(["v0", "vinf"], [("x", "v0", "v0"), ("v", "vinf", "v0")]).unwrap()
    }

    #[test]
    fn double_of_loop() {
        let q = Quiver::new(["u"], [("a", "u", "u")]).unwrap();
        let d = q.double();
        assert_eq!(d.arrow_count(), 2);
        assert_eq!(d.arrow_name(0), "a");
        assert_eq!(d.arrow_name(1), "a*");
        for c in 0..2 {
            assert_eq!(d.tail(c), 0);
            assert_eq!(d.head(c), 0);
        }
    }

    #[test]
    fn double_of_a2() {
        let q = Quiver::new(["v1", "v2"], [("a", "v1", "v2")]).unwrap();
        let d = q.double();
        assert_eq!((d.tail(0), d.head(0)), (0, 1));
        assert_eq!((d.tail(1), d.head(1)), (1, 0));
        assert_eq!(d.arrow_by_name("a*"), Some(1));
        assert_eq!(d.arrow_by_name("b"), None);
    }

    #[test]
    fn double_without_arrows_is_base() {
        let q = Quiver::new(["u", "w"], Vec::<(&str, &str, &str)>::new()).unwrap();
        let d = q.double();
        assert_eq!(d.arrow_count(), 0);
        assert_eq!(d.base(), &q);
    }

    #[test]
    fn star_is_fixed_point_free_involution() {
        let d = cm().double();
        for c in 0..d.arrow_count() {
            assert_ne!(d.star(c), c);
            assert_eq!(d.star(d.star(c)), c);
            assert_eq!(d.tail(d.star(c)), d.head(c));
            assert_eq!(d.head(d.star(c)), d.tail(c));
        }
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            Quiver::new(["u", "u"], Vec::<(&str, &str, &str)>::new()),
            Err(QuiverError::DuplicateId("u".into()))
        );
        assert_eq!(
            Quiver::new(["u"], [("a", "u", "w")]),
            Err(QuiverError::UnknownVertex("w".into()))
        );
        assert_eq!(
            Quiver::new(["u"], [("u", "u", "u")]),
            Err(QuiverError::DuplicateId("u".into()))
        );
        assert!(matches!(
            Quiver::new(["a*"], Vec::<(&str, &str, &str)>::new()),
            Err(QuiverError::InvalidId(_))
        ));
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-2/4"), Some(BigRational::new((-1).into(), 2.into())));
        assert_eq!(parse_rational("3"), Some(BigRational::from_integer(3.into())));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("1/-2"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(format_rational(&BigRational::new(6.into(), (-4).into())), "-3/2");
    }

    #[test]
    fn sub_vectors_enumerates_box() {
        let b = DimVector(vec![1, 2]);
        let subs = b.sub_vectors();
        assert_eq!(subs.len(), 6);
        assert_eq!(subs[0], DimVector(vec![0, 0]));
        assert_eq!(subs[5], DimVector(vec![1, 2]));
    }
}
