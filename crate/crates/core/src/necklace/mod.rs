//! Paths in a double quiver, necklace words and the necklace Lie algebra.
//!
//! A path is stored in traversal order `c_1, ..., c_m` (so `head(c_s) =
//! tail(c_{s+1})`). As an element of the path algebra it is the product
//! `c_m ... c_1`: multiplication concatenates on the left, and `x * y` means
//! "walk `y`, then walk `x`".

mod bracket;
mod rotation;
pub mod sample;

pub use bracket::{bracket, bracket_closed_paths, bracket_elements};
pub use rotation::{canonical_rotation, least_rotation};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::Add;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::quiver::{format_rational, DoubleQuiver};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NecklaceError {
    #[error("unknown arrow {0}")]
    UnknownArrow(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("arrows {0} and {1} are not composable")]
    NotComposable(String, String),
    #[error("walk is not closed")]
    NotClosed,
    #[error("empty word")]
    Empty,
}

/// A path in the double quiver. Length-zero paths are vertex idempotents.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    start: usize,
    arrows: Vec<usize>,
}

impl Path {
    pub fn idempotent(vertex: usize) -> Self {
        Path {
            start: vertex,
            arrows: Vec::new(),
        }
    }

    /// Builds a path of double-quiver arrows given in traversal order.
    pub fn new(dq: &DoubleQuiver, arrows: Vec<usize>) -> Result<Self, NecklaceError> {
        let Some(&first) = arrows.first() else {
            return Err(NecklaceError::Empty);
        };
        for w in arrows.windows(2) {
            if dq.head(w[0]) != dq.tail(w[1]) {
                return Err(NecklaceError::NotComposable(dq.arrow_name(w[0]), dq.arrow_name(w[1])));
            }
        }
        Ok(Path {
            start: dq.tail(first),
            arrows,
        })
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self, dq: &DoubleQuiver) -> usize {
        self.arrows.last().map_or(self.start, |&c| dq.head(c))
    }

    pub fn is_closed(&self, dq: &DoubleQuiver) -> bool {
        self.end(dq) == self.start
    }

    /// `self * other`: walk `other` first, then `self`. `None` when the
    /// endpoints do not match.
    pub fn compose(&self, other: &Path, dq: &DoubleQuiver) -> Option<Path> {
        if other.end(dq) != self.start {
            return None;
        }
        let mut arrows = other.arrows.clone();
        arrows.extend_from_slice(&self.arrows);
        Some(Path {
            start: other.start,
            arrows,
        })
    }

    pub fn to_text(&self, dq: &DoubleQuiver) -> String {
        if self.arrows.is_empty() {
            return format!("e_{}", dq.base().vertices()[self.start]);
        }
        self.arrows
            .iter()
            .map(|&c| dq.arrow_name(c))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.start.cmp(&other.start))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A closed walk up to rotation, stored as its least rotation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NecklaceWord(Path);

impl NecklaceWord {
    pub fn vertex(vertex: usize) -> Self {
        NecklaceWord(Path::idempotent(vertex))
    }

    /// Least-rotation representative of a closed path.
    pub fn canonicalize(cycle: &Path, dq: &DoubleQuiver) -> Result<Self, NecklaceError> {
        if !cycle.is_closed(dq) {
            return Err(NecklaceError::NotClosed);
        }
        Ok(Self::from_cycle_unchecked(&cycle.arrows, cycle.start, dq))
    }

    /// Caller guarantees `arrows` is cyclically composable.
    pub(crate) fn from_cycle_unchecked(arrows: &[usize], vertex: usize, dq: &DoubleQuiver) -> Self {
        if arrows.is_empty() {
            return NecklaceWord::vertex(vertex);
        }
        let arrows = canonical_rotation(arrows);
        NecklaceWord(Path {
            start: dq.tail(arrows[0]),
            arrows,
        })
    }

    /// Parses space-separated arrow tokens (`a`, `a*`) in traversal order,
    /// or `e_<vertex>` for a vertex necklace.
    pub fn parse(dq: &DoubleQuiver, text: &str) -> Result<Self, NecklaceError> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.is_empty() {
            return Err(NecklaceError::Empty);
        }
        if let [single] = tokens[..] {
            if dq.arrow_by_name(single).is_none() {
                if let Some(v) = single.strip_prefix("e_") {
                    return dq
                        .base()
                        .vertex_index(v)
                        .map(NecklaceWord::vertex)
                        .ok_or_else(|| NecklaceError::UnknownVertex(v.to_string()));
                }
            }
        }
        let arrows = tokens
            .iter()
            .map(|t| {
                dq.arrow_by_name(t)
                    .ok_or_else(|| NecklaceError::UnknownArrow(t.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let path = Path::new(dq, arrows)?;
        Self::canonicalize(&path, dq)
    }

    pub fn path(&self) -> &Path {
        &self.0
    }

    pub fn arrows(&self) -> &[usize] {
        &self.0.arrows
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_text(&self, dq: &DoubleQuiver) -> String {
        self.0.to_text(dq)
    }
}

/// A finite rational combination with no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Combination<K: Ord> {
    terms: BTreeMap<K, BigRational>,
}

/// Element of the necklace Lie algebra.
pub type LieElement = Combination<NecklaceWord>;
/// Element of the path algebra of the double quiver.
pub type PathElement = Combination<Path>;

impl<K: Ord + Clone> Combination<K> {
    pub fn zero() -> Self {
        Combination { terms: BTreeMap::new() }
    }

    pub fn term(key: K, coefficient: BigRational) -> Self {
        let mut c = Self::zero();
        c.add_term(key, coefficient);
        c
    }

    pub fn basis(key: K) -> Self {
        Self::term(key, BigRational::one())
    }

    pub fn add_term(&mut self, key: K, coefficient: BigRational) {
        if coefficient.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coefficient);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coefficient;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, key: &K) -> BigRational {
        self.terms.get(key).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &BigRational)> {
        self.terms.iter()
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c * factor);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRational::one())
    }
}

impl<K: Ord + Clone> Add<&Combination<K>> for &Combination<K> {
    type Output = Combination<K>;

    fn add(self, rhs: &Combination<K>) -> Combination<K> {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }
}

impl<K: Ord + Clone> FromIterator<(K, BigRational)> for Combination<K> {
    fn from_iter<I: IntoIterator<Item = (K, BigRational)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl LieElement {
    /// `4 (a a*) - 1/2 (e_v)`, or `0`.
    pub fn to_text(&self, dq: &DoubleQuiver) -> String {
        render(self.terms.iter().map(|(w, c)| (w.to_text(dq), c)))
    }
}

impl PathElement {
    pub fn to_text(&self, dq: &DoubleQuiver) -> String {
        render(self.terms.iter().map(|(p, c)| (p.to_text(dq), c)))
    }
}

fn render<'a>(terms: impl Iterator<Item = (String, &'a BigRational)>) -> String {
    let mut out = String::new();
    for (i, (word, c)) in terms.enumerate() {
        let magnitude = format_rational(&c.abs());
        match (i, c.is_negative()) {
            (0, false) => out.push_str(&format!("{magnitude} ({word})")),
            (0, true) => out.push_str(&format!("-{magnitude} ({word})")),
            (_, false) => out.push_str(&format!(" + {magnitude} ({word})")),
            (_, true) => out.push_str(&format!(" - {magnitude} ({word})")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Bilinear extension of path concatenation.
pub fn multiply(dq: &DoubleQuiver, x: &PathElement, y: &PathElement) -> PathElement {
    let mut out = PathElement::zero();
    for (p, c) in x.iter() {
        for (q, d) in y.iter() {
            if let Some(pq) = p.compose(q, dq) {
                out.add_term(pq, c * d);
            }
        }
    }
    out
}

/// `m = sum over base arrows of a a* - a* a`.
pub fn moment_element(dq: &DoubleQuiver) -> PathElement {
    let mut m = PathElement::zero();
    for j in 0..dq.base().arrow_count() {
        let (a, a_star) = (2 * j, 2 * j + 1);
        let aa_star = Path::new(dq, vec![a_star, a]).expect("a* then a is composable");
        let a_star_a = Path::new(dq, vec![a, a_star]).expect("a then a* is composable");
        m.add_term(aa_star, BigRational::one());
        m.add_term(a_star_a, -BigRational::one());
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;

    fn jordan() -> DoubleQuiver {
        Quiver::new(["v"], [("a", "v", "v")]).unwrap().double()
    }

    fn a2() -> DoubleQuiver {
        Quiver::new(["v1", "v2"], [("a", "v1", "v2")]).unwrap().double()
    }

    fn word(dq: &DoubleQuiver, s: &str) -> NecklaceWord {
        NecklaceWord::parse(dq, s).unwrap()
    }

    #[test]
    fn rotations_share_a_necklace() {
        let dq = jordan();
        assert_eq!(word(&dq, "a a*"), word(&dq, "a* a"));
        assert_eq!(word(&dq, "a a a*"), word(&dq, "a a* a"));
        assert_eq!(word(&dq, "a a* a"), word(&dq, "a* a a"));
        assert_eq!(word(&dq, "a* a").to_text(&dq), "a a*");
    }

    #[test]
    fn open_walks_are_rejected() {
        let dq = a2();
        assert_eq!(NecklaceWord::parse(&dq, "a"), Err(NecklaceError::NotClosed));
        assert!(matches!(
            NecklaceWord::parse(&dq, "a a"),
            Err(NecklaceError::NotComposable(_, _))
        ));
        assert!(matches!(
            NecklaceWord::parse(&dq, "b"),
            Err(NecklaceError::UnknownArrow(_))
        ));
        assert_eq!(NecklaceWord::parse(&dq, "  "), Err(NecklaceError::Empty));
        let open = Path::new(&dq, vec![0]).unwrap();
        assert_eq!(NecklaceWord::canonicalize(&open, &dq), Err(NecklaceError::NotClosed));
    }

    #[test]
    fn vertex_necklaces_parse() {
        let dq = a2();
        assert_eq!(word(&dq, "e_v2"), NecklaceWord::vertex(1));
        assert!(NecklaceWord::parse(&dq, "e_v3").is_err());
    }

    #[test]
    fn canonicalize_is_idempotent() {
        let dq = jordan();
        let w = word(&dq, "a* a a* a*");
        assert_eq!(NecklaceWord::canonicalize(w.path(), &dq).unwrap(), w);
    }

    #[test]
    fn idempotents_multiply() {
        let dq = a2();
        let e = |i| PathElement::basis(Path::idempotent(i));
        assert_eq!(multiply(&dq, &e(0), &e(0)), e(0));
        assert!(multiply(&dq, &e(0), &e(1)).is_zero());
    }

    #[test]
    fn concatenation_on_the_left() {
        let dq = a2();
        let a = PathElement::basis(Path::new(&dq, vec![0]).unwrap());
        let a_star = PathElement::basis(Path::new(&dq, vec![1]).unwrap());
        let prod = multiply(&dq, &a_star, &a);
        let expected = Path::new(&dq, vec![0, 1]).unwrap();
        assert_eq!(prod, PathElement::basis(expected.clone()));
        assert_eq!(expected.start(), 0);
        assert!(expected.is_closed(&dq));
        assert!(multiply(&dq, &a, &a).is_zero());
        let e1 = PathElement::basis(Path::idempotent(0));
        let e2 = PathElement::basis(Path::idempotent(1));
        assert_eq!(multiply(&dq, &a, &e1), a);
        assert_eq!(multiply(&dq, &e2, &a), a);
        assert!(multiply(&dq, &e1, &a).is_zero());
    }

    #[test]
    fn moment_elements() {
        let dq = jordan();
        let m = moment_element(&dq);
        assert_eq!(m.len(), 2);
        assert_eq!(m.coefficient(&Path::new(&dq, vec![1, 0]).unwrap()), BigRational::one());
        assert_eq!(m.coefficient(&Path::new(&dq, vec![0, 1]).unwrap()), -BigRational::one());

        let dq = a2();
        let m = moment_element(&dq);
        let starts: Vec<_> = m.iter().map(|(p, _)| p.start()).collect();
        assert_eq!(starts, vec![0, 1]);
        assert_eq!(m.to_text(&dq), "-1 (a a*) + 1 (a* a)");

        let lone = Quiver::new(["u"], Vec::<(&str, &str, &str)>::new()).unwrap().double();
        assert!(moment_element(&lone).is_zero());
    }

    #[test]
    fn combination_arithmetic() {
        let dq = jordan();
        let x = LieElement::basis(word(&dq, "a a*"));
        assert!((&x + &x.neg()).is_zero());
        assert_eq!(
            x.scale(&BigRational::new(3.into(), 2.into())).to_text(&dq),
            "3/2 (a a*)"
        );
        assert_eq!(LieElement::zero().to_text(&dq), "0");
    }
}
