//! The necklace bracket.
//!
//! For every base arrow `a`, each occurrence of `a` in `w1` is paired with
//! each occurrence of `a*` in `w2`. Removing both letters leaves an open
//! walk `u: head(a) -> tail(a)` from `w1` and `v: tail(a) -> head(a)` from
//! `w2`; the closed walk `u v` contributes `+1`. Pairs with `a*` in `w1` and
//! `a` in `w2` contribute `-1` the same way.

use num_rational::BigRational;
use num_traits::One;

use super::{LieElement, NecklaceError, NecklaceWord, Path};
use crate::quiver::DoubleQuiver;

/// The walk left after deleting position `at` from the cyclic word `w`,
/// starting right after the deleted letter.
fn open_at(w: &[usize], at: usize) -> impl Iterator<Item = usize> + '_ {
    w[at + 1..].iter().chain(&w[..at]).copied()
}

fn bracket_cycles(dq: &DoubleQuiver, w1: &[usize], w2: &[usize]) -> LieElement {
    let mut out = LieElement::zero();
    for (i, &c1) in w1.iter().enumerate() {
        let target = dq.star(c1);
        let sign = if dq.is_dual(c1) {
            -BigRational::one()
        } else {
            BigRational::one()
        };
        for (j, &c2) in w2.iter().enumerate() {
            if c2 != target {
                continue;
            }
            let glued: Vec<usize> = open_at(w1, i).chain(open_at(w2, j)).collect();
            let word = NecklaceWord::from_cycle_unchecked(&glued, dq.head(c1), dq);
            out.add_term(word, sign.clone());
        }
    }
    out
}

/// Bracket of two necklace words.
pub fn bracket(dq: &DoubleQuiver, w1: &NecklaceWord, w2: &NecklaceWord) -> LieElement {
    bracket_cycles(dq, w1.arrows(), w2.arrows())
}

/// Bracket of the necklaces of two closed paths, in whatever rotation they
/// are given.
pub fn bracket_closed_paths(dq: &DoubleQuiver, p1: &Path, p2: &Path) -> Result<LieElement, NecklaceError> {
    if !p1.is_closed(dq) || !p2.is_closed(dq) {
        return Err(NecklaceError::NotClosed);
    }
    Ok(bracket_cycles(dq, p1.arrows(), p2.arrows()))
}

/// Bilinear extension of [`bracket`].
pub fn bracket_elements(dq: &DoubleQuiver, x: &LieElement, y: &LieElement) -> LieElement {
    let mut out = LieElement::zero();
    for (w1, c1) in x.iter() {
        for (w2, c2) in y.iter() {
            let coefficient = c1 * c2;
            for (w, c) in bracket(dq, w1, w2).iter() {
                out.add_term(w.clone(), c * &coefficient);
            }
        }
    }
    out
}
