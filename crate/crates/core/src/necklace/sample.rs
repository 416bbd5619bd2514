//! Random quivers and necklace words for property checks and benchmarks.

use rand::Rng;

use super::{NecklaceWord, Path};
use crate::quiver::{DoubleQuiver, Quiver};

/// A random quiver with `1..=max_vertices` vertices and `0..=max_arrows`
/// arrows (loops and parallel arrows included), doubled.
pub fn random_double_quiver<R: Rng>(rng: &mut R, max_vertices: usize, max_arrows: usize) -> DoubleQuiver {
    random_quiver(rng, max_vertices, max_arrows).double()
}

pub fn random_quiver<R: Rng>(rng: &mut R, max_vertices: usize, max_arrows: usize) -> Quiver {
    let k = rng.random_range(1..=max_vertices);
    let m = rng.random_range(0..=max_arrows);
    let arrows: Vec<(usize, usize)> = (0..m)
        .map(|_| (rng.random_range(0..k), rng.random_range(0..k)))
        .collect();
    Quiver::from_indices(k, &arrows)
}

/// A random closed walk of length `1..=max_len`, found by rejection from
/// random walks. Falls back to `a a*` for a random arrow, and to a vertex
/// necklace when the quiver has no arrows.
pub fn random_necklace<R: Rng>(dq: &DoubleQuiver, rng: &mut R, max_len: usize) -> Option<NecklaceWord> {
    if dq.arrow_count() == 0 {
        return Some(NecklaceWord::vertex(rng.random_range(0..dq.vertex_count())));
    }
    for _ in 0..64 {
        let len = rng.random_range(1..=max_len.max(1));
        let first = rng.random_range(0..dq.arrow_count());
        let mut walk = vec![first];
        while walk.len() < len {
            let here = dq.head(*walk.last().unwrap());
            let out: Vec<usize> = dq.arrows_from(here).collect();
            walk.push(out[rng.random_range(0..out.len())]);
        }
        if dq.head(*walk.last().unwrap()) == dq.tail(first) {
            let path = Path::new(dq, walk).expect("walk is composable");
            return NecklaceWord::canonicalize(&path, dq).ok();
        }
    }
    if max_len < 2 {
        return None;
    }
    let c = rng.random_range(0..dq.arrow_count());
    let path = Path::new(dq, vec![c, dq.star(c)]).expect("c then c* is composable");
    NecklaceWord::canonicalize(&path, dq).ok()
}
