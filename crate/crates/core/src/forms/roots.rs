//! Positive roots inside a bounding box.
//!
//! Real roots are the reflection orbit of the simple roots at loop-free
//! vertices. Imaginary roots are the orbit of the fundamental region, which
//! contains every simple root at a vertex with loops. Only reflections at
//! loop-free vertices exist. An image leaving the box is dropped; since the
//! descent from a root to its seed only lowers entries, nothing inside the
//! box is lost.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_traits::Signed;

use super::FormsContext;
use crate::quiver::DimVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootKind {
    Real,
    Imaginary,
}

impl fmt::Display for RootKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RootKind::Real => "real",
            RootKind::Imaginary => "imaginary",
        })
    }
}

/// Positive roots `<= bound`, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSet {
    bound: DimVector,
    roots: BTreeMap<DimVector, RootKind>,
}

impl RootSet {
    pub fn bound(&self) -> &DimVector {
        &self.bound
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, v: &DimVector) -> bool {
        self.roots.contains_key(v)
    }

    pub fn kind(&self, v: &DimVector) -> Option<RootKind> {
        self.roots.get(v).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&DimVector, RootKind)> {
        self.roots.iter().map(|(v, k)| (v, *k))
    }
}

/// Support of `v` is nonempty and connected in the underlying graph.
pub fn has_connected_support(ctx: &FormsContext, v: &[u64]) -> bool {
    let support: Vec<usize> = (0..v.len()).filter(|&i| v[i] > 0).collect();
    let Some(&start) = support.first() else {
        return false;
    };
    let mut seen = vec![false; v.len()];
    seen[start] = true;
    let mut stack = vec![start];
    let mut reached = 1;
    while let Some(i) = stack.pop() {
        for a in ctx.quiver().arrows() {
            let other = if a.tail == i {
                a.head
            } else if a.head == i {
                a.tail
            } else {
                continue;
            };
            if v[other] > 0 && !seen[other] {
                seen[other] = true;
                reached += 1;
                stack.push(other);
            }
        }
    }
    reached == support.len()
}

/// Nonzero, connected support and `T(v, e_j) <= 0` at every loop-free `j`.
pub fn is_fundamental(ctx: &FormsContext, v: &DimVector) -> bool {
    has_connected_support(ctx, v)
        && (0..ctx.rank())
            .filter(|&j| ctx.is_loop_free(j))
            .all(|j| !ctx.tits_with_simple(v, j).expect("length checked").is_positive())
}

/// All positive roots `<= bound`, each flagged real or imaginary.
///
/// # Panics
/// If `bound` does not have one entry per vertex.
pub fn enumerate_roots(ctx: &FormsContext, bound: &DimVector) -> RootSet {
    assert_eq!(bound.len(), ctx.rank(), "box must have one entry per vertex");
    let k = ctx.rank();
    let mut roots = BTreeMap::new();
    let mut queue = VecDeque::new();

    for i in (0..k).filter(|&i| ctx.is_loop_free(i) && bound[i] > 0) {
        let e = DimVector::unit(k, i);
        roots.insert(e.clone(), RootKind::Real);
        queue.push_back(e);
    }
    for v in bound.sub_vectors() {
        if !roots.contains_key(&v) && is_fundamental(ctx, &v) {
            roots.insert(v.clone(), RootKind::Imaginary);
            queue.push_back(v);
        }
    }

    while let Some(v) = queue.pop_front() {
        let kind = roots[&v];
        for j in (0..k).filter(|&j| ctx.is_loop_free(j)) {
            let image = ctx.reflect(j, &v).expect("loop-free vertex");
            let Ok(image) = DimVector::from_bigint(&image) else {
                continue;
            };
            if image.is_zero() || !image.le(bound) || roots.contains_key(&image) {
                continue;
            }
            roots.insert(image.clone(), kind);
            queue.push_back(image);
        }
    }

    RootSet {
        bound: bound.clone(),
        roots,
    }
}
