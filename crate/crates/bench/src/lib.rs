//! Fixtures shared by the benchmarks.

use quiverlab_core::quiver::Quiver;

/// Loop `x` at `v0` plus an arrow `v: vinf -> v0`.
pub fn calogero_moser() -> Quiver {
    Quiver::new(["v0", "vinf"], [("x", "v0", "v0"), ("v", "vinf", "v0")]).unwrap()
}

/// One vertex carrying `g` loops.
pub fn bouquet(g: usize) -> Quiver {
    Quiver::from_indices(1, &vec![(0, 0); g])
}
