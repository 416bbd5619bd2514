//! Exact computations around deformed preprojective algebras of quivers.
//!
//! * [`quiver`]: quivers, doubles, dimension vectors, weights, file formats.
//! * [`forms`]: Euler and Tits forms, reflections and positive roots.
//! * [`necklace`]: paths, necklace words and the necklace Lie bracket.
//! * [`sigma`]: dimension vectors of simple representations, representation
//!   types, local quivers and the smoothness decision.
//! * [`lab`]: numerical and exact checks of the moment map.

pub mod forms;
pub mod lab;
pub mod necklace;
pub mod quiver;
pub mod sigma;

pub use forms::{FormsContext, RootKind, RootSet};
pub use necklace::{LieElement, NecklaceWord, Path, PathElement};
pub use quiver::{DimVector, DoubleQuiver, Quiver, QuiverDocument, Weights};
pub use sigma::{DecisionReport, LocalQuiverSetting, RepType, SigmaQuery};
