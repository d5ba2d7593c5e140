//! Dense curvature arrays, 2-jets and permutation tables.

mod curvature;
mod jet;
mod perm;

pub use curvature::{constant_curvature, random_alg_curvature, AlgCurvature, FrameKind, SymmetryDefects};
pub use jet::{jet2_lift, Jet2, MAX_DIM};
pub use perm::{permutations, Perm};
