//! Wodzicki-Chern-Simons forms on loop spaces of Riemannian 3- and 5-manifolds.
//!
//! The crate is layered bottom-up:
//!
//! * [`tensor`]: 2-jets for exact second derivatives, permutation tables and
//!   algebraic curvature tensors.
//! * [`geometry`]: metric charts, Levi-Civita connection, Riemann and Ricci
//!   tensors, orthonormal frames and the first Pontrjagin density.
//! * [`wcsform`]: the pointwise WCS integrand in its full and reduced forms.
//! * [`sasaki`]: circle bundles over Kähler surfaces.
//! * [`ypq`]: the Y^{p,q} Sasaki-Einstein metrics and their WCS integral.
//!
//! Curvature convention: `R(∂j,∂k)∂b = R_{jkb}^a ∂a` and
//! `R(X,Y,Z,W) = <R(X,Y)Z, W>`, so `R(X,Y,X,Y)` is minus the sectional
//! curvature of the plane spanned by orthonormal `X`, `Y`.

pub mod error;
pub mod geometry;
pub mod report;
pub mod sasaki;
pub mod tensor;
pub mod wcsform;
pub mod ypq;

pub use error::{Result, WcsError};

/// Human-readable statement of the curvature sign convention, echoed in reports.
pub const SIGN_CONVENTION: &str =
    "R(X,Y,Z,W) = <R(X,Y)Z,W>, R(X,Y) = [D_X,D_Y] - D_[X,Y]; R(e_i,e_j,e_i,e_j) = -K(e_i,e_j)";
