//! Euler characteristic of a domain with boundary on a smooth surface in R^3,
//! computed by counting signed tangencies of a sweeping plane family.
//!
//! A direction `u` on the unit sphere defines the family of planes orthogonal
//! to `u`. As the plane sweeps through space it touches the domain `D` at
//! finitely many interior points (where the surface normal is parallel to `u`)
//! and touches the boundary curve at finitely many points (where the plane
//! section of the surface is tangent to the boundary). Each contact carries a
//! sign, and for a generic direction
//!
//! ```text
//! chi(D) = sum over interior tangencies of sign K
//!        + 1/2 sum over boundary tangencies of sign(k_g - k_g^u)
//! ```
//!
//! where `K` is the Gauss curvature, `k_g` the geodesic curvature of the
//! boundary and `k_g^u` the geodesic curvature of the sweeping section curve.
//!
//! The crate is organized as:
//!
//! - [`geometry`]: parametric surfaces, fundamental forms, curvature of
//!   curves on surfaces, and the section-curve curvature.
//! - [`domain`]: scenes (surface + Fourier boundary curves + membership),
//!   the built-in catalog, and scene file I/O.
//! - [`sweep`]: tangency detection, classification, genericity enforcement,
//!   and the signed count itself.
//! - [`special`]: closed-form counting rules for plane domains and for
//!   domains on the unit sphere (parallel and meridian sweeps).
//! - [`oracle`]: independent ground truth (combinatorial cell-complex
//!   characteristic, Gauss-Bonnet quadrature, sweep census tallies).

pub mod config;
pub mod domain;
mod error;
pub mod fourier;
pub mod geometry;
pub mod oracle;
pub mod rootfind;
pub mod special;
pub mod sweep;

pub use config::SweepConfig;
pub use error::{Error, Result};
