//! Differential geometry of parametric surfaces and of curves lying on them.

mod curve;
mod surface;
mod vec3;

pub use curve::{curve_geometry, section_curve_curvature, CurveGeometry};
pub use surface::{
    surface_geometry, tangential_projection, ParamPoint, ParamRect, Poly2, Surface, SurfaceGeometry,
    SurfaceJet,
};
pub use vec3::{Direction, Vec3};
