use super::surface::{surface_geometry, Surface, SurfaceGeometry};
use super::vec3::{Direction, Vec3};
use crate::domain::BoundaryCurve;
use crate::error::{Error, Result};

/// Geometry of a boundary curve point, arc-length normalized.
///
/// `accel` is the second derivative of the arc-length reparametrization,
/// which decomposes as `accel = k_n N + k_g n` with no tangential part.
#[derive(Debug, Clone, Copy)]
pub struct CurveGeometry {
    pub position: Vec3,
    /// Unit tangent.
    pub tangent: Vec3,
    /// Inward surface normal of the boundary, `n = N x T`.
    pub normal: Vec3,
    /// Surface unit normal at the point.
    pub surface_normal: Vec3,
    /// Geodesic curvature `<accel, n>`.
    pub k_g: f64,
    /// Normal curvature `<accel, N>`.
    pub k_n: f64,
    /// Arc-length second derivative of the curve.
    pub accel: Vec3,
}

/// Evaluate tangent, inward normal and curvatures of `curve` on `surface`
/// at curve parameter `tau`.
///
/// The curve need not be unit speed; the arc-length correction
/// `accel = alpha'' / v^2 - alpha' <alpha', alpha''> / v^4` is applied here.
pub fn curve_geometry(surface: &Surface, curve: &BoundaryCurve, tau: f64) -> Result<CurveGeometry> {
    let pj = curve.param_jet(tau);
    let sj = surface.jet(pj.pos);
    let alpha1 = sj.ps * pj.d1[0] + sj.pt * pj.d1[1];
    let alpha2 = sj.pss * (pj.d1[0] * pj.d1[0])
        + sj.pst * (2.0 * pj.d1[0] * pj.d1[1])
        + sj.ptt * (pj.d1[1] * pj.d1[1])
        + sj.ps * pj.d2[0]
        + sj.pt * pj.d2[1];
    let speed = alpha1.norm();
    if speed < 1e-12 {
        return Err(Error::SingularCurvePoint { tau, speed });
    }
    let geom = surface_geometry(surface, pj.pos)?;
    let tangent = alpha1 * (1.0 / speed);
    let normal = geom.normal.cross(tangent);
    let v2 = speed * speed;
    let accel = alpha2 * (1.0 / v2) - alpha1 * (alpha1.dot(alpha2) / (v2 * v2));
    Ok(CurveGeometry {
        position: sj.point,
        tangent,
        normal,
        surface_normal: geom.normal,
        k_g: accel.dot(normal),
        k_n: accel.dot(geom.normal),
        accel,
    })
}

/// Geodesic curvature `k_g^u` of the plane-section curve through a boundary
/// tangency, from the relation `0 = k_n <u,N> + k_g^u <u,n>`.
///
/// Only meaningful where the section and the boundary are tangent (same
/// orientation); `tol` bounds `|<u,n>|` from below.
pub fn section_curve_curvature(
    geom_s: &SurfaceGeometry,
    geom_c: &CurveGeometry,
    u: Direction,
    tol: f64,
) -> Result<f64> {
    let un = u.vec().dot(geom_c.normal);
    if un.abs() < tol {
        return Err(Error::NonTransverseSection { un });
    }
    Ok(-geom_c.k_n * u.vec().dot(geom_s.normal) / un)
}
