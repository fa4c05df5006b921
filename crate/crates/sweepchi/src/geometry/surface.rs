use serde::{Deserialize, Serialize};

use super::vec3::{Direction, Vec3};
use crate::error::{Error, Result};

/// A point in the parameter rectangle of a surface chart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamPoint {
    pub s: f64,
    pub t: f64,
}

impl ParamPoint {
    pub const fn new(s: f64, t: f64) -> Self {
        ParamPoint { s, t }
    }
}

/// Parameter rectangle `[s0,s1] x [t0,t1]` with periodicity flags.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamRect {
    pub s: [f64; 2],
    pub t: [f64; 2],
    pub wrap_s: bool,
    pub wrap_t: bool,
}

impl ParamRect {
    pub fn span_s(&self) -> f64 {
        self.s[1] - self.s[0]
    }

    pub fn span_t(&self) -> f64 {
        self.t[1] - self.t[0]
    }

    /// Canonical representative: wrapped coordinates reduced into the
    /// rectangle, non-wrapped ones left as-is.
    pub fn canonicalize(&self, p: ParamPoint) -> ParamPoint {
        ParamPoint::new(
            if self.wrap_s {
                wrap_into(p.s, self.s[0], self.s[1])
            } else {
                p.s
            },
            if self.wrap_t {
                wrap_into(p.t, self.t[0], self.t[1])
            } else {
                p.t
            },
        )
    }

    /// Euclidean distance in parameter space, shortest over wraps.
    pub fn dist(&self, a: ParamPoint, b: ParamPoint) -> f64 {
        let ds = signed_diff(a.s - b.s, self.wrap_s, self.span_s());
        let dt = signed_diff(a.t - b.t, self.wrap_t, self.span_t());
        ds.hypot(dt)
    }

    pub fn contains(&self, p: ParamPoint) -> bool {
        let s_ok = self.wrap_s || (p.s >= self.s[0] && p.s <= self.s[1]);
        let t_ok = self.wrap_t || (p.t >= self.t[0] && p.t <= self.t[1]);
        s_ok && t_ok
    }
}

fn wrap_into(x: f64, lo: f64, hi: f64) -> f64 {
    let span = hi - lo;
    let mut y = (x - lo) % span;
    if y < 0.0 {
        y += span;
    }
    lo + y
}

fn signed_diff(d: f64, wrap: bool, span: f64) -> f64 {
    if !wrap {
        return d;
    }
    let mut r = d % span;
    if r > span / 2.0 {
        r -= span;
    } else if r < -span / 2.0 {
        r += span;
    }
    r
}

/// Bivariate polynomial `sum c * s^i * t^j`, used for graph surfaces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Poly2 {
    /// Terms `(i, j, coefficient)`.
    pub terms: Vec<(u32, u32, f64)>,
}

impl Poly2 {
    pub fn new(terms: Vec<(u32, u32, f64)>) -> Self {
        Poly2 { terms }
    }

    /// Value and derivatives up to second order at `(s, t)`.
    fn jet(&self, s: f64, t: f64) -> [f64; 6] {
        // f, f_s, f_t, f_ss, f_st, f_tt
        let mut out = [0.0; 6];
        for &(i, j, c) in &self.terms {
            let (i, j) = (i as f64, j as f64);
            let si = s.powf(i);
            let tj = t.powf(j);
            let si1 = if i >= 1.0 { s.powf(i - 1.0) } else { 0.0 };
            let tj1 = if j >= 1.0 { t.powf(j - 1.0) } else { 0.0 };
            let si2 = if i >= 2.0 { s.powf(i - 2.0) } else { 0.0 };
            let tj2 = if j >= 2.0 { t.powf(j - 2.0) } else { 0.0 };
            out[0] += c * si * tj;
            out[1] += c * i * si1 * tj;
            out[2] += c * j * si * tj1;
            out[3] += c * i * (i - 1.0) * si2 * tj;
            out[4] += c * i * j * si1 * tj1;
            out[5] += c * j * (j - 1.0) * si * tj2;
        }
        out
    }
}

/// Position and first/second partial derivatives of the chart at one point.
#[derive(Debug, Clone, Copy)]
pub struct SurfaceJet {
    pub point: Vec3,
    pub ps: Vec3,
    pub pt: Vec3,
    pub pss: Vec3,
    pub pst: Vec3,
    pub ptt: Vec3,
}

/// Catalog of parametric surfaces with closed-form partials.
///
/// Sign decisions downstream depend on exact derivatives, which is why the
/// catalog is hand-coded rather than driven by an expression parser.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Surface {
    /// Flat chart `(s, t) -> (s, t, 0)`.
    Plane { extent: [[f64; 2]; 2] },
    /// Round sphere; `s` is the polar angle from +z in `[0, pi]`, `t` the
    /// azimuth in `[0, 2pi)` (wrapped). Chart degenerates at `s = 0, pi`.
    Sphere { radius: f64 },
    /// Torus of revolution about z; `s` is the toroidal angle, `t` the
    /// poloidal angle, both wrapped.
    Torus { major_radius: f64, minor_radius: f64 },
    /// Ellipsoid with semi-axes `(a, b, c)`; chart as for the sphere.
    Ellipsoid { semi_axes: [f64; 3] },
    /// Graph `z = f(s, t)` of a polynomial.
    Graph { poly: Poly2, extent: [[f64; 2]; 2] },
}

impl Surface {
    pub fn plane() -> Surface {
        Surface::Plane {
            extent: [[-3.0, 3.0], [-3.0, 3.0]],
        }
    }

    pub fn sphere(radius: f64) -> Surface {
        Surface::Sphere { radius }
    }

    pub fn torus(major_radius: f64, minor_radius: f64) -> Surface {
        Surface::Torus {
            major_radius,
            minor_radius,
        }
    }

    pub fn ellipsoid(a: f64, b: f64, c: f64) -> Surface {
        Surface::Ellipsoid { semi_axes: [a, b, c] }
    }

    pub fn graph(poly: Poly2) -> Surface {
        Surface::Graph {
            poly,
            extent: [[-3.0, 3.0], [-3.0, 3.0]],
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Surface::Plane { .. } => "plane",
            Surface::Sphere { .. } => "sphere",
            Surface::Torus { .. } => "torus",
            Surface::Ellipsoid { .. } => "ellipsoid",
            Surface::Graph { .. } => "graph",
        }
    }

    pub fn rect(&self) -> ParamRect {
        use std::f64::consts::PI;
        match self {
            Surface::Plane { extent } | Surface::Graph { extent, .. } => ParamRect {
                s: extent[0],
                t: extent[1],
                wrap_s: false,
                wrap_t: false,
            },
            Surface::Sphere { .. } | Surface::Ellipsoid { .. } => ParamRect {
                s: [0.0, PI],
                t: [0.0, 2.0 * PI],
                wrap_s: false,
                wrap_t: true,
            },
            Surface::Torus { .. } => ParamRect {
                s: [0.0, 2.0 * PI],
                t: [0.0, 2.0 * PI],
                wrap_s: true,
                wrap_t: true,
            },
        }
    }

    /// Chart position and partials. Pure closed forms, no finite differences.
    pub fn jet(&self, p: ParamPoint) -> SurfaceJet {
        let (s, t) = (p.s, p.t);
        match self {
            Surface::Plane { .. } => SurfaceJet {
                point: Vec3::new(s, t, 0.0),
                ps: Vec3::new(1.0, 0.0, 0.0),
                pt: Vec3::new(0.0, 1.0, 0.0),
                pss: Vec3::ZERO,
                pst: Vec3::ZERO,
                ptt: Vec3::ZERO,
            },
            Surface::Sphere { radius } => {
                let r = *radius;
                let (sin_s, cos_s) = s.sin_cos();
                let (sin_t, cos_t) = t.sin_cos();
                SurfaceJet {
                    point: Vec3::new(r * sin_s * cos_t, r * sin_s * sin_t, r * cos_s),
                    ps: Vec3::new(r * cos_s * cos_t, r * cos_s * sin_t, -r * sin_s),
                    pt: Vec3::new(-r * sin_s * sin_t, r * sin_s * cos_t, 0.0),
                    pss: Vec3::new(-r * sin_s * cos_t, -r * sin_s * sin_t, -r * cos_s),
                    pst: Vec3::new(-r * cos_s * sin_t, r * cos_s * cos_t, 0.0),
                    ptt: Vec3::new(-r * sin_s * cos_t, -r * sin_s * sin_t, 0.0),
                }
            }
            Surface::Torus {
                major_radius: big_r,
                minor_radius: r,
            } => {
                let (sin_s, cos_s) = s.sin_cos();
                let (sin_t, cos_t) = t.sin_cos();
                let w = big_r + r * cos_t;
                SurfaceJet {
                    point: Vec3::new(w * cos_s, w * sin_s, r * sin_t),
                    ps: Vec3::new(-w * sin_s, w * cos_s, 0.0),
                    pt: Vec3::new(-r * sin_t * cos_s, -r * sin_t * sin_s, r * cos_t),
                    pss: Vec3::new(-w * cos_s, -w * sin_s, 0.0),
                    pst: Vec3::new(r * sin_t * sin_s, -r * sin_t * cos_s, 0.0),
                    ptt: Vec3::new(-r * cos_t * cos_s, -r * cos_t * sin_s, -r * sin_t),
                }
            }
            Surface::Ellipsoid { semi_axes: [a, b, c] } => {
                let (sin_s, cos_s) = s.sin_cos();
                let (sin_t, cos_t) = t.sin_cos();
                SurfaceJet {
                    point: Vec3::new(a * sin_s * cos_t, b * sin_s * sin_t, c * cos_s),
                    ps: Vec3::new(a * cos_s * cos_t, b * cos_s * sin_t, -c * sin_s),
                    pt: Vec3::new(-a * sin_s * sin_t, b * sin_s * cos_t, 0.0),
                    pss: Vec3::new(-a * sin_s * cos_t, -b * sin_s * sin_t, -c * cos_s),
                    pst: Vec3::new(-a * cos_s * sin_t, b * cos_s * cos_t, 0.0),
                    ptt: Vec3::new(-a * sin_s * cos_t, -b * sin_s * sin_t, 0.0),
                }
            }
            Surface::Graph { poly, .. } => {
                let [f, fs, ft, fss, fst, ftt] = poly.jet(s, t);
                SurfaceJet {
                    point: Vec3::new(s, t, f),
                    ps: Vec3::new(1.0, 0.0, fs),
                    pt: Vec3::new(0.0, 1.0, ft),
                    pss: Vec3::new(0.0, 0.0, fss),
                    pst: Vec3::new(0.0, 0.0, fst),
                    ptt: Vec3::new(0.0, 0.0, ftt),
                }
            }
        }
    }

    pub fn position(&self, p: ParamPoint) -> Vec3 {
        self.jet(p).point
    }
}

/// First fundamental form coefficients `E, F, G` (or the second form's
/// `e, f, g` when used as `SurfaceGeometry::second`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FundamentalForm {
    pub e: f64,
    pub f: f64,
    pub g: f64,
}

impl FundamentalForm {
    pub fn det(&self) -> f64 {
        self.e * self.g - self.f * self.f
    }
}

/// Pointwise surface data: unit normal, both fundamental forms, Gauss
/// curvature.
#[derive(Debug, Clone, Copy)]
pub struct SurfaceGeometry {
    pub normal: Vec3,
    pub first: FundamentalForm,
    pub second: FundamentalForm,
    pub gauss: f64,
}

impl SurfaceGeometry {
    /// Area element `sqrt(EG - F^2)`.
    pub fn area_element(&self) -> f64 {
        self.first.det().sqrt()
    }
}

/// Normal, fundamental forms and Gauss curvature at `p`.
pub fn surface_geometry(surface: &Surface, p: ParamPoint) -> Result<SurfaceGeometry> {
    let jet = surface.jet(p);
    let raw_normal = jet.ps.cross(jet.pt);
    let norm = raw_normal.norm();
    if norm < 1e-12 {
        return Err(Error::DegenerateChart { s: p.s, t: p.t, norm });
    }
    let normal = raw_normal * (1.0 / norm);
    let first = FundamentalForm {
        e: jet.ps.dot(jet.ps),
        f: jet.ps.dot(jet.pt),
        g: jet.pt.dot(jet.pt),
    };
    let second = FundamentalForm {
        e: jet.pss.dot(normal),
        f: jet.pst.dot(normal),
        g: jet.ptt.dot(normal),
    };
    let gauss = second.det() / first.det();
    Ok(SurfaceGeometry {
        normal,
        first,
        second,
        gauss,
    })
}

/// Normalized orthogonal projection of `u` onto the tangent plane.
pub fn tangential_projection(geom: &SurfaceGeometry, u: Direction) -> Result<Vec3> {
    let v = u.vec() - geom.normal * u.vec().dot(geom.normal);
    if v.norm() < 1e-10 {
        return Err(Error::ProjectionUndefined);
    }
    Ok(v.normalized().expect("norm checked above"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn sphere_has_unit_curvature() {
        let sphere = Surface::sphere(1.0);
        for (s, t) in [(0.4, 0.0), (1.2, 2.0), (2.7, 5.9), (PI / 2.0, PI)] {
            let g = surface_geometry(&sphere, ParamPoint::new(s, t)).unwrap();
            assert!((g.gauss - 1.0).abs() < 1e-10, "K = {} at ({s},{t})", g.gauss);
            assert!((g.normal.norm() - 1.0).abs() < 1e-12);
            // Chart normal is outward: parallel to the position vector.
            let pos = sphere.position(ParamPoint::new(s, t));
            assert!(g.normal.cross(pos).norm() < 1e-10);
            assert!(g.normal.dot(pos) > 0.0);
        }
    }

    #[test]
    fn torus_curvature_at_equators() {
        // K = cos(t) / (r (R + r cos t)) for R=2, r=1: 1/3 outside, -1 inside.
        let torus = Surface::torus(2.0, 1.0);
        let outer = surface_geometry(&torus, ParamPoint::new(0.7, 0.0)).unwrap();
        assert!((outer.gauss - 1.0 / 3.0).abs() < 1e-10);
        let inner = surface_geometry(&torus, ParamPoint::new(0.7, PI)).unwrap();
        assert!((inner.gauss + 1.0).abs() < 1e-10);
    }

    #[test]
    fn plane_is_flat() {
        let plane = Surface::plane();
        let g = surface_geometry(&plane, ParamPoint::new(0.3, -1.2)).unwrap();
        assert_eq!(g.gauss, 0.0);
        assert_eq!(g.normal, Vec3::new(0.0, 0.0, 1.0));
    }

    #[test]
    fn chart_degenerates_at_sphere_pole() {
        let sphere = Surface::sphere(1.0);
        let err = surface_geometry(&sphere, ParamPoint::new(0.0, 1.0)).unwrap_err();
        assert!(matches!(err, Error::DegenerateChart { .. }));
    }

    #[test]
    fn gauss_matches_second_form_quotient() {
        let torus = Surface::torus(2.0, 1.0);
        let g = surface_geometry(&torus, ParamPoint::new(1.1, 2.3)).unwrap();
        let k = g.second.det() / g.first.det();
        assert!((g.gauss - k).abs() <= 1e-10 * k.abs().max(1.0));
    }

    #[test]
    fn partials_match_finite_differences() {
        let surfaces = [
            Surface::plane(),
            Surface::sphere(1.0),
            Surface::torus(2.0, 1.0),
            Surface::ellipsoid(1.5, 1.0, 0.75),
            Surface::graph(Poly2::new(vec![(2, 0, 0.5), (0, 2, -0.4), (1, 1, 0.1)])),
        ];
        let h = 1e-5;
        for surf in &surfaces {
            let p = ParamPoint::new(1.0, 0.8);
            let jet = surf.jet(p);
            let at = |ds: f64, dt: f64| surf.position(ParamPoint::new(p.s + ds, p.t + dt));
            let fd_ps = (at(h, 0.0) - at(-h, 0.0)) * (0.5 / h);
            let fd_pt = (at(0.0, h) - at(0.0, -h)) * (0.5 / h);
            assert!((fd_ps - jet.ps).norm() < 1e-6 * jet.ps.norm().max(1.0));
            assert!((fd_pt - jet.pt).norm() < 1e-6 * jet.pt.norm().max(1.0));
            let fd_pss = (at(h, 0.0) + at(-h, 0.0) - jet.point - jet.point) * (1.0 / (h * h));
            assert!((fd_pss - jet.pss).norm() < 1e-4, "{}", surf.kind_name());
        }
    }

    #[test]
    fn projection_of_tangent_is_identity() {
        let sphere = Surface::sphere(1.0);
        let g = surface_geometry(&sphere, ParamPoint::new(PI / 2.0, 0.0)).unwrap();
        // Point (1,0,0), normal (1,0,0); u = z is already tangent.
        let u = Direction::new(Vec3::new(0.0, 0.0, 1.0)).unwrap();
        let proj = tangential_projection(&g, u).unwrap();
        assert!((proj - u.vec()).norm() < 1e-12);
    }

    #[test]
    fn projection_kills_normal_component() {
        let plane = Surface::plane();
        let g = surface_geometry(&plane, ParamPoint::new(0.0, 0.0)).unwrap();
        // 45 degrees between N = z and the tangent x-axis.
        let u = Direction::new(Vec3::new(1.0, 0.0, 1.0)).unwrap();
        let proj = tangential_projection(&g, u).unwrap();
        assert!((proj - Vec3::new(1.0, 0.0, 0.0)).norm() < 1e-12);
        assert!(proj.dot(g.normal).abs() < 1e-10);
    }

    #[test]
    fn projection_undefined_along_normal() {
        let plane = Surface::plane();
        let g = surface_geometry(&plane, ParamPoint::new(0.0, 0.0)).unwrap();
        let u = Direction::new(Vec3::new(0.0, 0.0, -1.0)).unwrap();
        assert!(matches!(
            tangential_projection(&g, u),
            Err(Error::ProjectionUndefined)
        ));
    }

    #[test]
    fn wrapped_distance_crosses_seam() {
        let rect = Surface::torus(2.0, 1.0).rect();
        let a = ParamPoint::new(0.1, 6.2);
        let b = ParamPoint::new(6.2, 0.1);
        let d = rect.dist(a, b);
        assert!(d < 0.35, "wrapped distance should be short, got {d}");
    }
}
