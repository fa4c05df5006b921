//! Scene model: a domain with boundary on a surface, membership testing,
//! the built-in catalog and scene file I/O.

mod catalog;
mod curve;
mod membership;
mod schema;
mod validate;

pub use catalog::{catalog, sphere_circle_curve};
pub use curve::{BoundaryCurve, CurveParamJet};
pub use schema::{load_scene, scene_from_json, scene_to_json, save_scene};
pub use validate::{validate_domain, ValidationLimits};

use crate::error::{Error, Result};
use crate::geometry::{ParamPoint, ParamRect, Surface};

pub(crate) use membership::{distance_to_curve, row_crossings, segment_crossings, RowCrossing};

/// Points closer than this to a boundary curve are reported as on-boundary.
pub(crate) const ON_BOUNDARY_TOL: f64 = 1e-9;

/// A domain with boundary on a parametric surface.
///
/// Membership is decided by crossing parity against a declared interior
/// seed point, which stays well defined even for boundaries that are
/// homologically nontrivial in a periodic chart (e.g. a band around the
/// torus). An empty boundary list means the whole closed surface.
#[derive(Debug, Clone)]
pub struct Domain {
    surface: Surface,
    boundaries: Vec<BoundaryCurve>,
    seed: ParamPoint,
    reference_chi: Option<i64>,
}

impl Domain {
    pub fn new(
        surface: Surface,
        boundaries: Vec<BoundaryCurve>,
        seed: ParamPoint,
        reference_chi: Option<i64>,
    ) -> Self {
        let rect = surface.rect();
        Domain {
            surface,
            boundaries,
            seed: rect.canonicalize(seed),
            reference_chi,
        }
    }

    pub fn surface(&self) -> &Surface {
        &self.surface
    }

    pub fn rect(&self) -> ParamRect {
        self.surface.rect()
    }

    pub fn boundaries(&self) -> &[BoundaryCurve] {
        &self.boundaries
    }

    pub fn seed(&self) -> ParamPoint {
        self.seed
    }

    pub fn reference_chi(&self) -> Option<i64> {
        self.reference_chi
    }

    /// Is `p` in the closed domain? Counts boundary crossings of the
    /// segment from the interior seed to `p`; even parity means inside.
    ///
    /// Returns [`Error::OnBoundary`] when `p` is within `1e-9` of a
    /// boundary curve, leaving the policy to the caller.
    pub fn contains(&self, p: ParamPoint) -> Result<bool> {
        let rect = self.rect();
        let p = rect.canonicalize(p);
        if !rect.contains(p) {
            return Ok(false);
        }
        let dist = self.distance_to_boundary(p);
        if dist < ON_BOUNDARY_TOL {
            return Err(Error::OnBoundary { dist });
        }
        Ok(self.contains_raw(p))
    }

    /// Crossing parity only, treating the closed boundary as inside and
    /// skipping the distance guard.
    pub(crate) fn contains_raw(&self, p: ParamPoint) -> bool {
        let rect = self.rect();
        let p = rect.canonicalize(p);
        if !rect.contains(p) {
            return false;
        }
        let crossings: usize = self
            .boundaries
            .iter()
            .map(|c| segment_crossings(c, &rect, self.seed, p))
            .sum();
        crossings % 2 == 0
    }

    /// Membership via an arbitrary polyline from the seed instead of the
    /// straight segment. Parity must not depend on the path; exposed so
    /// that diagnostics and tests can check exactly that.
    pub fn contains_via_path(&self, path: &[ParamPoint]) -> Result<bool> {
        let rect = self.rect();
        if path.is_empty() {
            return Ok(true);
        }
        let mut crossings = 0usize;
        let mut prev = self.seed;
        for wp in path {
            let wp = rect.canonicalize(*wp);
            for c in &self.boundaries {
                crossings += segment_crossings(c, &rect, prev, wp);
            }
            prev = wp;
        }
        let p = *path.last().unwrap();
        let dist = self.distance_to_boundary(rect.canonicalize(p));
        if dist < ON_BOUNDARY_TOL {
            return Err(Error::OnBoundary { dist });
        }
        Ok(crossings % 2 == 0)
    }

    /// Distance from `p` to the nearest boundary curve in the wrapped
    /// parameter metric (infinite for closed surfaces).
    pub fn distance_to_boundary(&self, p: ParamPoint) -> f64 {
        let rect = self.rect();
        let p = rect.canonicalize(p);
        self.boundaries
            .iter()
            .map(|c| distance_to_curve(c, &rect, p))
            .fold(f64::INFINITY, f64::min)
    }

    /// Membership mask over the centers of an `n x n` parameter grid,
    /// row-major with `t` as the row index: `mask[j * n + i]`.
    ///
    /// Built by scanline parity walks over polyline crossings; used to seed
    /// the interior tangency search, where near-boundary misclassification
    /// is harmless (converged roots are re-checked exactly).
    pub fn grid_mask(&self, n: usize) -> Vec<bool> {
        let rect = self.rect();
        let hs = rect.span_s() / n as f64;
        let ht = rect.span_t() / n as f64;
        let mut mask = vec![false; n * n];
        for j in 0..n {
            let t_row = rect.t[0] + (j as f64 + 0.5) * ht;
            let mut xs: Vec<f64> = Vec::new();
            for c in &self.boundaries {
                match row_crossings(c, &rect, t_row, false) {
                    Ok(cs) => xs.extend(cs.iter().map(|rc| rc.s)),
                    Err(_) => continue, // coincident scan line: approximate row
                }
            }
            xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let first_center = ParamPoint::new(rect.s[0] + 0.5 * hs, t_row);
            let mut inside = self.contains_raw(first_center);
            mask[j * n] = inside;
            let mut prev_s = first_center.s;
            for i in 1..n {
                let s_c = rect.s[0] + (i as f64 + 0.5) * hs;
                let flips = xs.iter().filter(|x| **x > prev_s && **x <= s_c).count();
                if flips % 2 == 1 {
                    inside = !inside;
                }
                mask[j * n + i] = inside;
                prev_s = s_c;
            }
        }
        mask
    }

    /// Crossings of all boundary curves with the line `t = level`,
    /// s-positions sorted ascending. Exact (bisection-refined) endpoints.
    pub(crate) fn row_crossings_sorted(&self, level: f64) -> Result<Vec<f64>> {
        let rect = self.rect();
        let mut xs: Vec<f64> = Vec::new();
        for c in &self.boundaries {
            xs.extend(row_crossings(c, &rect, level, true)?.iter().map(|rc| rc.s));
        }
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(xs)
    }
}

/// A named, validated domain.
#[derive(Debug, Clone)]
pub struct Scene {
    pub name: String,
    pub domain: Domain,
    pub description: String,
}

/// Look up a catalog scene by name.
pub fn catalog_scene(name: &str) -> Result<Scene> {
    catalog()
        .into_iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::Parse(format!("no catalog scene named '{name}'")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::FourierSeries;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn disk_domain(r: f64) -> Domain {
        let surface = Surface::plane();
        let rect = surface.rect();
        let c = BoundaryCurve::new(
            FourierSeries::circle_component(0.0, r, 0.0),
            FourierSeries::circle_component(0.0, 0.0, r),
            [0, 0],
            false,
            &rect,
        );
        Domain::new(surface, vec![c], ParamPoint::new(0.0, 0.0), Some(1))
    }

    #[test]
    fn disk_membership() {
        let d = disk_domain(1.0);
        assert!(d.contains(ParamPoint::new(0.5, 0.2)).unwrap());
        assert!(!d.contains(ParamPoint::new(1.5, 0.0)).unwrap());
        assert!(!d.contains(ParamPoint::new(-2.0, 2.0)).unwrap());
    }

    #[test]
    fn on_boundary_detected() {
        let d = disk_domain(1.0);
        let r = d.contains(ParamPoint::new(1.0, 0.0));
        assert!(matches!(r, Err(Error::OnBoundary { .. })));
    }

    #[test]
    fn annulus_membership() {
        let surface = Surface::plane();
        let rect = surface.rect();
        let outer = BoundaryCurve::new(
            FourierSeries::circle_component(0.0, 2.0, 0.0),
            FourierSeries::circle_component(0.0, 0.0, 2.0),
            [0, 0],
            false,
            &rect,
        );
        let inner = BoundaryCurve::new(
            FourierSeries::circle_component(0.0, 1.0, 0.0),
            FourierSeries::circle_component(0.0, 0.0, 1.0),
            [0, 0],
            true,
            &rect,
        );
        let d = Domain::new(surface, vec![outer, inner], ParamPoint::new(1.5, 0.0), Some(0));
        assert!(d.contains(ParamPoint::new(0.0, 1.5)).unwrap());
        assert!(!d.contains(ParamPoint::new(0.0, 0.5)).unwrap());
        assert!(!d.contains(ParamPoint::new(0.0, 2.5)).unwrap());
    }

    #[test]
    fn torus_band_membership_wraps() {
        // Band |t| <= 0.9 around the torus outer equator, seed at (0,0).
        let surface = Surface::torus(2.0, 1.0);
        let rect = surface.rect();
        let hi = BoundaryCurve::new(
            FourierSeries::constant(0.0),
            FourierSeries::constant(0.9),
            [1, 0],
            false,
            &rect,
        );
        let lo = BoundaryCurve::new(
            FourierSeries::constant(0.0),
            FourierSeries::constant(2.0 * PI - 0.9),
            [1, 0],
            false,
            &rect,
        );
        let d = Domain::new(surface, vec![hi, lo], ParamPoint::new(0.0, 0.0), Some(0));
        assert!(d.contains(ParamPoint::new(3.0, 0.5)).unwrap());
        assert!(d.contains(ParamPoint::new(3.0, 2.0 * PI - 0.5)).unwrap());
        assert!(!d.contains(ParamPoint::new(3.0, PI)).unwrap());
    }

    #[test]
    fn closed_surface_contains_everything() {
        let surface = Surface::torus(2.0, 1.0);
        let d = Domain::new(surface, Vec::new(), ParamPoint::new(0.0, 0.0), Some(0));
        assert!(d.contains(ParamPoint::new(1.0, 4.0)).unwrap());
    }

    #[test]
    fn path_independence_matches_segment() {
        let d = disk_domain(1.0);
        let p = ParamPoint::new(0.7, -0.3);
        let direct = d.contains(p).unwrap();
        let detour = d
            .contains_via_path(&[
                ParamPoint::new(-2.5, 2.5),
                ParamPoint::new(2.5, 2.4),
                ParamPoint::new(2.5, -2.5),
                p,
            ])
            .unwrap();
        assert_eq!(direct, detour);
    }

    #[test]
    fn grid_mask_matches_contains_on_sphere_band() {
        let surface = Surface::sphere(1.0);
        let rect = surface.rect();
        let top = BoundaryCurve::new(
            FourierSeries::constant(PI / 3.0),
            FourierSeries::constant(0.0),
            [0, 1],
            false,
            &rect,
        );
        let bot = BoundaryCurve::new(
            FourierSeries::constant(2.0 * PI / 3.0),
            FourierSeries::constant(0.0),
            [0, 1],
            false,
            &rect,
        );
        let d = Domain::new(surface, vec![top, bot], ParamPoint::new(FRAC_PI_2, 0.0), Some(0));
        let n = 32;
        let mask = d.grid_mask(n);
        for j in 0..n {
            for i in 0..n {
                let p = ParamPoint::new(
                    rect.s[0] + (i as f64 + 0.5) * rect.span_s() / n as f64,
                    rect.t[0] + (j as f64 + 0.5) * rect.span_t() / n as f64,
                );
                assert_eq!(mask[j * n + i], d.contains_raw(p), "mismatch at {p:?}");
            }
        }
    }
}
