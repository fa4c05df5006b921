//! Scene invariant checks: regularity, simplicity, disjointness, seed
//! placement and the boundary-orientation probe.
//!
//! Violations are load errors, never latent state: every path that builds a
//! [`Domain`] for consumers runs [`validate_domain`] first.

use std::collections::HashMap;

use super::curve::BoundaryCurve;
use super::Domain;
use crate::error::{Error, Result};
use crate::geometry::{curve_geometry, ParamPoint, ParamRect, Surface};
use std::f64::consts::TAU;

/// Thresholds for scene validation.
#[derive(Debug, Clone)]
pub struct ValidationLimits {
    /// Minimum parameter-space speed over the sampled curve.
    pub min_speed: f64,
    /// Minimum seed distance to every boundary curve.
    pub seed_margin: f64,
    /// Offset used by the orientation probe.
    pub probe_eps: f64,
    /// Probe sample count per curve.
    pub probe_samples: usize,
    /// Required clearance of curves from non-periodic rectangle edges
    /// (keeps domains off chart-degenerate lines, e.g. sphere poles).
    pub rect_margin: f64,
    /// Minimum separation between two distinct boundary curves.
    pub pair_clearance: f64,
    /// Below this refined distance a curve is declared self-intersecting.
    pub self_clearance: f64,
}

impl Default for ValidationLimits {
    fn default() -> Self {
        ValidationLimits {
            min_speed: 1e-8,
            seed_margin: 1e-4,
            probe_eps: 1e-4,
            probe_samples: 64,
            rect_margin: 1e-3,
            pair_clearance: 1e-4,
            self_clearance: 1e-6,
        }
    }
}

pub fn validate_domain(domain: &Domain) -> Result<()> {
    validate_domain_with(domain, &ValidationLimits::default())
}

pub fn validate_domain_with(domain: &Domain, limits: &ValidationLimits) -> Result<()> {
    validate_surface(domain.surface())?;
    let rect = domain.rect();

    for (i, curve) in domain.boundaries().iter().enumerate() {
        let w = curve.winding();
        if w[0] != 0 && !rect.wrap_s {
            return Err(Error::Validation(format!(
                "curve {i}: winding in a non-periodic s-direction"
            )));
        }
        if w[1] != 0 && !rect.wrap_t {
            return Err(Error::Validation(format!(
                "curve {i}: winding in a non-periodic t-direction"
            )));
        }
        let speed = curve.min_speed();
        if speed <= limits.min_speed {
            return Err(Error::Validation(format!(
                "curve {i} is not regular: min speed {speed:.3e}"
            )));
        }
        let (rs, rt) = curve.param_ranges();
        if !rect.wrap_s && (rs[0] < rect.s[0] + limits.rect_margin || rs[1] > rect.s[1] - limits.rect_margin)
        {
            return Err(Error::Validation(format!(
                "curve {i} leaves the safe parameter range in s: [{:.4}, {:.4}]",
                rs[0], rs[1]
            )));
        }
        if !rect.wrap_t && (rt[0] < rect.t[0] + limits.rect_margin || rt[1] > rect.t[1] - limits.rect_margin)
        {
            return Err(Error::Validation(format!(
                "curve {i} leaves the safe parameter range in t: [{:.4}, {:.4}]",
                rt[0], rt[1]
            )));
        }
        if let Some((ta, tb)) = self_intersection(curve, &rect, limits.self_clearance) {
            return Err(Error::Validation(format!(
                "curve {i} self-intersection near tau = {ta:.4} / {tb:.4}"
            )));
        }
    }

    let n = domain.boundaries().len();
    for a in 0..n {
        for b in (a + 1)..n {
            if let Some(d) = pair_min_distance(
                &domain.boundaries()[a],
                &domain.boundaries()[b],
                &rect,
                limits.pair_clearance,
            ) {
                return Err(Error::Validation(format!(
                    "curves {a} and {b} are not disjoint (distance {d:.3e})"
                )));
            }
        }
    }

    let seed = domain.seed();
    if !rect.contains(seed) {
        return Err(Error::Validation("seed outside the parameter rectangle".into()));
    }
    if !rect.wrap_s
        && (seed.s < rect.s[0] + limits.rect_margin || seed.s > rect.s[1] - limits.rect_margin)
    {
        return Err(Error::Validation("seed too close to the chart edge in s".into()));
    }
    if !rect.wrap_t
        && (seed.t < rect.t[0] + limits.rect_margin || seed.t > rect.t[1] - limits.rect_margin)
    {
        return Err(Error::Validation("seed too close to the chart edge in t".into()));
    }
    let seed_dist = domain.distance_to_boundary(seed);
    if seed_dist <= limits.seed_margin {
        return Err(Error::Validation(format!(
            "seed within {seed_dist:.3e} of a boundary curve"
        )));
    }

    orientation_probe(domain, limits)?;
    Ok(())
}

fn validate_surface(surface: &Surface) -> Result<()> {
    let bad = |msg: &str| Err(Error::Validation(format!("surface: {msg}")));
    match surface {
        Surface::Plane { extent } | Surface::Graph { extent, .. } => {
            if extent[0][0] >= extent[0][1] || extent[1][0] >= extent[1][1] {
                return bad("extent must be a proper rectangle");
            }
        }
        Surface::Sphere { radius } => {
            if !(*radius > 0.0) {
                return bad("sphere radius must be positive");
            }
        }
        Surface::Torus {
            major_radius,
            minor_radius,
        } => {
            if !(*minor_radius > 0.0) || !(*major_radius > *minor_radius) {
                return bad("torus requires major radius > minor radius > 0");
            }
        }
        Surface::Ellipsoid { semi_axes } => {
            if semi_axes.iter().any(|a| !(*a > 0.0)) {
                return bad("ellipsoid semi-axes must be positive");
            }
        }
    }
    Ok(())
}

/// The inward-normal convention check: for probe points `y +- eps * n`
/// (n pulled back to parameter space), the plus side must be inside and the
/// minus side outside.
fn orientation_probe(domain: &Domain, limits: &ValidationLimits) -> Result<()> {
    let rect = domain.rect();
    for (i, curve) in domain.boundaries().iter().enumerate() {
        for k in 0..limits.probe_samples {
            let tau = TAU * (k as f64 + 0.31) / limits.probe_samples as f64;
            let cg = curve_geometry(domain.surface(), curve, tau)?;
            let jet = domain.surface().jet(curve.pos(tau));
            // Pull n back through the chart: solve the Gram system
            // [E F; F G] v = (<n,Ps>, <n,Pt>).
            let (e, f, g) = (
                jet.ps.dot(jet.ps),
                jet.ps.dot(jet.pt),
                jet.pt.dot(jet.pt),
            );
            let rhs = [cg.normal.dot(jet.ps), cg.normal.dot(jet.pt)];
            let det = e * g - f * f;
            let v = [(g * rhs[0] - f * rhs[1]) / det, (e * rhs[1] - f * rhs[0]) / det];
            let vn = v[0].hypot(v[1]);
            if !(vn > 0.0) {
                return Err(Error::Validation(format!(
                    "curve {i}: normal pullback degenerate at tau = {tau:.4}"
                )));
            }
            let pos = curve.pos(tau);
            let step = limits.probe_eps / vn;
            let plus = ParamPoint::new(pos.s + step * v[0], pos.t + step * v[1]);
            let minus = ParamPoint::new(pos.s - step * v[0], pos.t - step * v[1]);
            let plus_in = domain.contains_raw(rect.canonicalize(plus));
            let minus_in = domain.contains_raw(rect.canonicalize(minus));
            if !plus_in || minus_in {
                return Err(Error::Validation(format!(
                    "orientation probe failed for curve {i} at tau = {tau:.4}: \
                     inward offset inside={plus_in}, outward offset inside={minus_in}"
                )));
            }
        }
    }
    Ok(())
}

/// Wrap-aware spatial hash over the cached polyline samples.
struct SampleGrid {
    cell: f64,
    dims: [i64; 2],
    wrap: [bool; 2],
    origin: [f64; 2],
    buckets: HashMap<(i64, i64), Vec<usize>>,
}

impl SampleGrid {
    fn new(rect: &ParamRect, cell: f64) -> Self {
        SampleGrid {
            cell,
            dims: [
                (rect.span_s() / cell).ceil() as i64,
                (rect.span_t() / cell).ceil() as i64,
            ],
            wrap: [rect.wrap_s, rect.wrap_t],
            origin: [rect.s[0], rect.t[0]],
            buckets: HashMap::new(),
        }
    }

    fn key(&self, p: ParamPoint) -> (i64, i64) {
        let mut ks = ((p.s - self.origin[0]) / self.cell).floor() as i64;
        let mut kt = ((p.t - self.origin[1]) / self.cell).floor() as i64;
        if self.wrap[0] {
            ks = ks.rem_euclid(self.dims[0]);
        }
        if self.wrap[1] {
            kt = kt.rem_euclid(self.dims[1]);
        }
        (ks, kt)
    }

    fn insert(&mut self, p: ParamPoint, idx: usize) {
        self.buckets.entry(self.key(p)).or_default().push(idx);
    }

    fn neighbors(&self, p: ParamPoint) -> impl Iterator<Item = usize> + '_ {
        let key = self.key(p);
        (-1..=1).flat_map(move |ds| {
            (-1..=1).flat_map(move |dt| {
                let mut ks = key.0 + ds;
                let mut kt = key.1 + dt;
                if self.wrap[0] {
                    ks = ks.rem_euclid(self.dims[0]);
                }
                if self.wrap[1] {
                    kt = kt.rem_euclid(self.dims[1]);
                }
                self.buckets
                    .get(&(ks, kt))
                    .map(|v| v.iter().copied())
                    .into_iter()
                    .flatten()
            })
        })
    }
}

/// Detect self-intersection at sampling resolution: candidate sample pairs
/// with far-apart curve parameters but nearby positions, refined on the
/// exact curve.
fn self_intersection(
    curve: &BoundaryCurve,
    rect: &ParamRect,
    clearance: f64,
) -> Option<(f64, f64)> {
    let samples = curve.polyline();
    let m = samples.len() - 1;
    let cell = (2.0 * curve.max_edge_len()).max(1e-9);
    let mut grid = SampleGrid::new(rect, cell);
    let mut candidates: Vec<(usize, usize)> = Vec::new();
    for j in 0..m {
        let p = rect.canonicalize(ParamPoint::new(samples[j][0], samples[j][1]));
        for i in grid.neighbors(p) {
            let gap = (j - i).min(m - (j - i));
            if gap <= 8 {
                continue;
            }
            let q = rect.canonicalize(ParamPoint::new(samples[i][0], samples[i][1]));
            if rect.dist(p, q) < cell {
                candidates.push((i, j));
            }
        }
        grid.insert(p, j);
    }
    for (i, j) in candidates {
        let (ta, tb) = (curve.polyline_tau(i), curve.polyline_tau(j));
        if refined_pair_distance(curve, curve, rect, ta, tb) < clearance {
            return Some((ta, tb));
        }
    }
    None
}

/// Minimum distance between two curves when below `clearance`, else `None`.
fn pair_min_distance(
    a: &BoundaryCurve,
    b: &BoundaryCurve,
    rect: &ParamRect,
    clearance: f64,
) -> Option<f64> {
    let cell = (2.0 * a.max_edge_len().max(b.max_edge_len())).max(clearance);
    let mut grid = SampleGrid::new(rect, cell);
    let sa = a.polyline();
    for (j, s) in sa.iter().enumerate().take(sa.len() - 1) {
        grid.insert(rect.canonicalize(ParamPoint::new(s[0], s[1])), j);
    }
    let sb = b.polyline();
    let mut best = f64::INFINITY;
    for (j, s) in sb.iter().enumerate().take(sb.len() - 1) {
        let p = rect.canonicalize(ParamPoint::new(s[0], s[1]));
        for i in grid.neighbors(p) {
            let q = rect.canonicalize(ParamPoint::new(sa[i][0], sa[i][1]));
            if rect.dist(p, q) < cell {
                let d = refined_pair_distance(a, b, rect, a.polyline_tau(i), b.polyline_tau(j));
                best = best.min(d);
                if best < clearance {
                    return Some(best);
                }
            }
        }
    }
    None
}

fn refined_pair_distance(
    a: &BoundaryCurve,
    b: &BoundaryCurve,
    rect: &ParamRect,
    ta: f64,
    tb: f64,
) -> f64 {
    const N: usize = 48;
    let m = a.polyline().len() - 1;
    let window = 2.0 * TAU / m as f64;
    let mut best = f64::INFINITY;
    let pa: Vec<ParamPoint> = (0..=N)
        .map(|i| rect.canonicalize(a.pos(ta - window + 2.0 * window * i as f64 / N as f64)))
        .collect();
    let pb: Vec<ParamPoint> = (0..=N)
        .map(|i| rect.canonicalize(b.pos(tb - window + 2.0 * window * i as f64 / N as f64)))
        .collect();
    for p in &pa {
        for q in &pb {
            best = best.min(rect.dist(*p, *q));
        }
    }
    best
}
