use std::f64::consts::TAU;

use crate::fourier::FourierSeries;
use crate::geometry::{ParamPoint, ParamRect};

/// Number of dense polyline samples cached per curve.
pub(crate) const POLYLINE_SAMPLES: usize = 4096;

/// Value and first two derivatives of a boundary curve in parameter space.
#[derive(Debug, Clone, Copy)]
pub struct CurveParamJet {
    pub pos: ParamPoint,
    pub d1: [f64; 2],
    pub d2: [f64; 2],
}

/// A closed boundary curve in chart coordinates.
///
/// Each component is a truncated Fourier series in `tau` over `[0, 2pi)`,
/// plus an integer winding count for chart directions that wrap (a curve on
/// the torus may close only after going around the chart). `reversed` flips
/// the traversal so that scene authors can satisfy the inward-normal
/// convention without re-deriving coefficients.
#[derive(Debug, Clone)]
pub struct BoundaryCurve {
    s_series: FourierSeries,
    t_series: FourierSeries,
    winding: [i32; 2],
    reversed: bool,
    span: [f64; 2],
    samples: Vec<[f64; 2]>,
}

impl BoundaryCurve {
    pub fn new(
        s_series: FourierSeries,
        t_series: FourierSeries,
        winding: [i32; 2],
        reversed: bool,
        rect: &ParamRect,
    ) -> Self {
        let mut curve = BoundaryCurve {
            s_series,
            t_series,
            winding,
            reversed,
            span: [rect.span_s(), rect.span_t()],
            samples: Vec::new(),
        };
        curve.samples = (0..=POLYLINE_SAMPLES)
            .map(|j| {
                let p = curve.param_jet(TAU * j as f64 / POLYLINE_SAMPLES as f64).pos;
                [p.s, p.t]
            })
            .collect();
        curve
    }

    /// Flip the traversal direction (recomputes the cached polyline).
    pub fn reversed_copy(&self, rect: &ParamRect) -> Self {
        BoundaryCurve::new(
            self.s_series.clone(),
            self.t_series.clone(),
            self.winding,
            !self.reversed,
            rect,
        )
    }

    pub fn series(&self) -> (&FourierSeries, &FourierSeries) {
        (&self.s_series, &self.t_series)
    }

    pub fn winding(&self) -> [i32; 2] {
        self.winding
    }

    pub fn is_reversed(&self) -> bool {
        self.reversed
    }

    /// Position and derivatives at `tau`, in unwrapped (universal cover)
    /// chart coordinates.
    pub fn param_jet(&self, tau: f64) -> CurveParamJet {
        let sigma = if self.reversed { -1.0 } else { 1.0 };
        let te = sigma * tau;
        let sj = self.s_series.jet(te);
        let tj = self.t_series.jet(te);
        let ws = self.winding[0] as f64 * self.span[0] / TAU;
        let wt = self.winding[1] as f64 * self.span[1] / TAU;
        CurveParamJet {
            pos: ParamPoint::new(sj[0] + ws * te, tj[0] + wt * te),
            d1: [sigma * (sj[1] + ws), sigma * (tj[1] + wt)],
            d2: [sj[2], tj[2]],
        }
    }

    pub fn pos(&self, tau: f64) -> ParamPoint {
        self.param_jet(tau).pos
    }

    /// Cached dense polyline, `POLYLINE_SAMPLES + 1` points with the last
    /// one closing the loop up to winding offsets.
    pub fn polyline(&self) -> &[[f64; 2]] {
        &self.samples
    }

    pub fn polyline_tau(&self, index: usize) -> f64 {
        TAU * index as f64 / POLYLINE_SAMPLES as f64
    }

    /// Minimum parameter-space speed over the cached samples.
    pub fn min_speed(&self) -> f64 {
        (0..POLYLINE_SAMPLES)
            .map(|j| {
                let d = self.param_jet(self.polyline_tau(j)).d1;
                d[0].hypot(d[1])
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Bounding ranges of the unwrapped polyline: `([s_min, s_max], [t_min, t_max])`.
    pub fn param_ranges(&self) -> ([f64; 2], [f64; 2]) {
        let mut s = [f64::INFINITY, f64::NEG_INFINITY];
        let mut t = [f64::INFINITY, f64::NEG_INFINITY];
        for p in &self.samples {
            s[0] = s[0].min(p[0]);
            s[1] = s[1].max(p[0]);
            t[0] = t[0].min(p[1]);
            t[1] = t[1].max(p[1]);
        }
        (s, t)
    }

    /// Longest polyline edge, an upper bound on sampling error scales.
    pub fn max_edge_len(&self) -> f64 {
        self.samples
            .windows(2)
            .map(|w| (w[1][0] - w[0][0]).hypot(w[1][1] - w[0][1]))
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Surface;

    #[test]
    fn circle_jet_matches_closed_form() {
        let rect = Surface::plane().rect();
        let c = BoundaryCurve::new(
            FourierSeries::circle_component(0.5, 2.0, 0.0),
            FourierSeries::circle_component(-0.25, 0.0, 2.0),
            [0, 0],
            false,
            &rect,
        );
        let tau = 1.234;
        let j = c.param_jet(tau);
        assert!((j.pos.s - (0.5 + 2.0 * tau.cos())).abs() < 1e-13);
        assert!((j.pos.t - (-0.25 + 2.0 * tau.sin())).abs() < 1e-13);
        assert!((j.d1[0] + 2.0 * tau.sin()).abs() < 1e-13);
        assert!((j.d1[1] - 2.0 * tau.cos()).abs() < 1e-13);
        assert!((j.d2[0] + 2.0 * tau.cos()).abs() < 1e-13);
    }

    #[test]
    fn winding_advances_one_period() {
        let rect = Surface::torus(2.0, 1.0).rect();
        let c = BoundaryCurve::new(
            FourierSeries::constant(0.0),
            FourierSeries::constant(0.9),
            [1, 0],
            false,
            &rect,
        );
        let a = c.pos(0.0);
        let b = c.pos(TAU);
        assert!((b.s - a.s - rect.span_s()).abs() < 1e-12);
        assert!((b.t - a.t).abs() < 1e-12);
    }

    #[test]
    fn reversal_flips_velocity() {
        let rect = Surface::plane().rect();
        let fwd = BoundaryCurve::new(
            FourierSeries::circle_component(0.0, 1.0, 0.0),
            FourierSeries::circle_component(0.0, 0.0, 1.0),
            [0, 0],
            false,
            &rect,
        );
        let rev = fwd.reversed_copy(&rect);
        let pf = fwd.param_jet(0.0);
        let pr = rev.param_jet(0.0);
        assert!((pf.pos.s - pr.pos.s).abs() < 1e-14);
        assert!((pf.d1[0] + pr.d1[0]).abs() < 1e-14);
        assert!((pf.d1[1] + pr.d1[1]).abs() < 1e-14);
    }

    #[test]
    fn min_speed_of_unit_circle() {
        let rect = Surface::plane().rect();
        let c = BoundaryCurve::new(
            FourierSeries::circle_component(0.0, 1.0, 0.0),
            FourierSeries::circle_component(0.0, 0.0, 1.0),
            [0, 0],
            false,
            &rect,
        );
        assert!((c.min_speed() - 1.0).abs() < 1e-12);
    }
}
