//! Crossing-parity membership machinery.
//!
//! All tests run in chart coordinates. Wrapped directions are handled by
//! checking the curve against the integer translates of its unwrapped
//! polyline (the universal cover picture). Dense cached samples provide
//! cheap brackets; every bracket is then refined on the exact Fourier
//! curve, so parity decisions do not depend on polyline resolution.

use super::curve::BoundaryCurve;
use crate::error::{Error, Result};
use crate::geometry::{ParamPoint, ParamRect};
use std::f64::consts::TAU;

fn cross2(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Integer translate range for which `[lo, hi] + k*span` can meet
/// `[win_lo, win_hi]`.
fn translate_range(wrap: bool, lo: f64, hi: f64, win_lo: f64, win_hi: f64, span: f64) -> (i64, i64) {
    if !wrap {
        return (0, 0);
    }
    let k_min = ((win_lo - hi) / span).floor() as i64;
    let k_max = ((win_hi - lo) / span).ceil() as i64;
    (k_min, k_max)
}

/// Count transversal crossings of `curve` (all relevant translates) with the
/// open segment from `q0` to `p`. Tangential touches do not change parity
/// and are ignored.
pub(crate) fn segment_crossings(
    curve: &BoundaryCurve,
    rect: &ParamRect,
    q0: ParamPoint,
    p: ParamPoint,
) -> usize {
    let d = [p.s - q0.s, p.t - q0.t];
    let d_norm2 = d[0] * d[0] + d[1] * d[1];
    if d_norm2 == 0.0 {
        return 0;
    }
    let samples = curve.polyline();
    let m = samples.len() - 1;
    let (cs, ct) = curve.param_ranges();
    let pad = curve.max_edge_len() + 1e-9;

    let (ks_min, ks_max) = translate_range(
        rect.wrap_s,
        cs[0],
        cs[1],
        q0.s.min(p.s) - pad,
        q0.s.max(p.s) + pad,
        rect.span_s(),
    );
    let (kt_min, kt_max) = translate_range(
        rect.wrap_t,
        ct[0],
        ct[1],
        q0.t.min(p.t) - pad,
        q0.t.max(p.t) + pad,
        rect.span_t(),
    );

    let mut taus: Vec<f64> = Vec::new();
    for ks in ks_min..=ks_max {
        for kt in kt_min..=kt_max {
            let off = [ks as f64 * rect.span_s(), kt as f64 * rect.span_t()];
            let g_exact = |tau: f64| {
                let pos = curve.pos(tau);
                cross2([pos.s + off[0] - q0.s, pos.t + off[1] - q0.t], d)
            };
            let g_sample =
                |j: usize| cross2([samples[j][0] + off[0] - q0.s, samples[j][1] + off[1] - q0.t], d);

            let mut g_prev = g_sample(0);
            let mut max_step = 0.0f64;
            for j in 0..m {
                let g_next = g_sample(j + 1);
                max_step = max_step.max((g_next - g_prev).abs());
                g_prev = g_next;
            }
            g_prev = g_sample(0);
            for j in 0..m {
                let g_next = g_sample(j + 1);
                let (t0, t1) = (curve.polyline_tau(j), curve.polyline_tau(j + 1));
                if g_prev == 0.0 || g_prev * g_next < 0.0 {
                    let tau = if g_prev == 0.0 {
                        t0
                    } else {
                        bisect_scalar(&g_exact, t0, t1, g_prev)
                    };
                    record_crossing(&mut taus, tau, &g_exact, curve, off, q0, d, d_norm2);
                } else if g_prev.abs().min(g_next.abs()) < 2.0 * max_step {
                    // Possible crossing pair hidden inside one polyline edge.
                    scan_fine(&g_exact, t0, t1, |tau| {
                        record_crossing(&mut taus, tau, &g_exact, curve, off, q0, d, d_norm2)
                    });
                }
                g_prev = g_next;
            }
        }
    }
    taus.sort_by(|a, b| a.partial_cmp(b).unwrap());
    taus.dedup_by(|a, b| {
        let gap = (*a - *b).abs();
        gap < 1e-9 || (TAU - gap) < 1e-9
    });
    taus.len()
}

#[allow(clippy::too_many_arguments)]
fn record_crossing(
    taus: &mut Vec<f64>,
    tau: f64,
    _g: &dyn Fn(f64) -> f64,
    curve: &BoundaryCurve,
    off: [f64; 2],
    q0: ParamPoint,
    d: [f64; 2],
    d_norm2: f64,
) {
    let pos = curve.pos(tau);
    let rel = [pos.s + off[0] - q0.s, pos.t + off[1] - q0.t];
    let sigma = (rel[0] * d[0] + rel[1] * d[1]) / d_norm2;
    if sigma > 0.0 && sigma < 1.0 {
        let mut t = tau % TAU;
        if t < 0.0 {
            t += TAU;
        }
        taus.push(t);
    }
}

/// Subdivide `[t0, t1]` finely on the exact curve and report sign-change
/// crossings to `on_root`.
fn scan_fine(g: &dyn Fn(f64) -> f64, t0: f64, t1: f64, mut on_root: impl FnMut(f64)) {
    const FINE: usize = 64;
    let h = (t1 - t0) / FINE as f64;
    let mut prev = g(t0);
    for i in 0..FINE {
        let next = g(t0 + h * (i + 1) as f64);
        if prev == 0.0 {
            on_root(t0 + h * i as f64);
        } else if prev * next < 0.0 {
            on_root(bisect_scalar(g, t0 + h * i as f64, t0 + h * (i + 1) as f64, prev));
        }
        prev = next;
    }
}

fn bisect_scalar(f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64, fa: f64) -> f64 {
    let mut sa = fa.signum();
    for _ in 0..80 {
        let mid = 0.5 * (a + b);
        if mid == a || mid == b {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == sa {
            a = mid;
            sa = fm.signum();
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

/// Distance from `p` to the curve in the wrapped parameter metric,
/// refined near the closest polyline vertex.
pub(crate) fn distance_to_curve(curve: &BoundaryCurve, rect: &ParamRect, p: ParamPoint) -> f64 {
    let samples = curve.polyline();
    let mut best = f64::INFINITY;
    let mut best_j = 0;
    for (j, s) in samples.iter().enumerate() {
        let d = rect.dist(rect.canonicalize(ParamPoint::new(s[0], s[1])), p);
        if d < best {
            best = d;
            best_j = j;
        }
    }
    // The curve between samples can undercut the vertex minimum by at most
    // ~half an edge; refine locally when it matters.
    let edge = curve.max_edge_len();
    if best > 4.0 * edge {
        return best;
    }
    let m = samples.len() - 1;
    let t_best = curve.polyline_tau(best_j.min(m - 1));
    let window = 2.0 * TAU / m as f64;
    const FINE: usize = 256;
    for i in 0..=FINE {
        let tau = t_best - window + 2.0 * window * i as f64 / FINE as f64;
        let q = rect.canonicalize(curve.pos(tau));
        best = best.min(rect.dist(q, p));
    }
    best
}

/// One crossing of a curve with a horizontal line `t = level`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct RowCrossing {
    /// s-coordinate, canonicalized into the rectangle when `wrap_s`.
    pub s: f64,
    #[allow(dead_code)]
    pub tau: f64,
}

/// All crossings of `curve` with the line `t = level` (over translates in
/// the wrapped t-direction). `exact` controls whether brackets are refined
/// on the Fourier curve or linearly interpolated from the polyline.
pub(crate) fn row_crossings(
    curve: &BoundaryCurve,
    rect: &ParamRect,
    level: f64,
    exact: bool,
) -> Result<Vec<RowCrossing>> {
    let samples = curve.polyline();
    let m = samples.len() - 1;
    let (_, ct) = curve.param_ranges();

    if ct[1] - ct[0] < 1e-12 {
        // Constant-t curve: either no crossings or a coincident line.
        let dist = nearest_level_gap(ct[0], level, rect.wrap_t, rect.span_t());
        if dist < 1e-10 {
            return Err(Error::ResolutionTooCoarse {
                resolution: 0,
                reason: format!("scan line t = {level} coincides with a boundary curve"),
            });
        }
        return Ok(Vec::new());
    }

    let (k_min, k_max) =
        translate_range(rect.wrap_t, level, level, ct[0] - 1e-9, ct[1] + 1e-9, rect.span_t());
    let mut out: Vec<(f64, f64)> = Vec::new(); // (tau, s)
    for k in k_min..=k_max {
        let lv = level + k as f64 * rect.span_t();
        let f_exact = |tau: f64| curve.pos(tau).t - lv;
        let mut max_step = 0.0f64;
        for j in 0..m {
            max_step = max_step.max((samples[j + 1][1] - samples[j][1]).abs());
        }
        for j in 0..m {
            let (f0, f1) = (samples[j][1] - lv, samples[j + 1][1] - lv);
            let (t0, t1) = (curve.polyline_tau(j), curve.polyline_tau(j + 1));
            if f0 == 0.0 || f0 * f1 < 0.0 {
                let tau = if f0 == 0.0 {
                    t0
                } else if exact {
                    bisect_scalar(&f_exact, t0, t1, f0)
                } else {
                    t0 + (t1 - t0) * f0.abs() / (f0.abs() + f1.abs())
                };
                out.push((tau, curve.pos(tau).s));
            } else if f0.abs().min(f1.abs()) < 2.0 * max_step {
                scan_fine(&f_exact, t0, t1, |tau| out.push((tau, curve.pos(tau).s)));
            }
        }
    }
    out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    out.dedup_by(|a, b| {
        let gap = (a.0 - b.0).abs();
        gap < 1e-9 || (TAU - gap) < 1e-9
    });
    Ok(out
        .into_iter()
        .map(|(tau, s)| RowCrossing {
            s: if rect.wrap_s {
                rect.canonicalize(ParamPoint::new(s, level)).s
            } else {
                s
            },
            tau,
        })
        .collect())
}

fn nearest_level_gap(value: f64, level: f64, wrap: bool, span: f64) -> f64 {
    if !wrap {
        return (value - level).abs();
    }
    let mut d = (value - level) % span;
    if d < 0.0 {
        d += span;
    }
    d.min(span - d)
}
