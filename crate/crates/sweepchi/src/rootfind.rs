//! 1D bracketing/bisection on sampled periodic functions and a damped 2D
//! Newton iteration, shared by the sweep, the specializations and the
//! oracles.

use crate::geometry::{ParamPoint, ParamRect};
use std::f64::consts::TAU;

/// Outcome of scanning one period (or interval) of a scalar function.
#[derive(Debug, Clone, Default)]
pub struct ZeroScan {
    /// Refined simple zeros, ascending.
    pub roots: Vec<f64>,
    /// Parameter values where the function dips to ~zero without a sign
    /// change: tangential touches, i.e. double roots (degenerate input).
    pub touches: Vec<f64>,
    /// The function is zero at every sample (totally degenerate input).
    pub identically_zero: bool,
}

/// Find the zeros of `f` on `[0, 2pi)`, assuming `f` is `2pi`-periodic.
///
/// Sign changes between `samples` uniform samples are refined by bisection
/// to ~1e-15 in the argument. Near-zero dips below `touch_rel` times the
/// function's scale are re-scanned at 128x resolution: crossings found there
/// are added as roots, and genuine tangential touches are reported.
pub fn periodic_zeros(f: &dyn Fn(f64) -> f64, samples: usize, touch_rel: f64) -> ZeroScan {
    scan_zeros(f, 0.0, TAU, samples, touch_rel, true)
}

/// As [`periodic_zeros`] but on a plain interval with no wrap assumption.
pub fn interval_zeros(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    samples: usize,
    touch_rel: f64,
) -> ZeroScan {
    scan_zeros(f, a, b, samples, touch_rel, false)
}

fn scan_zeros(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    samples: usize,
    touch_rel: f64,
    periodic: bool,
) -> ZeroScan {
    assert!(samples >= 8, "zero scan needs a reasonable sample count");
    let n = samples;
    let h = (b - a) / n as f64;
    // One extra sample closes the period / covers the right endpoint.
    let vals: Vec<f64> = (0..=n).map(|j| f(a + h * j as f64)).collect();
    let scale = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));

    let mut out = ZeroScan::default();
    if scale == 0.0 {
        out.identically_zero = true;
        return out;
    }

    for j in 0..n {
        let (x0, x1) = (a + h * j as f64, a + h * (j + 1) as f64);
        let (f0, f1) = (vals[j], vals[j + 1]);
        if f0 == 0.0 {
            push_root(&mut out.roots, x0, a, b, periodic);
        } else if f0 * f1 < 0.0 {
            push_root(&mut out.roots, bisect(f, x0, x1, f0), a, b, periodic);
        }
    }
    if !periodic && vals[n] == 0.0 {
        push_root(&mut out.roots, b, a, b, periodic);
    }

    // Rescan suspicious dips: |f| small at a local minimum with equal signs
    // on both sides. A pair of close crossings hiding inside one sample
    // interval shows up here, as does a true tangential touch.
    let touch_tol = touch_rel * scale;
    for j in 0..=n {
        let prev = vals[if j == 0 {
            if periodic {
                n - 1
            } else {
                0
            }
        } else {
            j - 1
        }];
        let next = vals[if j == n {
            if periodic {
                1
            } else {
                n
            }
        } else {
            j + 1
        }];
        let v = vals[j];
        if v == 0.0 || v.abs() > touch_tol || v.abs() > prev.abs() || v.abs() > next.abs() {
            continue;
        }
        if prev * v < 0.0 || next * v < 0.0 {
            continue; // already a bracketed crossing
        }
        let x = a + h * j as f64;
        if out
            .roots
            .iter()
            .any(|r| wrapped_gap(*r, x, b - a, periodic) < 2.0 * h)
        {
            continue;
        }
        // 128x local refinement over the two adjacent intervals.
        let fine = 256;
        let (la, lb) = (x - h, x + h);
        let fh = (lb - la) / fine as f64;
        let fv: Vec<f64> = (0..=fine).map(|i| f(la + fh * i as f64)).collect();
        let mut found = false;
        for i in 0..fine {
            if fv[i] == 0.0 || fv[i] * fv[i + 1] < 0.0 {
                let r = if fv[i] == 0.0 {
                    la + fh * i as f64
                } else {
                    bisect(f, la + fh * i as f64, la + fh * (i + 1) as f64, fv[i])
                };
                push_root(&mut out.roots, r, a, b, periodic);
                found = true;
            }
        }
        if !found {
            let fine_min = fv.iter().fold(f64::INFINITY, |m, v| m.min(v.abs()));
            if fine_min < 1e-9 * scale {
                out.touches.push(wrap_point(x, a, b, periodic));
            }
        }
    }

    out.roots.sort_by(|p, q| p.partial_cmp(q).unwrap());
    out.roots.dedup_by(|p, q| (*p - *q).abs() < 1e-12);
    if periodic && out.roots.len() >= 2 {
        let span = b - a;
        if (out.roots[out.roots.len() - 1] - out.roots[0] - span).abs() < 1e-12 {
            out.roots.pop();
        }
    }
    out
}

fn push_root(roots: &mut Vec<f64>, x: f64, a: f64, b: f64, periodic: bool) {
    roots.push(wrap_point(x, a, b, periodic));
}

fn wrap_point(x: f64, a: f64, b: f64, periodic: bool) -> f64 {
    if !periodic {
        return x;
    }
    let span = b - a;
    let mut y = (x - a) % span;
    if y < 0.0 {
        y += span;
    }
    a + y
}

fn wrapped_gap(x: f64, y: f64, span: f64, periodic: bool) -> f64 {
    let d = (x - y).abs();
    if periodic {
        d.min(span - d)
    } else {
        d
    }
}

/// Bisection to ~machine precision in the argument. `f0 = f(x0)` must have
/// the opposite sign of `f(x1)`.
fn bisect(f: &dyn Fn(f64) -> f64, mut x0: f64, mut x1: f64, f0: f64) -> f64 {
    let mut s0 = f0.signum();
    for _ in 0..80 {
        let mid = 0.5 * (x0 + x1);
        if mid == x0 || mid == x1 {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == s0 {
            x0 = mid;
            s0 = fm.signum();
        } else {
            x1 = mid;
        }
    }
    0.5 * (x0 + x1)
}

/// Damped Newton iteration for a 2D gradient system `g(p) = 0` with
/// symmetric Jacobian `h`.
///
/// Near-singular Jacobians fall back to a Levenberg-Marquardt step so that
/// seeds on degenerate critical circles still converge onto the circle
/// (where the downstream |K| check rejects them) instead of blowing up.
/// Returns `None` when the seed diverges or stalls.
pub fn newton2d(
    eval: &dyn Fn(ParamPoint) -> ([f64; 2], [[f64; 2]; 2]),
    seed: ParamPoint,
    rect: &ParamRect,
    tol_g: f64,
    max_iter: usize,
    step_cap: f64,
) -> Option<ParamPoint> {
    let mut p = seed;
    for _ in 0..max_iter {
        let (g, h) = eval(p);
        let gn = g[0].hypot(g[1]);
        if !gn.is_finite() {
            return None;
        }
        if gn < tol_g {
            return Some(rect.canonicalize(p));
        }
        let hscale = h[0][0]
            .abs()
            .max(h[0][1].abs())
            .max(h[1][0].abs())
            .max(h[1][1].abs());
        let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
        let mut d = if hscale > 0.0 && det.abs() > 1e-12 * hscale * hscale {
            [
                -(h[1][1] * g[0] - h[0][1] * g[1]) / det,
                -(h[0][0] * g[1] - h[1][0] * g[0]) / det,
            ]
        } else {
            // (H^T H + lambda I) d = -H^T g
            let lam = (1e-8 * hscale).max(1e-300);
            let a00 = h[0][0] * h[0][0] + h[1][0] * h[1][0] + lam * lam;
            let a01 = h[0][0] * h[0][1] + h[1][0] * h[1][1];
            let a11 = h[0][1] * h[0][1] + h[1][1] * h[1][1] + lam * lam;
            let b0 = -(h[0][0] * g[0] + h[1][0] * g[1]);
            let b1 = -(h[0][1] * g[0] + h[1][1] * g[1]);
            let adet = a00 * a11 - a01 * a01;
            if adet.abs() < 1e-300 {
                return None;
            }
            [(a11 * b0 - a01 * b1) / adet, (a00 * b1 - a01 * b0) / adet]
        };
        let dn = d[0].hypot(d[1]);
        if dn < 1e-16 * (1.0 + p.s.abs() + p.t.abs()) {
            return None; // stalled away from a root
        }
        if dn > step_cap {
            let f = step_cap / dn;
            d[0] *= f;
            d[1] *= f;
        }
        p = ParamPoint::new(p.s + d[0], p.t + d[1]);
        // Divergence guards for non-wrapped directions.
        if !rect.wrap_s && (p.s < rect.s[0] - 0.5 * rect.span_s() || p.s > rect.s[1] + 0.5 * rect.span_s())
        {
            return None;
        }
        if !rect.wrap_t && (p.t < rect.t[0] - 0.5 * rect.span_t() || p.t > rect.t[1] + 0.5 * rect.span_t())
        {
            return None;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_simple_periodic_zeros() {
        let f = |tau: f64| tau.sin() - 0.3;
        let scan = periodic_zeros(&f, 512, 1e-7);
        assert_eq!(scan.roots.len(), 2);
        for r in &scan.roots {
            assert!((r.sin() - 0.3).abs() < 1e-13);
        }
        assert!(scan.touches.is_empty());
        assert!(!scan.identically_zero);
    }

    #[test]
    fn flags_identically_zero() {
        let scan = periodic_zeros(&|_| 0.0, 64, 1e-7);
        assert!(scan.identically_zero);
    }

    #[test]
    fn finds_close_root_pair_via_refinement() {
        // Two roots 1e-4 apart straddling tau = 1: far below the 2pi/64
        // sampling scale.
        let f = |tau: f64| (tau - 1.0) * (tau - 1.0001) + 0.0;
        let scan = interval_zeros(&f, 0.0, TAU, 64, 1e-4);
        assert_eq!(scan.roots.len(), 2, "roots: {:?}", scan.roots);
    }

    #[test]
    fn reports_tangential_touch() {
        let f = |tau: f64| (tau.sin() - 1.0) + 0.0; // touches zero at pi/2
        let scan = periodic_zeros(&f, 256, 1e-4);
        assert!(scan.roots.is_empty());
        assert_eq!(scan.touches.len(), 1);
        assert!((scan.touches[0] - std::f64::consts::FRAC_PI_2).abs() < 0.1);
    }

    #[test]
    fn newton_converges_on_quadratic_bowl() {
        let eval = |p: ParamPoint| {
            let g = [2.0 * (p.s - 0.3), 4.0 * (p.t + 0.2)];
            let h = [[2.0, 0.0], [0.0, 4.0]];
            (g, h)
        };
        let rect = ParamRect {
            s: [-3.0, 3.0],
            t: [-3.0, 3.0],
            wrap_s: false,
            wrap_t: false,
        };
        let root = newton2d(&eval, ParamPoint::new(1.0, 1.0), &rect, 1e-12, 40, 0.5).unwrap();
        assert!((root.s - 0.3).abs() < 1e-10);
        assert!((root.t + 0.2).abs() < 1e-10);
    }

    #[test]
    fn newton_gives_up_on_constant_gradient() {
        // Gradient never vanishes and Hessian is zero: the plane case.
        let eval = |_p: ParamPoint| ([1.0, 0.0], [[0.0, 0.0], [0.0, 0.0]]);
        let rect = ParamRect {
            s: [-3.0, 3.0],
            t: [-3.0, 3.0],
            wrap_s: false,
            wrap_t: false,
        };
        assert!(newton2d(&eval, ParamPoint::new(0.0, 0.0), &rect, 1e-12, 40, 0.5).is_none());
    }

    #[test]
    fn newton_converges_onto_degenerate_circle() {
        // g = (0, cos t): critical circles t = pi/2 + k pi, singular Hessian.
        let eval = |p: ParamPoint| ([0.0, p.t.cos()], [[0.0, 0.0], [0.0, -p.t.sin()]]);
        let rect = ParamRect {
            s: [0.0, TAU],
            t: [0.0, TAU],
            wrap_s: true,
            wrap_t: true,
        };
        let root = newton2d(&eval, ParamPoint::new(1.0, 1.3), &rect, 1e-12, 60, 0.5).unwrap();
        assert!(root.t.cos().abs() < 1e-12);
        assert!((root.s - 1.0).abs() < 1e-9, "s should not move: {}", root.s);
    }
}
