//! Truncated real Fourier series on `[0, 2pi)`.
//!
//! Boundary curves are stored as Fourier coefficient tables, which gives
//! closed curves with exact derivatives of every order.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// `f(tau) = c0 + sum_k a_k cos(k tau) + b_k sin(k tau)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourierSeries {
    #[serde(rename = "const")]
    pub c0: f64,
    #[serde(default)]
    pub cos: Vec<f64>,
    #[serde(default)]
    pub sin: Vec<f64>,
}

impl FourierSeries {
    pub fn constant(c0: f64) -> Self {
        FourierSeries {
            c0,
            cos: Vec::new(),
            sin: Vec::new(),
        }
    }

    /// Single-harmonic series `c0 + a cos(tau) + b sin(tau)`.
    pub fn circle_component(c0: f64, a: f64, b: f64) -> Self {
        FourierSeries {
            c0,
            cos: vec![a],
            sin: vec![b],
        }
    }

    pub fn harmonics(&self) -> usize {
        self.cos.len().max(self.sin.len())
    }

    /// Value and first/second derivative at `tau`.
    pub fn jet(&self, tau: f64) -> [f64; 3] {
        let (sin1, cos1) = tau.sin_cos();
        let mut c_k = 1.0; // cos(k tau), starting at k = 0
        let mut s_k = 0.0;
        let mut out = [self.c0, 0.0, 0.0];
        let n = self.harmonics();
        for k in 1..=n {
            // Angle-addition recurrence for cos/sin(k tau).
            let c_next = c_k * cos1 - s_k * sin1;
            let s_next = s_k * cos1 + c_k * sin1;
            c_k = c_next;
            s_k = s_next;
            let a = self.cos.get(k - 1).copied().unwrap_or(0.0);
            let b = self.sin.get(k - 1).copied().unwrap_or(0.0);
            let kf = k as f64;
            out[0] += a * c_k + b * s_k;
            out[1] += kf * (b * c_k - a * s_k);
            out[2] -= kf * kf * (a * c_k + b * s_k);
        }
        out
    }

    pub fn eval(&self, tau: f64) -> f64 {
        self.jet(tau)[0]
    }

    /// Least-squares fit (plain DFT of uniform samples) of a periodic
    /// function, keeping `harmonics` terms. For analytic inputs the
    /// coefficients decay geometrically, so moderate counts reach
    /// round-off-level reconstruction error.
    pub fn fit(f: impl Fn(f64) -> f64, harmonics: usize, samples: usize) -> Self {
        let vals: Vec<f64> = (0..samples)
            .map(|j| f(2.0 * PI * j as f64 / samples as f64))
            .collect();
        Self::fit_samples(&vals, harmonics)
    }

    /// Fit from precomputed values at the uniform grid `tau_j = 2 pi j / n`
    /// (`j = 0..n`, no closing sample).
    pub fn fit_samples(vals: &[f64], harmonics: usize) -> Self {
        let samples = vals.len();
        assert!(samples > 2 * harmonics, "fit is under-sampled");
        let c0 = vals.iter().sum::<f64>() / samples as f64;
        let mut cos = vec![0.0; harmonics];
        let mut sin = vec![0.0; harmonics];
        for k in 1..=harmonics {
            let mut a = 0.0;
            let mut b = 0.0;
            for (j, v) in vals.iter().enumerate() {
                let ang = 2.0 * PI * (k * j) as f64 / samples as f64;
                a += v * ang.cos();
                b += v * ang.sin();
            }
            cos[k - 1] = 2.0 * a / samples as f64;
            sin[k - 1] = 2.0 * b / samples as f64;
        }
        // Drop negligible trailing harmonics to keep tables compact.
        let tiny = 1e-14;
        let mut keep = 0;
        for k in (0..harmonics).rev() {
            if cos[k].abs() > tiny || sin[k].abs() > tiny {
                keep = k + 1;
                break;
            }
        }
        cos.truncate(keep);
        sin.truncate(keep);
        FourierSeries { c0, cos, sin }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jet_matches_closed_form() {
        let f = FourierSeries {
            c0: 0.5,
            cos: vec![1.0, 0.0, -0.25],
            sin: vec![0.0, 2.0],
        };
        let tau = 0.7;
        let [v, d1, d2] = f.jet(tau);
        let expect = 0.5 + tau.cos() - 0.25 * (3.0 * tau).cos() + 2.0 * (2.0 * tau).sin();
        let expect_d1 = -tau.sin() + 0.75 * (3.0 * tau).sin() + 4.0 * (2.0 * tau).cos();
        let expect_d2 = -tau.cos() + 2.25 * (3.0 * tau).cos() - 8.0 * (2.0 * tau).sin();
        assert!((v - expect).abs() < 1e-13);
        assert!((d1 - expect_d1).abs() < 1e-13);
        assert!((d2 - expect_d2).abs() < 1e-12);
    }

    #[test]
    fn fit_recovers_analytic_function() {
        // arccos-type composition, analytic on the circle.
        let f = |tau: f64| (0.8 * tau.sin()).asin() + 0.3 * (2.0 * tau).cos();
        let fit = FourierSeries::fit(f, 64, 4096);
        for j in 0..257 {
            let tau = 2.0 * PI * j as f64 / 257.0;
            assert!(
                (fit.eval(tau) - f(tau)).abs() < 1e-10,
                "poor fit at tau = {tau}"
            );
        }
    }

    #[test]
    fn fit_of_single_harmonic_is_exact() {
        let f = |tau: f64| 1.5 - 2.0 * tau.cos() + 0.5 * tau.sin();
        let fit = FourierSeries::fit(f, 8, 256);
        assert!(fit.harmonics() <= 1 || fit.cos[1..].iter().all(|c| c.abs() < 1e-13));
        assert!((fit.c0 - 1.5).abs() < 1e-13);
        assert!((fit.cos[0] + 2.0).abs() < 1e-13);
        assert!((fit.sin[0] - 0.5).abs() < 1e-13);
    }
}
