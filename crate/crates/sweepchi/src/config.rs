//! Tunable tolerances and resolutions.
//!
//! Every numeric threshold used by the sweep is a configuration value with
//! the defaults below, not a hard-coded constant.

/// Parameters controlling tangency detection, genericity enforcement and
/// root refinement.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    /// Side length of the Newton seeding grid for interior tangencies.
    pub grid: usize,
    /// Sample count for 1D bracketing along boundary curves.
    pub samples: usize,
    /// Interior tangencies with |K| below this are non-generic.
    pub tol_k: f64,
    /// Boundary tangencies with |k_g - k_g^u| below this are non-generic.
    pub tol_kg: f64,
    /// A boundary tangency with |<u,N>| > 1 - tol_n means the height
    /// function is critical on the boundary (non-generic).
    pub tol_n: f64,
    /// Sections with |<u,n>| below this are non-transverse.
    pub tol_transverse: f64,
    /// Convergence threshold on |grad h| for the 2D Newton iteration.
    pub newton_tol: f64,
    /// Convergence threshold on |phi'| for boundary root polishing.
    pub boundary_root_tol: f64,
    /// Converged interior roots closer than this (wrapped parameter
    /// distance) are clustered into one event.
    pub dedup_dist: f64,
    /// Maximum perturbation retries in `ensure_generic`.
    pub max_retries: usize,
    /// Perturbation angle at retry k is `base_perturb * 2^k`.
    pub base_perturb: f64,
    /// The signed tangency sum must land within this of an integer.
    pub integrality_tol: f64,
    /// Near-zero touches of the bracketing function below this fraction of
    /// its scale, with no sign change, are flagged as degenerate.
    pub touch_rel_tol: f64,
    /// Sweep poles (for sphere specializations) closer than this to the
    /// boundary are rejected.
    pub pole_margin: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            grid: 256,
            samples: 4096,
            tol_k: 1e-8,
            tol_kg: 1e-8,
            tol_n: 1e-8,
            tol_transverse: 1e-8,
            newton_tol: 1e-12,
            boundary_root_tol: 1e-12,
            dedup_dist: 1e-6,
            max_retries: 8,
            base_perturb: 1e-3,
            integrality_tol: 1e-9,
            touch_rel_tol: 1e-7,
            pole_margin: 1e-6,
        }
    }
}
