//! Shared fixtures for the benchmarks.

use nilflow::hermitian::{AdaptedCoeffs, BundleMetricCoeffs, MetricCoeffs};
use nilflow::lie::JParams;
use num_complex::Complex64;

/// A structure with every coefficient in play.
pub fn generic_params() -> JParams {
    JParams::new(1, 0.6, 0.4, -0.8).expect("valid parameters")
}

/// An adapted coefficient set away from the diagonal locus.
pub fn generic_adapted() -> AdaptedCoeffs {
    AdaptedCoeffs::new(1.3, 0.8, 1.5, Complex64::new(0.25, -0.1)).expect("valid coefficients")
}

/// λ = 0 structure and diagonal metrics for the bundle kernels.
pub fn bundle_case() -> (JParams, MetricCoeffs, BundleMetricCoeffs) {
    (
        JParams::new(1, 0.0, 0.3, -0.5).expect("valid parameters"),
        MetricCoeffs::diagonal(1.3, 0.7, 1.9).expect("valid metric"),
        BundleMetricCoeffs::new(0.8, 1.6, 1.1).expect("valid metric"),
    )
}
