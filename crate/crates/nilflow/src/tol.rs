//! Tolerance policy, in one place.
//!
//! Polynomial identities of bounded degree are certified by evaluating both
//! sides at many random points and demanding agreement to [`REL_TOL`] relative
//! with an absolute floor of [`ABS_FLOOR`]; predicates on form coefficients
//! (instanton conditions, pluriclosedness) use [`PREDICATE_TOL`] on
//! coefficients normalized by the largest one involved.

/// Relative tolerance for identity checks between two computation routes.
pub const REL_TOL: f64 = 1e-9;

/// Absolute floor under which a coefficient counts as zero in relative tests.
pub const ABS_FLOOR: f64 = 1e-12;

/// Absolute tolerance for vanishing predicates on normalized coefficients.
pub const PREDICATE_TOL: f64 = 1e-10;

/// True when `a` and `b` agree relative to `scale` (with the absolute floor).
pub fn close(a: f64, b: f64, scale: f64) -> bool {
    (a - b).abs() <= REL_TOL * scale.max(1.0) + ABS_FLOOR
}

/// Relative deviation of `a` from `b` against a given scale.
pub fn rel_err(a: f64, b: f64, scale: f64) -> f64 {
    (a - b).abs() / scale.max(ABS_FLOOR)
}
