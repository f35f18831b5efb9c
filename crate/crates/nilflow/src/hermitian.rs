//! Invariant Hermitian metrics and their adapted coframes.
//!
//! A metric is six coefficients ([`MetricCoeffs`]) through
//!
//! ```text
//! 2ω = i(r²ζ^{1 1̄} + s²ζ^{2 2̄} + k²ζ^{3 3̄})
//!      + uζ^{1 2̄} − ūζ^{2 1̄} + vζ^{2 3̄} − v̄ζ^{3 2̄} + zζ^{1 3̄} − z̄ζ^{3 1̄}.
//! ```
//!
//! Positive definiteness is the pairwise conditions `r²s² > |u|²`,
//! `s²k² > |v|²`, `r²k² > |z|²` together with `D := 8i·det ω > 0`. Every
//! metric admits an adapted real coframe in which `ω = e¹² + e³⁴ + e⁵⁶` and J
//! is standard; the flow acts on coefficients, so forms are derived on demand.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::GeometryError;
use crate::exterior::{ComplexFrame, Form, DIM};
use crate::lie::{complex_structure_equations, real_structure_constants, JParams};
use crate::tol;
use crate::Result;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Coefficients `(r², s², k², u, v, z)` of an invariant Hermitian metric.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricCoeffs {
    pub r2: f64,
    pub s2: f64,
    pub k2: f64,
    pub u: Complex64,
    pub v: Complex64,
    pub z: Complex64,
}

impl MetricCoeffs {
    /// Validates positive definiteness.
    pub fn new(r2: f64, s2: f64, k2: f64, u: Complex64, v: Complex64, z: Complex64) -> Result<Self> {
        let m = MetricCoeffs { r2, s2, k2, u, v, z };
        m.validate()?;
        Ok(m)
    }

    /// Diagonal metric `u = v = z = 0`.
    pub fn diagonal(r2: f64, s2: f64, k2: f64) -> Result<Self> {
        MetricCoeffs::new(r2, s2, k2, re(0.0), re(0.0), re(0.0))
    }

    /// Builds without validating; [`det_quantity`] reports failures later.
    pub fn from_parts_unchecked(
        r2: f64,
        s2: f64,
        k2: f64,
        u: Complex64,
        v: Complex64,
        z: Complex64,
    ) -> Self {
        MetricCoeffs { r2, s2, k2, u, v, z }
    }

    fn validate(&self) -> Result<()> {
        let ok = self.r2 > 0.0
            && self.s2 > 0.0
            && self.k2 > 0.0
            && self.r2 * self.s2 > self.u.norm_sqr()
            && self.s2 * self.k2 > self.v.norm_sqr()
            && self.r2 * self.k2 > self.z.norm_sqr();
        if !ok {
            return Err(GeometryError::NotPositiveDefinite(format!(
                "pairwise minors violated: r2={} s2={} k2={} |u|={} |v|={} |z|={}",
                self.r2,
                self.s2,
                self.k2,
                self.u.norm(),
                self.v.norm(),
                self.z.norm()
            )));
        }
        det_quantity(self)?;
        Ok(())
    }

    /// True when `v = z = 0`.
    pub fn is_almost_diagonal(&self) -> bool {
        self.v == re(0.0) && self.z == re(0.0)
    }

    /// True when `u = v = z = 0`.
    pub fn is_diagonal(&self) -> bool {
        self.is_almost_diagonal() && self.u == re(0.0)
    }
}

/// JSON image `{"r2":f,"s2":f,"k2":f,"u":[re,im],"v":[re,im],"z":[re,im]}`.
#[derive(Serialize, Deserialize)]
struct MetricJson {
    r2: f64,
    s2: f64,
    k2: f64,
    u: [f64; 2],
    v: [f64; 2],
    z: [f64; 2],
}

impl Serialize for MetricCoeffs {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MetricJson {
            r2: self.r2,
            s2: self.s2,
            k2: self.k2,
            u: [self.u.re, self.u.im],
            v: [self.v.re, self.v.im],
            z: [self.z.re, self.z.im],
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MetricCoeffs {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MetricJson::deserialize(d)?;
        MetricCoeffs::new(
            j.r2,
            j.s2,
            j.k2,
            Complex64::new(j.u[0], j.u[1]),
            Complex64::new(j.v[0], j.v[1]),
            Complex64::new(j.z[0], j.z[1]),
        )
        .map_err(serde::de::Error::custom)
    }
}

/// Adapted-coframe coefficients `(r_e², s_e², k_e², u_e, Δ_e)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdaptedCoeffs {
    pub r_e2: f64,
    pub s_e2: f64,
    pub k_e2: f64,
    pub u_e: Complex64,
    /// `Δ_e = √(r_e² s_e² − |u_e|²)`, positive.
    pub delta_e: f64,
}

impl AdaptedCoeffs {
    /// Validates positivity of the squares and of `Δ_e²`.
    pub fn new(r_e2: f64, s_e2: f64, k_e2: f64, u_e: Complex64) -> Result<Self> {
        let d2 = r_e2 * s_e2 - u_e.norm_sqr();
        if !(r_e2 > 0.0 && s_e2 > 0.0 && k_e2 > 0.0 && d2 > 0.0) {
            return Err(GeometryError::NotPositiveDefinite(format!(
                "adapted coefficients violate positivity: r_e2={r_e2} s_e2={s_e2} k_e2={k_e2} Δ²={d2}"
            )));
        }
        Ok(AdaptedCoeffs {
            r_e2,
            s_e2,
            k_e2,
            u_e,
            delta_e: d2.sqrt(),
        })
    }

    /// Adapted coefficients of a diagonal metric.
    pub fn diagonal(r2: f64, s2: f64, k2: f64) -> Result<Self> {
        AdaptedCoeffs::new(r2, s2, k2, re(0.0))
    }
}

/// Diagonal bundle metric coefficients `(r̃², s̃², k̃²)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BundleMetricCoeffs {
    pub tr2: f64,
    pub ts2: f64,
    pub tk2: f64,
}

impl BundleMetricCoeffs {
    /// Validates strict positivity.
    pub fn new(tr2: f64, ts2: f64, tk2: f64) -> Result<Self> {
        if !(tr2 > 0.0 && ts2 > 0.0 && tk2 > 0.0) {
            return Err(GeometryError::NotPositiveDefinite(format!(
                "bundle metric must be positive: ({tr2}, {ts2}, {tk2})"
            )));
        }
        Ok(BundleMetricCoeffs { tr2, ts2, tk2 })
    }

    /// As a [`MetricCoeffs`] value (it is a diagonal metric).
    pub fn as_metric(&self) -> MetricCoeffs {
        MetricCoeffs::from_parts_unchecked(self.tr2, self.ts2, self.tk2, re(0.0), re(0.0), re(0.0))
    }
}

// ζ-coframe masks for the nine Hermitian monomials.
const Z11B: u8 = 0b001001;
const Z22B: u8 = 0b010010;
const Z33B: u8 = 0b100100;
const Z12B: u8 = 0b010001;
const Z21B: u8 = 0b001010;
const Z23B: u8 = 0b100010;
const Z32B: u8 = 0b010100;
const Z13B: u8 = 0b100001;
const Z31B: u8 = 0b001100;

/// Mask of `ζ^{12 1̄ 2̄}` in the ζ-coframe.
pub const Z1212: u8 = 0b011011;

/// The fundamental (1,1)-form `ω` over the ζ-coframe.
pub fn fundamental_form(m: &MetricCoeffs) -> Result<Form> {
    m.validate()?;
    let mut f = Form::zero();
    f.add_coeff(Z11B, I * re(m.r2 / 2.0));
    f.add_coeff(Z22B, I * re(m.s2 / 2.0));
    f.add_coeff(Z33B, I * re(m.k2 / 2.0));
    f.add_coeff(Z12B, m.u / 2.0);
    f.add_coeff(Z21B, -m.u.conj() / 2.0);
    f.add_coeff(Z23B, m.v / 2.0);
    f.add_coeff(Z32B, -m.v.conj() / 2.0);
    f.add_coeff(Z13B, m.z / 2.0);
    f.add_coeff(Z31B, -m.z.conj() / 2.0);
    Ok(f)
}

/// `D = 8i·det ω`, the positivity quantity of the metric.
pub fn det_quantity(m: &MetricCoeffs) -> Result<f64> {
    let d = m.r2 * m.s2 * m.k2 + 2.0 * (I * m.u.conj() * m.v.conj() * m.z).re
        - m.k2 * m.u.norm_sqr()
        - m.r2 * m.v.norm_sqr()
        - m.s2 * m.z.norm_sqr();
    if !(d > 0.0) {
        return Err(GeometryError::NotPositiveDefinite(format!(
            "8i·det ω = {d} must be positive"
        )));
    }
    Ok(d)
}

/// `‖Ψ‖_ω = √(8/D)` for the invariant (3,0)-form `Ψ = ζ¹∧ζ²∧ζ³`.
pub fn psi_norm(m: &MetricCoeffs) -> Result<f64> {
    Ok((8.0 / det_quantity(m)?).sqrt())
}

/// Adapted coefficients of `(J, ω)`.
pub fn adapted_coeffs(m: &MetricCoeffs) -> Result<AdaptedCoeffs> {
    let r_e2 = m.r2 - m.z.norm_sqr() / m.k2;
    let s_e2 = m.s2 - m.v.norm_sqr() / m.k2;
    let u_e = m.u - I * m.v.conj() * m.z / m.k2;
    AdaptedCoeffs::new(r_e2, s_e2, m.k2, u_e)
}

/// Adapted real coframe: `ω = e¹² + e³⁴ + e⁵⁶` and standard J.
///
/// Returns the frame (the ζ rows over `e¹..e⁶`) and the adapted coefficients.
pub fn adapted_basis(params: &JParams, m: &MetricCoeffs) -> Result<(ComplexFrame, AdaptedCoeffs)> {
    let _ = params; // the frame construction depends on the metric only
    m.validate()?;
    let a = adapted_coeffs(m)?;
    let r_e = a.r_e2.sqrt();
    let de = a.delta_e;
    let k = m.k2.sqrt();
    let k2 = m.k2;

    // ζ in terms of τ (τ¹ = e¹+ie², τ² = e³+ie⁴, τ³ = e⁵+ie⁶):
    //   ζ¹ = τ¹/r_e − i ū_e/(r_e Δ_e) τ²
    //   ζ² = (r_e/Δ_e) τ²
    //   ζ³ = iz/(k² r_e) τ¹ + (i v r_e² + z ū_e)/(k² r_e Δ_e) τ² + τ³/k
    let t = [
        [re(1.0 / r_e), -I * a.u_e.conj() / re(r_e * de), re(0.0)],
        [re(0.0), re(r_e / de), re(0.0)],
        [
            I * m.z / re(k2 * r_e),
            (I * m.v * re(a.r_e2) + m.z * a.u_e.conj()) / re(k2 * r_e * de),
            re(1.0 / k),
        ],
    ];
    let mut rows = [[re(0.0); DIM]; 3];
    for zi in 0..3 {
        for tj in 0..3 {
            rows[zi][2 * tj] += t[zi][tj];
            rows[zi][2 * tj + 1] += I * t[zi][tj];
        }
    }
    Ok((ComplexFrame::new(rows)?, a))
}

/// The coframe change of the almost-diagonal reduction, `σ^a = Σ_b m[a][b] ζ^b`.
#[derive(Clone, Copy, Debug)]
pub struct CoframeChange(pub [[Complex64; 3]; 3]);

impl CoframeChange {
    /// The new (1,0)-coframe rows as ζ-coframe 1-forms.
    pub fn rows(&self) -> [Form; 3] {
        let mut out: [Form; 3] = Default::default();
        for a in 0..3 {
            let mut f = Form::zero();
            for b in 0..3 {
                f.add_coeff(1 << b, self.0[a][b]);
            }
            out[a] = f;
        }
        out
    }
}

/// Reduces a metric to almost-diagonal form (`v = z = 0`).
///
/// The automorphism `σ³ = ζ³ − (iv/k²)ζ² − (iz/k²)ζ¹` preserves the structure
/// equations and `Ψ`; the reduced coefficients follow the adapted ones.
pub fn reduce_almost_diagonal(
    params: &JParams,
    m: &MetricCoeffs,
) -> Result<(CoframeChange, MetricCoeffs)> {
    let _ = params;
    m.validate()?;
    let a = adapted_coeffs(m)?;
    let change = CoframeChange([
        [re(1.0), re(0.0), re(0.0)],
        [re(0.0), re(1.0), re(0.0)],
        [-I * m.z / re(m.k2), -I * m.v / re(m.k2), re(1.0)],
    ]);
    let reduced = MetricCoeffs::new(a.r_e2, a.s_e2, m.k2, a.u_e, re(0.0), re(0.0))?;
    Ok((change, reduced))
}

/// Balanced predicate `dω² = 0`, via the exterior module and the closed form.
///
/// Both routes must agree; a mismatch is reported as an error.
pub fn is_balanced(params: &JParams, m: &MetricCoeffs) -> Result<bool> {
    // closed form: s²k²−|v|² + (x+iy)(r²k²−|z|²) = iλ(k²ū + i v z̄)
    let lhs = re(m.s2 * m.k2 - m.v.norm_sqr())
        + Complex64::new(params.x, params.y) * re(m.r2 * m.k2 - m.z.norm_sqr());
    let rhs = I * re(params.lambda) * (re(m.k2) * m.u.conj() + I * m.v * m.z.conj());
    let scale = m.r2 * m.k2 + m.s2 * m.k2 + 1.0;
    let closed = (lhs - rhs).norm() <= tol::PREDICATE_TOL * scale;

    // exterior route: dω² with ω = e¹²+e³⁴+e⁵⁶ in the adapted coframe
    let (_, a) = adapted_basis(params, m)?;
    let sc = real_structure_constants(params, &a)?;
    let omega = Form::basis(0b000011) + Form::basis(0b001100) + Form::basis(0b110000);
    let omega2 = omega.wedge(&omega);
    let d_omega2 = crate::exterior::d(&omega2, &sc);
    let ext_scale = 1.0 + sc.max_abs() * omega2.max_abs();
    let exterior_route = d_omega2.is_zero(tol::PREDICATE_TOL * ext_scale);

    if closed != exterior_route {
        return Err(GeometryError::RouteMismatch(format!(
            "balanced predicate: closed-form {closed} vs exterior {exterior_route}"
        )));
    }
    Ok(closed)
}

/// Locally conformally Kähler predicate.
///
/// Gated to `ρ = λ = y = 0, x = 1`, the only parameters where such metrics
/// exist in this family; inside the gate the coefficient conditions are
/// `r²k²−|z|² = s²k²−|v|²` and `k²u = i z v̄`.
pub fn is_lck(params: &JParams, m: &MetricCoeffs) -> Result<bool> {
    m.validate()?;
    let gate = params.rho == 0
        && params.lambda.abs() <= 1e-12
        && params.y.abs() <= 1e-12
        && (params.x - 1.0).abs() <= 1e-12;
    if !gate {
        return Ok(false);
    }
    let scale = m.r2 * m.k2 + m.s2 * m.k2 + 1.0;
    let c1_eq_c2 =
        ((m.r2 * m.k2 - m.z.norm_sqr()) - (m.s2 * m.k2 - m.v.norm_sqr())).abs()
            <= tol::PREDICATE_TOL * scale;
    let u_cond = (re(m.k2) * m.u - I * m.z * m.v.conj()).norm() <= tol::PREDICATE_TOL * scale;
    Ok(c1_eq_c2 && u_cond)
}

/// Pluriclosed predicate `∂∂̄ω = 0`, computed numerically.
pub fn is_pluriclosed(params: &JParams, m: &MetricCoeffs) -> Result<bool> {
    let pp = del_delbar_omega(params, m)?;
    let scale = (1.0 + m.k2)
        * (1.0 + params.rho_f() + params.lambda * params.lambda + params.x.abs() + params.y.abs())
            .powi(2);
    Ok(pp.is_zero(tol::PREDICATE_TOL * scale))
}

/// `∂∂̄ω` over the ζ-coframe, from the structure equations.
pub fn del_delbar_omega(params: &JParams, m: &MetricCoeffs) -> Result<Form> {
    let omega = fundamental_form(m)?;
    let diff = complex_structure_equations(params).differential();
    let d_omega = diff.apply(&omega);
    let delbar = d_omega.pq_part_zeta(1, 2);
    let d_delbar = diff.apply(&delbar);
    Ok(d_delbar.pq_part_zeta(2, 2))
}

/// `i∂∂̄ω` over the ζ-coframe.
pub fn i_del_delbar_omega(params: &JParams, m: &MetricCoeffs) -> Result<Form> {
    Ok(del_delbar_omega(params, m)?.scale(I))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C;

    fn c(re_: f64, im: f64) -> C {
        C::new(re_, im)
    }

    #[test]
    fn det_quantity_examples() {
        let m = MetricCoeffs::diagonal(1.0, 1.0, 1.0).unwrap();
        assert_eq!(det_quantity(&m).unwrap(), 1.0);
        let m = MetricCoeffs::diagonal(2.0, 3.0, 1.0).unwrap();
        assert_eq!(det_quantity(&m).unwrap(), 6.0);
        let m = MetricCoeffs::new(1.0, 1.0, 1.0, c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        assert!((det_quantity(&m).unwrap() - 0.75).abs() < 1e-15);
    }

    #[test]
    fn psi_norm_of_identity_metric() {
        let m = MetricCoeffs::diagonal(1.0, 1.0, 1.0).unwrap();
        assert!((psi_norm(&m).unwrap() - 8.0f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn psi_norm_squared_times_det_is_eight() {
        let m = MetricCoeffs::new(1.4, 0.9, 2.1, c(0.3, -0.2), c(0.1, 0.4), c(-0.2, 0.1)).unwrap();
        let n = psi_norm(&m).unwrap();
        assert!((n * n * det_quantity(&m).unwrap() - 8.0).abs() < 1e-12);
    }

    #[test]
    fn fundamental_form_is_real_and_diagonal_case_matches() {
        let m = MetricCoeffs::diagonal(1.0, 1.0, 1.0).unwrap();
        let w = fundamental_form(&m).unwrap();
        assert_eq!(w.coeff(Z11B), c(0.0, 0.5));
        let m = MetricCoeffs::new(1.4, 0.9, 2.1, c(0.3, -0.2), c(0.1, 0.4), c(-0.2, 0.1)).unwrap();
        let w = fundamental_form(&m).unwrap();
        assert!(w.conjugate_zeta().approx_eq(&w, 1e-14));
    }

    #[test]
    fn omega_cubed_does_not_vanish() {
        let m = MetricCoeffs::new(1.4, 0.9, 2.1, c(0.3, -0.2), c(0.1, 0.4), c(-0.2, 0.1)).unwrap();
        let w = fundamental_form(&m).unwrap();
        let w3 = w.wedge(&w).wedge(&w);
        assert!(w3.max_abs() > 1e-6);
    }

    #[test]
    fn adapted_coefficients_examples() {
        let m = MetricCoeffs::diagonal(1.3, 0.7, 2.0).unwrap();
        let a = adapted_coeffs(&m).unwrap();
        assert_eq!(a.r_e2, 1.3);
        assert_eq!(a.s_e2, 0.7);
        assert_eq!(a.k_e2, 2.0);
        assert_eq!(a.u_e, c(0.0, 0.0));
        assert!((a.delta_e - (1.3f64 * 0.7).sqrt()).abs() < 1e-15);

        let m = MetricCoeffs::new(1.0, 1.0, 1.0, c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        let a = adapted_coeffs(&m).unwrap();
        assert!((a.delta_e - 3.0f64.sqrt() / 2.0).abs() < 1e-15);
        assert_eq!(a.u_e, c(0.5, 0.0));

        let m = MetricCoeffs::new(2.0, 1.0, 2.0, c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0)).unwrap();
        let a = adapted_coeffs(&m).unwrap();
        assert!((a.r_e2 - 1.5).abs() < 1e-15);
    }

    #[test]
    fn adapted_basis_normalizes_omega() {
        let p = JParams::new(1, 0.4, 0.2, -0.6).unwrap();
        let m = MetricCoeffs::new(1.4, 0.9, 2.1, c(0.3, -0.2), c(0.1, 0.4), c(-0.2, 0.1)).unwrap();
        let (frame, a) = adapted_basis(&p, &m).unwrap();
        let w = fundamental_form(&m).unwrap();
        let w_e = frame.to_e(&w);
        let expected = Form::basis(0b000011) + Form::basis(0b001100) + Form::basis(0b110000);
        assert!(w_e.approx_eq(&expected, 1e-12));

        // e¹²³⁴ = (Δ_e²/4) ζ^{12 1̄ 2̄}
        let e1234 = frame.to_zeta(&Form::basis(0b001111));
        let coeff = e1234.coeff(Z1212);
        assert!((coeff - re(a.delta_e * a.delta_e / 4.0)).norm() < 1e-12);
    }

    #[test]
    fn reduction_examples() {
        let p = JParams::new(0, 0.0, -1.0, 0.0).unwrap();
        // already almost diagonal: unchanged
        let m = MetricCoeffs::new(1.0, 1.0, 1.0, c(0.2, 0.1), c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        let (_, red) = reduce_almost_diagonal(&p, &m).unwrap();
        assert_eq!(red, m);

        // v = 1/2: s_σ² = 3/4, u_σ = 0
        let m = MetricCoeffs::new(1.0, 1.0, 1.0, c(0.0, 0.0), c(0.5, 0.0), c(0.0, 0.0)).unwrap();
        let (_, red) = reduce_almost_diagonal(&p, &m).unwrap();
        assert!((red.s2 - 0.75).abs() < 1e-15);
        assert_eq!(red.u, c(0.0, 0.0));
    }

    #[test]
    fn reduction_preserves_psi_and_determinant() {
        let p = JParams::new(1, 0.3, 0.5, 0.2).unwrap();
        let m = MetricCoeffs::new(1.4, 0.9, 2.1, c(0.3, -0.2), c(0.1, 0.4), c(-0.2, 0.1)).unwrap();
        let (change, red) = reduce_almost_diagonal(&p, &m).unwrap();

        let rows = change.rows();
        let psi_new = rows[0].wedge(&rows[1]).wedge(&rows[2]);
        let psi = Form::basis(0b000111);
        assert!(psi_new.approx_eq(&psi, 1e-14));

        // Δ_σ² k² = D
        let a = adapted_coeffs(&m).unwrap();
        let d = det_quantity(&m).unwrap();
        assert!((a.delta_e.powi(2) * m.k2 - d).abs() < 1e-12 * d.max(1.0));
        let d_red = det_quantity(&red).unwrap();
        assert!((d_red - d).abs() < 1e-12 * d.max(1.0));
    }

    #[test]
    fn balanced_predicate_on_n3() {
        let p = JParams::new(0, 0.0, -1.0, 0.0).unwrap();
        let m = MetricCoeffs::diagonal(1.2, 1.2, 0.7).unwrap();
        assert!(is_balanced(&p, &m).unwrap());
        let m = MetricCoeffs::diagonal(1.2, 0.9, 0.7).unwrap();
        assert!(!is_balanced(&p, &m).unwrap());
    }

    #[test]
    fn lck_predicate_gate_and_example() {
        let p = JParams::new(0, 0.0, 1.0, 0.0).unwrap();
        let m = MetricCoeffs::diagonal(1.0, 1.0, 1.0).unwrap();
        assert!(is_lck(&p, &m).unwrap());
        let off_gate = JParams::new(0, 0.0, -1.0, 0.0).unwrap();
        assert!(!is_lck(&off_gate, &m).unwrap());
        let m2 = MetricCoeffs::diagonal(2.0, 1.0, 1.0).unwrap();
        assert!(!is_lck(&p, &m2).unwrap());
    }

    #[test]
    fn pluriclosed_depends_only_on_j() {
        // pluriclosed ⇔ ρ + λ² − 2x = 0
        let p = JParams::new(0, 0.0, 0.0, 0.7).unwrap();
        for m in [
            MetricCoeffs::diagonal(1.0, 1.0, 1.0).unwrap(),
            MetricCoeffs::new(1.4, 0.9, 2.1, c(0.3, -0.2), c(0.1, 0.4), c(-0.2, 0.1)).unwrap(),
        ] {
            assert!(is_pluriclosed(&p, &m).unwrap());
        }
        let p = JParams::new(0, 0.0, -1.0, 0.0).unwrap();
        assert!(!is_pluriclosed(&p, &MetricCoeffs::diagonal(1.0, 1.0, 1.0).unwrap()).unwrap());
    }

    #[test]
    fn i_del_delbar_matches_closed_coefficient() {
        // i∂∂̄ω = (k²/2)(ρ+λ²−2x) ζ^{12 1̄ 2̄}
        let p = JParams::new(0, 0.0, -1.0, 0.0).unwrap();
        let m = MetricCoeffs::diagonal(1.0, 1.0, 1.0).unwrap();
        let f = i_del_delbar_omega(&p, &m).unwrap();
        assert!((f.coeff(Z1212) - c(1.0, 0.0)).norm() < 1e-14);

        let p = JParams::new(1, 0.8, 0.3, -0.4).unwrap();
        let m = MetricCoeffs::new(1.4, 0.9, 2.1, c(0.3, -0.2), c(0.1, 0.4), c(-0.2, 0.1)).unwrap();
        let f = i_del_delbar_omega(&p, &m).unwrap();
        let expected = m.k2 / 2.0 * (1.0 + 0.8 * 0.8 - 0.6);
        assert!((f.coeff(Z1212) - re(expected)).norm() < 1e-12);
    }

    #[test]
    fn metric_json_round_trip() {
        let m = MetricCoeffs::new(1.4, 0.9, 2.1, c(0.3, -0.2), c(0.1, 0.4), c(-0.2, 0.1)).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert!(s.contains("\"u\":[0.3,-0.2]"));
        let back: MetricCoeffs = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn invalid_metrics_are_rejected() {
        assert!(MetricCoeffs::diagonal(-1.0, 1.0, 1.0).is_err());
        assert!(MetricCoeffs::new(1.0, 1.0, 1.0, c(1.1, 0.0), c(0.0, 0.0), c(0.0, 0.0)).is_err());
        // pairwise minors pass but the determinant fails
        let m = MetricCoeffs::from_parts_unchecked(
            1.0,
            1.0,
            1.0,
            c(0.9, 0.0),
            c(0.9, 0.0),
            c(-0.9, 0.0),
        );
        assert!(det_quantity(&m).is_err());
    }
}
