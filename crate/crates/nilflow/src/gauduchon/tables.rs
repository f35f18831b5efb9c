//! Closed-form connection, curvature and trace tables.
//!
//! These are long explicit expressions in the adapted metric coefficients;
//! the verification suites pin every one of them against the first-principles
//! route in [`super`], which is the arbiter whenever an expression is in
//! doubt.

use num_complex::Complex64;

use super::{check_bundle_gate, ConnectionForms, CurvatureForms, FormMatrix};
use crate::exterior::Form;
use crate::hermitian::{AdaptedCoeffs, BundleMetricCoeffs, MetricCoeffs};
use crate::lie::JParams;
use crate::Result;

// e-coframe masks for the fifteen 2-form monomials
const E12: u8 = 0b000011;
const E13: u8 = 0b000101;
const E14: u8 = 0b001001;
const E15: u8 = 0b010001;
const E16: u8 = 0b100001;
const E23: u8 = 0b000110;
const E24: u8 = 0b001010;
const E25: u8 = 0b010010;
const E26: u8 = 0b100010;
const E34: u8 = 0b001100;
const E35: u8 = 0b010100;
const E36: u8 = 0b100100;
const E45: u8 = 0b011000;
const E46: u8 = 0b101000;
const E56: u8 = 0b110000;

const E1: u8 = 0b000001;
const E2: u8 = 0b000010;
const E3: u8 = 0b000100;
const E4: u8 = 0b001000;
const E5: u8 = 0b010000;
const E6: u8 = 0b100000;

fn form(terms: &[(u8, f64)]) -> Form {
    let mut f = Form::zero();
    for &(mask, c) in terms {
        f.add_coeff(mask, Complex64::new(c, 0.0));
    }
    f
}

/// Fills the six J-commutation images and checks nothing else is needed.
///
/// `σ²₃ = −σ¹₄, σ²₄ = σ¹₃, σ²₅ = −σ¹₆, σ²₆ = σ¹₅, σ⁴₅ = −σ³₆, σ⁴₆ = σ³₅`,
/// then antisymmetry for the lower triangle.
fn fill_relations(m: &mut FormMatrix) {
    let pairs: [((usize, usize), (usize, usize), f64); 6] = [
        ((2, 3), (1, 4), -1.0),
        ((2, 4), (1, 3), 1.0),
        ((2, 5), (1, 6), -1.0),
        ((2, 6), (1, 5), 1.0),
        ((4, 5), (3, 6), -1.0),
        ((4, 6), (3, 5), 1.0),
    ];
    for ((i, j), (a, b), s) in pairs {
        let f = m.get(a, b).scale_re(s);
        m.set(i, j, f);
    }
    for i in 1..=6 {
        for j in (i + 1)..=6 {
            let f = -m.get(i, j).clone();
            m.set(j, i, f);
        }
    }
}

/// Scalars shared by the tangent-bundle tables.
struct TangentVars {
    rho: f64,
    la: f64,
    x: f64,
    y: f64,
    t: f64,
    r2: f64,
    s2: f64,
    u1: f64,
    u2: f64,
    uu: f64,
    de: f64,
    de2: f64,
    ke: f64,
    ke2: f64,
}

impl TangentVars {
    fn new(params: &JParams, adapted: &AdaptedCoeffs, tau: f64) -> Self {
        TangentVars {
            rho: params.rho_f(),
            la: params.lambda,
            x: params.x,
            y: params.y,
            t: tau,
            r2: adapted.r_e2,
            s2: adapted.s_e2,
            u1: adapted.u_e.re,
            u2: adapted.u_e.im,
            uu: adapted.u_e.norm_sqr(),
            de: adapted.delta_e,
            de2: adapted.delta_e * adapted.delta_e,
            ke: adapted.k_e2.sqrt(),
            ke2: adapted.k_e2,
        }
    }
}

/// Connection 1-forms of `∇^τ` from the explicit table.
pub fn closed_form_connection_tau(
    params: &JParams,
    adapted: &AdaptedCoeffs,
    tau: f64,
) -> ConnectionForms {
    let v = TangentVars::new(params, adapted, tau);
    let (rho, la, x, y) = (v.rho, v.la, v.x, v.y);
    let (t, r2, u1, u2, uu, de, de2, ke) = (v.t, v.r2, v.u1, v.u2, v.uu, v.de, v.de2, v.ke);
    let t1 = t - 1.0;
    let t2 = t + 1.0;
    let r4 = r2 * r2;

    let mut m = FormMatrix::zero();
    m.set(1, 2, form(&[(E6, -ke / r2 * t1)]));
    m.set(
        1,
        3,
        form(&[
            (E5, la * ke / (2.0 * de) * t1),
            (E6, ke * u1 / (r2 * de) * t1),
        ]),
    );
    m.set(
        1,
        4,
        form(&[(E6, -ke * (la * r2 - 2.0 * u2) / (2.0 * r2 * de) * t1)]),
    );
    m.set(
        1,
        5,
        form(&[
            (E1, -ke / (2.0 * r2) * t2),
            (
                E3,
                ke / (2.0 * r2 * de) * (rho * r2 * t1 + (u2 - la * r2) * t2),
            ),
            (E4, -ke * u1 / (2.0 * r2 * de) * t2),
        ]),
    );
    m.set(
        1,
        6,
        form(&[
            (E2, ke / (2.0 * r2) * t2),
            (E3, -ke * u1 / (2.0 * r2 * de) * t2),
            (
                E4,
                ke / (2.0 * r2 * de) * (rho * r2 * t1 - (u2 - la * r2) * t2),
            ),
        ]),
    );
    m.set(
        3,
        4,
        form(&[
            (E5, -ke * (la * u1 - r2 * y) / de2 * t1),
            (E6, -ke * (uu - la * r2 * u2 + r4 * x) / (r2 * de2) * t1),
        ]),
    );
    m.set(
        3,
        5,
        form(&[
            (E1, -ke * (rho * r2 * t1 - u2 * t2) / (2.0 * r2 * de)),
            (E2, ke * u1 * t2 / (2.0 * r2 * de)),
            (E3, -ke * (uu - la * r2 * u2 + r4 * x) / (2.0 * r2 * de2) * t2),
            (E4, ke * (la * u1 - r2 * y) / (2.0 * de2) * t2),
        ]),
    );
    m.set(
        3,
        6,
        form(&[
            (E1, ke * u1 * t2 / (2.0 * r2 * de)),
            (E2, -ke * (rho * r2 * t1 + u2 * t2) / (2.0 * r2 * de)),
            (E3, ke * (la * u1 - r2 * y) / (2.0 * de2) * t2),
            (E4, ke * (uu - la * r2 * u2 + r4 * x) / (2.0 * r2 * de2) * t2),
        ]),
    );
    m.set(5, 6, Form::zero());
    fill_relations(&mut m);
    ConnectionForms { forms: m }
}

/// Curvature 2-forms of `∇^τ` from the explicit table.
///
/// The nine independent entries are listed scaled by `2 r_e⁴ Δ_e² / k_e²`;
/// the remaining ones follow from the J-commutation relations.
pub fn closed_form_curvature_tau(
    params: &JParams,
    adapted: &AdaptedCoeffs,
    tau: f64,
) -> CurvatureForms {
    let v = TangentVars::new(params, adapted, tau);
    let (rho, la, x, y) = (v.rho, v.la, v.x, v.y);
    let (t, r2, s2, u1, u2, uu, de, de2) = (v.t, v.r2, v.s2, v.u1, v.u2, v.uu, v.de, v.de2);
    let t1 = t - 1.0;
    let t2 = t + 1.0;
    let q = t * t - 2.0 * t + 5.0; // τ² − 2τ + 5
    let p3 = t * t + 3.0; // τ² + 3
    let t3 = t + 3.0;
    let (r4, r6, r8) = (r2 * r2, r2 * r2 * r2, r2 * r2 * r2 * r2);
    let xy = x * x + y * y;
    let scale = v.ke2 / (2.0 * r4 * de2);

    let mut m = FormMatrix::zero();

    let om12 = form(&[
        (E12, -q * de2),
        (E13, q * u1 * de),
        (E24, q * u1 * de),
        (E14, (q * u2 - (rho * t1 * t3 + la * p3) * r2) * de),
        (E23, -(q * u2 + (rho * t1 * t3 - la * p3) * r2) * de),
        (
            E34,
            -(q * uu - 2.0 * la * p3 * u2 * r2 - (rho * t1 * t1 - la * la * t2 * t2 + 4.0 * x * t1) * r4),
        ),
        (E56, -la * t1 * t1 * (la * r2 - 2.0 * u2) * r2),
    ]);

    let om13 = form(&[
        (E12, q * u1 * de),
        (
            E13,
            -(q * u1 * u1
                + 0.5 * (rho * t1 * t1 - 2.0 * la * la * t1 - rho * la * t1 * t3 + x * t2 * t2) * r4),
        ),
        (
            E14,
            -(q * u1 * u2 - (rho * t1 * t3 + la * p3) * u1 * r2 + y / 2.0 * t2 * t2 * r4),
        ),
        (
            E23,
            q * u1 * u2 + (rho * t1 * t3 - la * p3) * u1 * r2 + y / 2.0 * t2 * t2 * r4,
        ),
        (
            E24,
            -(q * u1 * u1
                + 0.5 * (rho * t1 * t1 - 2.0 * la * la * t1 + rho * la * t1 * t3 + x * t2 * t2) * r4),
        ),
        (
            E34,
            (q * uu * u1 - 2.0 * la * p3 * u1 * u2 * r2
                + (la * la * p3 * u1 + x * q * u1 + y * t2 * t2 * u2) * r4
                - la * y * p3 * r6)
                / de,
        ),
        (E56, t1 * t1 * (la * r2 - 2.0 * u2) * (la * u1 - y * r2) * r2 / de),
    ]);

    let om14 = form(&[
        (E12, (q * u2 + 2.0 * la * t1 * r2) * de),
        (
            E13,
            -(q * u1 * u2 + 2.0 * la * t1 * u1 * r2 - y / 2.0 * t2 * t2 * r4),
        ),
        (
            E24,
            -(q * u1 * u2 + 2.0 * la * t1 * u1 * r2 - y / 2.0 * t2 * t2 * r4),
        ),
        (
            E14,
            -(q * u2 * u2 - (rho * t1 * t3 + la * q) * u2 * r2
                + 0.5 * (rho * t1 * t1 - 2.0 * la * la * t1 + rho * la * t1 * t3 + x * t2 * t2) * r4),
        ),
        (
            E23,
            q * u2 * u2 + (rho * t1 * t3 - la * q) * u2 * r2
                + 0.5 * (rho * t1 * t1 - 2.0 * la * la * t1 - rho * la * t1 * t3 + x * t2 * t2) * r4,
        ),
        (
            E34,
            (q * uu * u2 + 2.0 * la * (t1 * u1 * u1 - (t * t - t + 4.0) * u2 * u2) * r2
                + (la * la * p3 * u2 + x * q * u2 - y * t2 * t2 * u1) * r4
                - la * x * p3 * r6)
                / de,
        ),
        (
            E56,
            -t1 * t1 * (2.0 * la * u2 * u2 - (la * s2 + la * la * u2 - 2.0 * y * u1) * r2 + la * x * r4)
                * r2
                / de,
        ),
    ]);

    let om15 = form(&[
        (E15, -la / 2.0 * t1 * (t2 * u2 - rho * t1 * r2) * r2),
        (E16, t1 * (rho * t1 - la / 2.0 * t2) * u1 * r2),
        (E25, -la / 2.0 * t1 * t2 * u1 * r2),
        (
            E26,
            -0.5 * t1 * (2.0 * t2 * s2 + 2.0 * rho * t1 * u2 - la * t2 * u2 - rho * la * t1 * r2) * r2,
        ),
        (E35, la / (2.0 * de) * t1 * t2 * (uu - la * u2 * r2 + x * r4) * r2),
        (
            E36,
            t1 * t2 * (2.0 * u1 * s2 - (la * la * u1 - 2.0 * x * u1 + 2.0 * y * u2) * r2 + la * y * r4)
                * r2
                / (2.0 * de),
        ),
        (E45, -la / (2.0 * de) * t1 * t2 * (la * u1 - y * r2) * r4),
        (
            E46,
            t1 * (2.0 * rho * t1 * uu + t2 * (2.0 * s2 * u2 - la * uu)
                - (2.0 * rho * t1 * s2
                    + t2 * (2.0 * la * s2 - la * la * u2 - 2.0 * x * u2 - 2.0 * y * u1))
                    * r2
                - la * x * t2 * r4)
                * r2
                / (2.0 * de),
        ),
    ]);

    let om16 = form(&[
        (E15, -la / 2.0 * t1 * t2 * u1 * r2),
        (
            E16,
            -0.5 * t1 * (2.0 * t2 * s2 - 2.0 * rho * t1 * u2 - la * t2 * u2 + rho * la * t1 * r2) * r2,
        ),
        (E25, la / 2.0 * t1 * (t2 * u2 + rho * t1 * r2) * r2),
        (E26, t1 * (rho * t1 + la / 2.0 * t2) * u1 * r2),
        (E35, -la / (2.0 * de) * t1 * t2 * (la * u1 - y * r2) * r4),
        (
            E36,
            -t1 * (2.0 * rho * t1 * uu - t2 * (2.0 * s2 * u2 - la * uu)
                - (2.0 * rho * t1 * s2
                    - t2 * (2.0 * la * s2 - la * la * u2 - 2.0 * x * u2 - 2.0 * y * u1))
                    * r2
                + la * x * t2 * r4)
                * r2
                / (2.0 * de),
        ),
        (E45, -la / (2.0 * de) * t1 * t2 * (uu - la * u2 * r2 + x * r4) * r2),
        (
            E46,
            -t1 * t2
                * (2.0 * u1 * s2 - (la * la * u1 - 2.0 * x * u1 + 2.0 * y * u2) * r2 + la * y * r4)
                * r2
                / (2.0 * de),
        ),
    ]);

    let om34 = form(&[
        (
            E12,
            -(q * uu + 4.0 * la * t1 * u2 * r2 - t1 * (rho * t1 + 4.0 * x) * r4),
        ),
        (
            E13,
            (q * uu * u1 + 4.0 * la * t1 * u1 * u2 * r2
                - (2.0 * la * la * t1 * u1 + rho * la * t1 * t3 * u1 - x * q * u1
                    + y * t2 * t2 * u2)
                    * r4
                + y * t1 * (rho * t3 + 2.0 * la) * r6)
                / de,
        ),
        (
            E14,
            (q * uu * u2
                - (rho * t1 * t3 * uu + la * p3 * u1 * u1 + la * (t * t - 4.0 * t + 7.0) * u2 * u2)
                    * r2
                - (2.0 * la * la * t1 * u2 - rho * la * t1 * t3 * u2 - x * q * u2
                    - y * t2 * t2 * u1)
                    * r4
                - x * t1 * (rho * t3 - 2.0 * la) * r6)
                / de,
        ),
        (
            E23,
            -(q * uu * u2
                + (rho * t1 * t3 * uu - la * p3 * u1 * u1 - la * (t * t - 4.0 * t + 7.0) * u2 * u2)
                    * r2
                - (2.0 * la * la * t1 * u2 + rho * la * t1 * t3 * u2 - x * q * u2
                    - y * t2 * t2 * u1)
                    * r4
                + x * t1 * (rho * t3 + 2.0 * la) * r6)
                / de,
        ),
        (
            E24,
            (q * uu * u1 + 4.0 * la * t1 * u1 * u2 * r2
                - (2.0 * la * la * t1 * u1 - rho * la * t1 * t3 * u1 - x * q * u1
                    + y * t2 * t2 * u2)
                    * r4
                - y * t1 * (rho * t3 - 2.0 * la) * r6)
                / de,
        ),
        (
            E34,
            -q * (uu * uu - 2.0 * la * uu * u2 * r2 + (2.0 * x + la * la) * uu * r4
                - 2.0 * la * (x * u2 + y * u1) * r6
                + xy * r8)
                / de2,
        ),
        (E56, la * t1 * t1 * (la * r2 - 2.0 * u2) * r2),
    ]);

    let om35 = form(&[
        (
            E15,
            -t1 * t2
                * (la * (u1 * u1 - u2 * u2) + (la * s2 - 2.0 * y * u1) * r2)
                * r2
                / (2.0 * de),
        ),
        (E16, t1 * t2 * (la * u2 - s2 - x * r2) * u1 * r2 / de),
        (
            E25,
            t1 * (la * u1 - y * r2) * (t2 * u2 + rho * t1 * r2) * r2 / de,
        ),
        (
            E26,
            t1 * (2.0 * rho * t1 * uu + la * t2 * (u1 * u1 - u2 * u2) + 2.0 * t2 * s2 * u2
                - (2.0 * rho * la * t1 * u2 + la * t2 * s2 - 2.0 * x * t2 * u2) * r2
                + 2.0 * rho * x * t1 * r4)
                * r2
                / (2.0 * de),
        ),
        (
            E35,
            -t1 * (la * t2 * uu * u2
                + (rho * la * t1 * uu + la * la * t2 * (u1 * u1 - u2 * u2) - la * t2 * s2 * u2) * r2
                - (rho * la * s2 * t1 - la * t2 * (la * s2 - 4.0 * y * u1)) * r4
                + 2.0 * y * y * t2 * r6)
                * r2
                / (2.0 * de2),
        ),
        (
            E36,
            -t1 * ((2.0 * rho * t1 + la * t2) * uu * u1
                - (2.0 * rho * t1 * s2 * u1
                    - t2 * (la * s2 * u1 - 2.0 * la * la * u1 * u2 - 2.0 * y * uu))
                    * r2
                + 2.0 * la * t2 * (x * u1 + y * u2) * r4
                - 2.0 * x * y * t2 * r6)
                * r2
                / (2.0 * de2),
        ),
        (
            E45,
            -t1 * t2
                * (la * uu * u1 + (la * s2 * u1 - 2.0 * la * la * u1 * u2 - 2.0 * y * uu) * r2
                    + 2.0 * la * (x * u1 + y * u2) * r4
                    - 2.0 * x * y * r6)
                * r2
                / (2.0 * de2),
        ),
        (
            E46,
            -t1 * ((2.0 * rho * t1 * u2 - t2 * (la * u2 - 2.0 * s2)) * uu
                + (rho * la * t1 * s2 + la * t2 * (la * s2 - 4.0 * x * u2)) * r4
                + 2.0 * x * x * t2 * r6
                - (rho * t1 * (la * uu + 2.0 * s2 * u2)
                    + t2 * (3.0 * la * s2 * u2 + la * la * (u1 * u1 - u2 * u2) - 4.0 * x * uu))
                    * r2)
                * r2
                / (2.0 * de2),
        ),
    ]);

    let om36 = form(&[
        (
            E15,
            t1 * (la * u1 - y * r2) * (t2 * u2 - rho * t1 * r2) * r2 / de,
        ),
        (
            E16,
            -t1 * (2.0 * rho * t1 * uu - t2 * (la * (u1 * u1 - u2 * u2) + 2.0 * s2 * u2)
                - (2.0 * rho * la * t1 * u2 - la * t2 * s2 + 2.0 * x * t2 * u2) * r2
                + 2.0 * rho * x * t1 * r4)
                * r2
                / (2.0 * de),
        ),
        (
            E25,
            t1 * t2 * (la * (u1 * u1 - u2 * u2) + (la * s2 - 2.0 * y * u1) * r2) * r2 / (2.0 * de),
        ),
        (E26, -t1 * t2 * (la * u2 - s2 - x * r2) * u1 * r2 / de),
        (
            E35,
            -t1 * t2
                * (la * uu * u1 + (la * s2 * u1 - 2.0 * la * la * u1 * u2 - 2.0 * y * uu) * r2
                    + 2.0 * la * (x * u1 + y * u2) * r4
                    - 2.0 * x * y * r6)
                * r2
                / (2.0 * de2),
        ),
        (
            E36,
            -t1 * ((2.0 * t2 * s2 - (2.0 * rho * t1 + la * t2) * u2) * uu
                - (rho * la * t1 * s2 - la * t2 * (la * s2 - 4.0 * x * u2)) * r4
                + 2.0 * x * x * t2 * r6
                + (rho * t1 * (2.0 * s2 * u2 + la * uu)
                    - t2 * (3.0 * la * s2 * u2 + la * la * (u1 * u1 - u2 * u2) - 4.0 * x * uu))
                    * r2)
                * r2
                / (2.0 * de2),
        ),
        (
            E45,
            t1 * (la * t2 * u2 * uu
                - (rho * la * t1 * uu - la * t2 * (la * (u1 * u1 - u2 * u2) - s2 * u2)) * r2
                + (rho * la * t1 * s2 + la * t2 * (la * s2 - 4.0 * y * u1)) * r4
                + 2.0 * y * y * t2 * r6)
                * r2
                / (2.0 * de2),
        ),
        (
            E46,
            -t1 * ((2.0 * rho * t1 - la * t2) * u1 * uu
                - 2.0 * la * t2 * (x * u1 + y * u2) * r4
                + 2.0 * x * y * t2 * r6
                - (2.0 * rho * t1 * s2 * u1 + la * t2 * s2 * u1
                    - 2.0 * t2 * (la * la * u1 * u2 + y * uu))
                    * r2)
                * r2
                / (2.0 * de2),
        ),
    ]);

    let om56_extra = form(&[
        (E12, -4.0 * t1 * (la * u2 - s2 - x * r2) * r2),
        (
            E13,
            2.0 * t1
                * (2.0 * u1 * (la * u2 - s2) - (rho * la + la * la + 2.0 * x) * u1 * r2
                    + (rho + la) * y * r4)
                * r2
                / de,
        ),
        (
            E14,
            2.0 * t1 * (2.0 * u2 + (rho - la) * r2) * (la * u2 - s2 - x * r2) * r2 / de,
        ),
        (
            E23,
            -2.0 * t1 * (2.0 * u2 - (rho + la) * r2) * (la * u2 - s2 - x * r2) * r2 / de,
        ),
        (
            E24,
            2.0 * t1
                * (2.0 * u1 * (la * u2 - s2) + (rho * la - la * la - 2.0 * x) * u1 * r2
                    - (rho - la) * y * r4)
                * r2
                / de,
        ),
        (
            E34,
            -4.0 * t1
                * ((la * u2 - s2) * uu + (la * u2 * s2 - la * la * uu - x * uu) * r2
                    + (2.0 * la * (x * u2 + y * u1) - x * s2) * r4
                    - xy * r6)
                * r2
                / de2,
        ),
    ]);
    let om56 = om56_extra - om12.clone() - om34.clone();

    m.set(1, 2, om12.scale_re(scale));
    m.set(1, 3, om13.scale_re(scale));
    m.set(1, 4, om14.scale_re(scale));
    m.set(1, 5, om15.scale_re(scale));
    m.set(1, 6, om16.scale_re(scale));
    m.set(3, 4, om34.scale_re(scale));
    m.set(3, 5, om35.scale_re(scale));
    m.set(3, 6, om36.scale_re(scale));
    m.set(5, 6, om56.scale_re(scale));
    fill_relations(&mut m);
    CurvatureForms { forms: m }
}

/// Trace coefficient `C` with `Tr(Ω^τ ∧ Ω^τ) = C ζ^{12 1̄ 2̄}`.
pub fn closed_form_trace_tau(params: &JParams, adapted: &AdaptedCoeffs, tau: f64) -> f64 {
    let v = TangentVars::new(params, adapted, tau);
    let (rho, la, x, y) = (v.rho, v.la, v.x, v.y);
    let (t, r2, s2, u1, u2, uu) = (v.t, v.r2, v.s2, v.u1, v.u2, v.uu);
    let s4 = s2 * s2;
    let xy = x * x + y * y;

    // the bracket that repeats in the first and second blocks
    let a0 = s4 - 2.0 * la * s2 * u2 + 2.0 * x * uu;
    let b0 = la * s2 - 2.0 * u2 * x - 2.0 * u1 * y;

    let block1 = (rho - la * la + 5.0 * x) * a0
        - 3.0 * la * la * x * (u1 * u1 - u2 * u2)
        - 6.0 * la * u1 * y * (s2 - la * u2)
        + 6.0 * y * y * uu
        + t * (rho + la * la - 2.0 * x) * a0
        + t * t
            * ((-2.0 * rho + x) * a0 - la * la * x * (u1 * u1 - u2 * u2)
                - 2.0 * la * u1 * y * (s2 - la * u2)
                + 2.0 * y * y * uu);

    let block2 = (rho - la * la + 2.0 * x) * b0 - 6.0 * u2 * xy
        + t * (rho + la * la - 2.0 * x) * b0
        + t * t * (-2.0 * rho * b0 - 2.0 * u2 * xy);

    let block3 = (rho - la * la + 5.0 * x)
        + t * (rho + la * la - 2.0 * x)
        + t * t * (-2.0 * rho + x);

    let braces = block1 + r2 * la * block2 + r2 * r2 * xy * block3;
    -(tau - 1.0) * v.ke2 * v.ke2 / (2.0 * v.de2 * v.de2) * braces
}

/// Bundle connection 1-forms `σ^κ` from the explicit λ=0 table.
pub fn closed_form_bundle_connection_kappa(
    params: &JParams,
    omega: &MetricCoeffs,
    h: &BundleMetricCoeffs,
    kappa: f64,
) -> Result<ConnectionForms> {
    check_bundle_gate(params, omega)?;
    let (rho, x, y) = (params.rho_f(), params.x, params.y);
    let k = omega.k2.sqrt();
    let r = omega.r2.sqrt();
    let s = omega.s2.sqrt();
    let (tr2, ts2, tk2) = (h.tr2, h.ts2, h.tk2);
    let k1 = kappa - 1.0;
    let k2p = kappa + 1.0;

    let mut m = FormMatrix::zero();
    m.set(1, 2, form(&[(E6, -tk2 / (k * tr2) * k1)]));
    m.set(1, 3, Form::zero());
    m.set(1, 4, Form::zero());
    m.set(
        1,
        5,
        form(&[
            (E1, -tk2 / (2.0 * k * tr2) * k2p),
            (E3, r * tk2 / (2.0 * s * k * tr2) * rho * k1),
        ]),
    );
    m.set(
        1,
        6,
        form(&[
            (E2, tk2 / (2.0 * k * tr2) * k2p),
            (E4, r * tk2 / (2.0 * s * k * tr2) * rho * k1),
        ]),
    );
    m.set(
        3,
        4,
        form(&[
            (E5, tk2 / (k * ts2) * y * k1),
            (E6, -tk2 / (k * ts2) * x * k1),
        ]),
    );
    m.set(
        3,
        5,
        form(&[
            (E1, -s * tk2 / (2.0 * r * k * ts2) * rho * k1),
            (E3, -tk2 / (2.0 * k * ts2) * x * k2p),
            (E4, -tk2 / (2.0 * k * ts2) * y * k2p),
        ]),
    );
    m.set(
        3,
        6,
        form(&[
            (E2, -s * tk2 / (2.0 * r * k * ts2) * rho * k1),
            (E3, -tk2 / (2.0 * k * ts2) * y * k2p),
            (E4, tk2 / (2.0 * k * ts2) * x * k2p),
        ]),
    );
    m.set(5, 6, Form::zero());
    fill_relations(&mut m);
    Ok(ConnectionForms { forms: m })
}

/// Bundle curvature 2-forms `A^κ` from the explicit λ=0 table.
pub fn bundle_curvature_closed_form(
    params: &JParams,
    omega: &MetricCoeffs,
    h: &BundleMetricCoeffs,
    kappa: f64,
) -> Result<CurvatureForms> {
    check_bundle_gate(params, omega)?;
    let (rho, x, y) = (params.rho_f(), params.x, params.y);
    let (r2, s2, k2) = (omega.r2, omega.s2, omega.k2);
    let r = r2.sqrt();
    let s = s2.sqrt();
    let (tr2, ts2, tk2) = (h.tr2, h.ts2, h.tk2);
    let (tr4, ts4, tk4) = (tr2 * tr2, ts2 * ts2, tk2 * tk2);
    let k1 = kappa - 1.0;
    let k2p = kappa + 1.0;
    let xy = x * x + y * y;

    let mut m = FormMatrix::zero();

    m.set(
        1,
        2,
        form(&[
            (
                E12,
                (4.0 * k1 * k2 * tr2 * tk2 - k2p * k2p * r2 * tk4) / (2.0 * r2 * k2 * tr4),
            ),
            (
                E14,
                -rho * k1 * (k2p * r2 * tk2 + 2.0 * k2 * tr2) * tk2 / (2.0 * r * s * k2 * tr4),
            ),
            (
                E23,
                -rho * k1 * (k2p * r2 * tk2 + 2.0 * k2 * tr2) * tk2 / (2.0 * r * s * k2 * tr4),
            ),
            (
                E34,
                k1 * (rho * k1 * r2 * tk2 + 4.0 * x * k2 * tr2) * tk2 / (2.0 * s2 * k2 * tr4),
            ),
        ]),
    );
    let a13_sym = -(rho * k1 * k1 + x * k2p * k2p) * tk4 / (4.0 * k2 * tr2 * ts2);
    let a13_asym = -y * k2p * k2p * tk4 / (4.0 * k2 * tr2 * ts2);
    m.set(
        1,
        3,
        form(&[(E13, a13_sym), (E24, a13_sym), (E14, a13_asym), (E23, -a13_asym)]),
    );
    m.set(
        1,
        4,
        form(&[(E13, -a13_asym), (E24, -a13_asym), (E14, a13_sym), (E23, -a13_sym)]),
    );
    m.set(
        1,
        5,
        form(&[
            (E26, -k1 * k2p * tk4 / (2.0 * k2 * tr4)),
            (E46, -rho * k1 * k1 * r * tk4 / (2.0 * s * k2 * tr4)),
        ]),
    );
    m.set(
        1,
        6,
        form(&[
            (E16, -k1 * k2p * tk4 / (2.0 * k2 * tr4)),
            (E36, rho * k1 * k1 * r * tk4 / (2.0 * s * k2 * tr4)),
        ]),
    );
    m.set(
        3,
        4,
        form(&[
            (
                E12,
                k1 * (rho * k1 * s2 * tk2 + 4.0 * x * k2 * ts2) * tk2 / (2.0 * r2 * k2 * ts4),
            ),
            (
                E13,
                rho * y * k1 * (k2p * s2 * tk2 + 2.0 * k2 * ts2) * tk2 / (2.0 * r * s * k2 * ts4),
            ),
            (
                E24,
                -rho * y * k1 * (k2p * s2 * tk2 + 2.0 * k2 * ts2) * tk2 / (2.0 * r * s * k2 * ts4),
            ),
            (
                E14,
                -rho * x * k1 * (k2p * s2 * tk2 + 2.0 * k2 * ts2) * tk2 / (2.0 * r * s * k2 * ts4),
            ),
            (
                E23,
                -rho * x * k1 * (k2p * s2 * tk2 + 2.0 * k2 * ts2) * tk2 / (2.0 * r * s * k2 * ts4),
            ),
            (
                E34,
                xy * (4.0 * k1 * k2 * ts2 - k2p * k2p * s2 * tk2) * tk2 / (2.0 * s2 * k2 * ts4),
            ),
        ]),
    );
    let rho_part35 = rho * k1 * k1 * s * tk4 / (2.0 * r * k2 * ts4);
    let mix35 = k1 * k2p * tk4 / (2.0 * k2 * ts4);
    m.set(
        3,
        5,
        form(&[
            (E25, -rho_part35 * y),
            (E26, rho_part35 * x),
            (E35, -mix35 * y * y),
            (E36, mix35 * x * y),
            (E45, mix35 * x * y),
            (E46, -mix35 * x * x),
        ]),
    );
    m.set(
        3,
        6,
        form(&[
            (E15, rho_part35 * y),
            (E16, -rho_part35 * x),
            (E35, mix35 * x * y),
            (E46, -mix35 * x * y),
            (E36, -mix35 * x * x),
            (E45, mix35 * y * y),
        ]),
    );
    m.set(
        5,
        6,
        form(&[
            (
                E12,
                -(rho * k1 * k1 * s2 * tr4 - k2p * k2p * r2 * ts4) * tk4
                    / (2.0 * r2 * k2 * tr4 * ts4),
            ),
            (E13, -rho * y * k1 * k2p * s * tk4 / (2.0 * r * k2 * ts4)),
            (E24, rho * y * k1 * k2p * s * tk4 / (2.0 * r * k2 * ts4)),
            (
                E14,
                rho * k1 * k2p * (r2 * ts4 + x * s2 * tr4) * tk4 / (2.0 * r * s * k2 * tr4 * ts4),
            ),
            (
                E23,
                rho * k1 * k2p * (r2 * ts4 + x * s2 * tr4) * tk4 / (2.0 * r * s * k2 * tr4 * ts4),
            ),
            (
                E34,
                -(rho * k1 * k1 * r2 * ts4 - xy * k2p * k2p * s2 * tr4) * tk4
                    / (2.0 * s2 * k2 * tr4 * ts4),
            ),
        ]),
    );
    fill_relations(&mut m);
    Ok(CurvatureForms { forms: m })
}

/// Trace coefficient `C` with `Tr(A^κ ∧ A^κ) = C ζ^{12 1̄ 2̄}` (λ = 0, diagonal).
pub fn closed_form_trace_kappa(
    params: &JParams,
    omega: &MetricCoeffs,
    h: &BundleMetricCoeffs,
    kappa: f64,
) -> Result<f64> {
    check_bundle_gate(params, omega)?;
    let (rho, x, y) = (params.rho_f(), params.x, params.y);
    let (r2, s2, k2) = (omega.r2, omega.s2, omega.k2);
    let (tr2, ts2, tk2) = (h.tr2, h.ts2, h.tk2);
    let (tr4, ts4) = (tr2 * tr2, ts2 * ts2);
    let tr6 = tr4 * tr2;
    let ts6 = ts4 * ts2;
    let tk4 = tk2 * tk2;
    let k1 = kappa - 1.0;
    let k2p = kappa + 1.0;
    let xy = x * x + y * y;

    let braces = rho
        * k1
        * ((2.0 * kappa * r2 * tk2 + k2 * tr2) * ts6 + xy * (2.0 * kappa * s2 * tk2 + k2 * ts2) * tr6)
        + 4.0 * x * k1 * (xy * tr4 + ts4) * k2 * tr2 * ts2
        - x * k2p * k2p * (xy * s2 * tr6 + r2 * ts6) * tk2;
    Ok(k1 * tk4 / (2.0 * k2 * tr6 * ts6) * braces)
}
