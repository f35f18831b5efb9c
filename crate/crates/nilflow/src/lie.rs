//! The family of 6-dimensional 2-step nilpotent Lie algebras under study.
//!
//! A complex structure in the family is pinned by four coefficients
//! ([`JParams`]): the only non-trivial structure equation of the (1,0)-coframe
//! is
//!
//! ```text
//! dζ³ = ρ ζ^{12} + ζ^{1 1̄} + λ ζ^{1 2̄} + (x + iy) ζ^{2 2̄},   dζ¹ = dζ² = 0,
//! ```
//!
//! with `λ ≥ 0` and `ρ ∈ {0, 1}`. Real structure constants of the adapted
//! coframe, algebraic sanity checks (Jacobi, 2-step nilpotency, first Betti
//! number) and the λ=0 group catalog live here.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::GeometryError;
use crate::exterior::{d, Differential, Form, DIM};
use crate::hermitian::AdaptedCoeffs;
use crate::Result;

/// Coefficients `(ρ, λ, x, y)` of the complex structure equations.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct JParams {
    /// ρ ∈ {0, 1}.
    pub rho: u8,
    /// λ ≥ 0.
    pub lambda: f64,
    /// Real part of the `ζ^{2 2̄}` coefficient.
    pub x: f64,
    /// Imaginary part of the `ζ^{2 2̄}` coefficient.
    pub y: f64,
}

impl JParams {
    /// Validates `ρ ∈ {0,1}` and `λ ≥ 0`.
    pub fn new(rho: u8, lambda: f64, x: f64, y: f64) -> Result<Self> {
        if rho > 1 {
            return Err(GeometryError::InvalidArgument(format!(
                "rho must be 0 or 1, got {rho}"
            )));
        }
        if !(lambda >= 0.0) || !lambda.is_finite() || !x.is_finite() || !y.is_finite() {
            return Err(GeometryError::InvalidArgument(format!(
                "lambda must be finite and >= 0 (got {lambda}), x and y finite"
            )));
        }
        Ok(JParams { rho, lambda, x, y })
    }

    /// ρ as a real number.
    pub fn rho_f(&self) -> f64 {
        self.rho as f64
    }
}

/// Real structure constants `c^k_{ij}` with `de^k = Σ_{i<j} c^k_{ij} e^{ij}`.
///
/// Stored dense over the fixed dimension, antisymmetric in the lower indices.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstants {
    c: [[[f64; DIM]; DIM]; DIM],
}

impl Default for StructureConstants {
    fn default() -> Self {
        StructureConstants::zero()
    }
}

impl StructureConstants {
    /// The abelian algebra.
    pub fn zero() -> Self {
        StructureConstants {
            c: [[[0.0; DIM]; DIM]; DIM],
        }
    }

    /// Sets `c^k_{ij} = v` and `c^k_{ji} = -v` (1-based indices).
    pub fn set(&mut self, k: usize, i: usize, j: usize, v: f64) {
        self.c[k - 1][i - 1][j - 1] = v;
        self.c[k - 1][j - 1][i - 1] = -v;
    }

    /// `c^k_{ij}` with 1-based indices.
    pub fn get(&self, k: usize, i: usize, j: usize) -> f64 {
        self.c[k - 1][i - 1][j - 1]
    }

    /// Largest constant magnitude.
    pub fn max_abs(&self) -> f64 {
        self.c
            .iter()
            .flatten()
            .flatten()
            .fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// The associated Chevalley–Eilenberg differential.
    pub fn differential(&self) -> Differential {
        Differential::from_structure_constants(self)
    }
}

/// Groups of the catalog; `Unknown` when no parameter mapping is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupId {
    N2,
    N3,
    N4,
    N5,
    N6,
    N8,
    Unknown,
}

impl std::fmt::Display for GroupId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            GroupId::N2 => "N2",
            GroupId::N3 => "N3",
            GroupId::N4 => "N4",
            GroupId::N5 => "N5",
            GroupId::N6 => "N6",
            GroupId::N8 => "N8",
            GroupId::Unknown => "Unknown",
        };
        f.write_str(s)
    }
}

/// The complex structure equations as ζ-coframe differential data.
#[derive(Clone, Debug)]
pub struct ComplexStructureEquations {
    d_zeta3: Form,
}

impl ComplexStructureEquations {
    /// `dζ³` over the ζ-coframe (masks: bits 0–2 are ζ¹..ζ³, 3–5 conjugates).
    pub fn d_zeta3(&self) -> &Form {
        &self.d_zeta3
    }

    /// The full differential, with `dζ̄³` the conjugate of `dζ³`.
    pub fn differential(&self) -> Differential {
        let mut d_basis: [Form; DIM] = Default::default();
        d_basis[2] = self.d_zeta3.clone();
        d_basis[5] = self.d_zeta3.conjugate_zeta();
        Differential::new(d_basis)
    }
}

/// Structure equations `dζ¹ = dζ² = 0`, `dζ³ = ρζ^{12} + ζ^{1 1̄} + λζ^{1 2̄} + (x+iy)ζ^{2 2̄}`.
pub fn complex_structure_equations(params: &JParams) -> ComplexStructureEquations {
    let mut d_zeta3 = Form::zero();
    // masks over the ζ-coframe: ζ¹=bit0, ζ²=bit1, ζ³=bit2, ζ^1̄=bit3, ζ^2̄=bit4
    d_zeta3.add_coeff(0b000011, Complex64::new(params.rho_f(), 0.0)); // ζ^{12}
    d_zeta3.add_coeff(0b001001, Complex64::new(1.0, 0.0)); // ζ^{1 1̄}
    d_zeta3.add_coeff(0b010001, Complex64::new(params.lambda, 0.0)); // ζ^{1 2̄}
    d_zeta3.add_coeff(0b010010, Complex64::new(params.x, params.y)); // ζ^{2 2̄}
    ComplexStructureEquations { d_zeta3 }
}

/// Structure constants of the adapted coframe for `(J, ω)`.
///
/// `de¹ = .. = de⁴ = 0` and `de⁵, de⁶` carry the whole algebra; coefficients
/// are rational in the adapted metric coefficients.
pub fn real_structure_constants(
    params: &JParams,
    adapted: &AdaptedCoeffs,
) -> Result<StructureConstants> {
    if !(adapted.delta_e > 0.0) {
        return Err(GeometryError::NotPositiveDefinite(format!(
            "Δ_e must be positive, got {}",
            adapted.delta_e
        )));
    }
    let rho = params.rho_f();
    let la = params.lambda;
    let (x, y) = (params.x, params.y);
    let r2 = adapted.r_e2;
    let (u1, u2) = (adapted.u_e.re, adapted.u_e.im);
    let ke = adapted.k_e2.sqrt();
    let de = adapted.delta_e;
    let de2 = de * de;

    let mut sc = StructureConstants::zero();
    sc.set(5, 1, 3, ke / de * (rho + la));
    sc.set(5, 2, 4, -ke / de * (rho - la));
    sc.set(5, 3, 4, 2.0 * ke / de2 * (r2 * y - la * u1));

    sc.set(6, 1, 2, -2.0 * ke / r2);
    sc.set(6, 1, 3, 2.0 * ke * u1 / (r2 * de));
    sc.set(6, 1, 4, ke / (r2 * de) * (r2 * (rho - la) + 2.0 * u2));
    sc.set(6, 2, 3, ke / (r2 * de) * (r2 * (rho + la) - 2.0 * u2));
    sc.set(6, 2, 4, 2.0 * ke * u1 / (r2 * de));
    sc.set(
        6,
        3,
        4,
        -2.0 * ke / (r2 * de2) * (r2 * r2 * x - la * r2 * u2 + u1 * u1 + u2 * u2),
    );
    Ok(sc)
}

/// Nilpotency and cohomology report for a set of structure constants.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NilpotencyReport {
    /// `d∘d = 0` on every generator.
    pub jacobi_ok: bool,
    /// `[g,[g,g]] = 0` through the constants.
    pub two_step: bool,
    /// First Betti number: closed 1-forms, `6 - rank(d|Λ¹)`.
    pub b1: usize,
}

/// Checks Jacobi (via the exterior differential), 2-step nilpotency and b₁.
pub fn check_nilpotency(sc: &StructureConstants) -> NilpotencyReport {
    let scale = 1.0 + sc.max_abs().powi(2);
    let jacobi_ok = (1..=DIM).all(|k| {
        let dde = d(&d(&Form::generator(k), sc), sc);
        dde.is_zero(1e-12 * scale)
    });

    // [e_i,e_j] = -Σ_k c^k_{ij} e_k; two-step iff Σ_k c^k_{ij} c^m_{kl} = 0.
    let mut two_step = true;
    'outer: for i in 1..=DIM {
        for j in 1..=DIM {
            for l in 1..=DIM {
                for m in 1..=DIM {
                    let s: f64 = (1..=DIM).map(|k| sc.get(k, i, j) * sc.get(m, k, l)).sum();
                    if s.abs() > 1e-12 * scale {
                        two_step = false;
                        break 'outer;
                    }
                }
            }
        }
    }

    // rank of d on 1-forms: 6 columns over the 15 basis 2-forms
    let mut cols: Vec<[f64; 15]> = Vec::with_capacity(DIM);
    for k in 1..=DIM {
        let dk = d(&Form::generator(k), sc);
        let mut col = [0.0; 15];
        let mut idx = 0;
        for i in 0..DIM {
            for j in (i + 1)..DIM {
                col[idx] = dk.coeff(((1 << i) | (1 << j)) as u8).re;
                idx += 1;
            }
        }
        cols.push(col);
    }
    let rank = real_rank(&mut cols, 1e-9 * (1.0 + sc.max_abs()));
    NilpotencyReport {
        jacobi_ok,
        two_step,
        b1: DIM - rank,
    }
}

fn real_rank(cols: &mut [[f64; 15]], tol: f64) -> usize {
    let mut rank = 0;
    let mut row = 0;
    while row < 15 && rank < cols.len() {
        let pivot = (rank..cols.len()).max_by(|&a, &b| {
            cols[a][row]
                .abs()
                .partial_cmp(&cols[b][row].abs())
                .unwrap()
        });
        let pivot = match pivot {
            Some(p) if cols[p][row].abs() > tol => p,
            _ => {
                row += 1;
                continue;
            }
        };
        cols.swap(rank, pivot);
        for c in (rank + 1)..cols.len() {
            let f = cols[c][row] / cols[rank][row];
            for r in row..15 {
                cols[c][r] -= f * cols[rank][r];
            }
        }
        rank += 1;
        row += 1;
    }
    rank
}

/// Group of the λ=0 catalog reached by the parameters; `Unknown` otherwise.
///
/// The catalog covers λ = 0 only; N4 and N6 have no known parameter
/// mapping within this family and are never returned.
pub fn classify_group(params: &JParams) -> GroupId {
    if params.lambda != 0.0 {
        return GroupId::Unknown;
    }
    let (x, y) = (params.x, params.y);
    if params.rho == 0 {
        if y != 0.0 {
            GroupId::N2
        } else if x != 0.0 {
            GroupId::N3
        } else {
            GroupId::N8
        }
    } else if 1.0 + 4.0 * x > 4.0 * y * y {
        GroupId::N5
    } else {
        GroupId::Unknown
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::AdaptedCoeffs;
    use num_complex::Complex64 as C;

    fn diag_adapted() -> AdaptedCoeffs {
        AdaptedCoeffs::diagonal(1.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn structure_equation_coefficients() {
        // (ρ=0, λ=0, x=−1, y=0): dζ³ = ζ^{1 1̄} − ζ^{2 2̄}
        let p = JParams::new(0, 0.0, -1.0, 0.0).unwrap();
        let eq = complex_structure_equations(&p);
        assert_eq!(eq.d_zeta3().coeff(0b001001), C::new(1.0, 0.0));
        assert_eq!(eq.d_zeta3().coeff(0b010010), C::new(-1.0, 0.0));
        assert_eq!(eq.d_zeta3().coeff(0b000011), C::new(0.0, 0.0));

        // (ρ=0, λ=0, x=0, y=0): dζ³ = ζ^{1 1̄}
        let p = JParams::new(0, 0.0, 0.0, 0.0).unwrap();
        let eq = complex_structure_equations(&p);
        assert_eq!(eq.d_zeta3().coeff(0b001001), C::new(1.0, 0.0));
        assert_eq!(eq.d_zeta3().coeff(0b010010), C::new(0.0, 0.0));

        // (ρ=1, λ=0, x=0, y=1): dζ³ = ζ^{12} + ζ^{1 1̄} + i ζ^{2 2̄}
        let p = JParams::new(1, 0.0, 0.0, 1.0).unwrap();
        let eq = complex_structure_equations(&p);
        assert_eq!(eq.d_zeta3().coeff(0b000011), C::new(1.0, 0.0));
        assert_eq!(eq.d_zeta3().coeff(0b010010), C::new(0.0, 1.0));
    }

    #[test]
    fn real_constants_on_the_n3_diagonal() {
        let p = JParams::new(0, 0.0, -1.0, 0.0).unwrap();
        let sc = real_structure_constants(&p, &diag_adapted()).unwrap();
        let de5 = d(&Form::generator(5), &sc);
        assert!(de5.is_zero(0.0));
        let de6 = d(&Form::generator(6), &sc);
        assert_eq!(de6.coeff(0b000011), C::new(-2.0, 0.0));
        assert_eq!(de6.coeff(0b001100), C::new(2.0, 0.0));
    }

    #[test]
    fn real_constants_on_the_rho1_diagonal() {
        let p = JParams::new(1, 0.0, 0.0, 0.0).unwrap();
        let sc = real_structure_constants(&p, &diag_adapted()).unwrap();
        let de5 = d(&Form::generator(5), &sc);
        assert_eq!(de5.coeff(0b000101), C::new(1.0, 0.0)); // e^{13}
        assert_eq!(de5.coeff(0b001010), C::new(-1.0, 0.0)); // e^{24}
        let de6 = d(&Form::generator(6), &sc);
        assert_eq!(de6.coeff(0b000011), C::new(-2.0, 0.0)); // e^{12}
        assert_eq!(de6.coeff(0b001001), C::new(1.0, 0.0)); // e^{14}
        assert_eq!(de6.coeff(0b000110), C::new(1.0, 0.0)); // e^{23}
    }

    #[test]
    fn de5_e34_coefficient_is_twice_y() {
        for y in [-1.3, 0.4, 2.0] {
            let p = JParams::new(0, 0.0, 0.7, y).unwrap();
            let sc = real_structure_constants(&p, &diag_adapted()).unwrap();
            assert!((sc.get(5, 3, 4) - 2.0 * y).abs() < 1e-14);
        }
    }

    #[test]
    fn nilpotency_of_generic_catalog_constants() {
        let p = JParams::new(1, 0.5, 0.3, 0.7).unwrap();
        let a = AdaptedCoeffs::new(1.2, 0.9, 1.1, C::new(0.2, -0.3)).unwrap();
        let sc = real_structure_constants(&p, &a).unwrap();
        let rep = check_nilpotency(&sc);
        assert!(rep.jacobi_ok);
        assert!(rep.two_step);
        assert_eq!(rep.b1, 4);
    }

    #[test]
    fn b1_of_degenerate_cases() {
        let rep = check_nilpotency(&StructureConstants::zero());
        assert_eq!(rep.b1, 6);
        assert!(rep.jacobi_ok && rep.two_step);

        let mut sc = StructureConstants::zero();
        sc.set(5, 1, 2, 1.0);
        let rep = check_nilpotency(&sc);
        assert_eq!(rep.b1, 5);
    }

    #[test]
    fn group_catalog() {
        let n3 = JParams::new(0, 0.0, -1.0, 0.0).unwrap();
        assert_eq!(classify_group(&n3), GroupId::N3);
        let n8 = JParams::new(0, 0.0, 0.0, 0.0).unwrap();
        assert_eq!(classify_group(&n8), GroupId::N8);
        let n5 = JParams::new(1, 0.0, 0.0, 0.0).unwrap();
        assert_eq!(classify_group(&n5), GroupId::N5);
        let n2 = JParams::new(0, 0.0, 0.5, 1.0).unwrap();
        assert_eq!(classify_group(&n2), GroupId::N2);
        let unk = JParams::new(0, 1.0, 0.5, 1.0).unwrap();
        assert_eq!(classify_group(&unk), GroupId::Unknown);
        let outside = JParams::new(1, 0.0, -1.0, 0.0).unwrap();
        assert_eq!(classify_group(&outside), GroupId::Unknown);
    }
}
