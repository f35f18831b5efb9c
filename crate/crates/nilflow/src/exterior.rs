//! Complex-coefficient exterior algebra on a fixed 6-dimensional space.
//!
//! A [`Form`] stores one complex coefficient per strictly increasing
//! multi-index over `{1..6}`, encoded as a 6-bit mask (bit `i` set means the
//! coframe element `i+1` appears). Mixed degrees may coexist in one value;
//! every operation acts per degree. The same storage is used for two coframe
//! interpretations:
//!
//! * the real adapted coframe `e^1..e^6`, with real structure constants, and
//! * the complex coframe `ζ^1, ζ^2, ζ^3, ζ^{1̄}, ζ^{2̄}, ζ^{3̄}` (indices
//!   1–3 holomorphic, 4–6 conjugate), where the (p,q) bidegree of a monomial
//!   is read off the mask.
//!
//! [`ComplexFrame`] carries the linear relations between the two and the
//! action of the complex structure on 1-forms.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::GeometryError;
use crate::lie::StructureConstants;
use crate::tol;
use crate::Result;

/// Dimension of the underlying space.
pub const DIM: usize = 6;

/// Number of exterior-algebra basis monomials (6-bit masks).
pub const BASIS: usize = 1 << DIM;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A left-invariant differential form with complex coefficients.
#[derive(Clone, PartialEq)]
pub struct Form {
    coeffs: [Complex64; BASIS],
}

impl Default for Form {
    fn default() -> Self {
        Form::zero()
    }
}

impl std::fmt::Debug for Form {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for mask in 0..BASIS as u8 {
            let c = self.coeff(mask);
            if c != ZERO {
                if !first {
                    write!(f, " + ")?;
                }
                write!(f, "({:.6}{:+.6}i)·{}", c.re, c.im, mask_label(mask))?;
                first = false;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Renders a mask as `e{indices}` for debugging output.
pub fn mask_label(mask: u8) -> String {
    if mask == 0 {
        return "1".to_string();
    }
    let digits: String = (0..DIM)
        .filter(|i| mask & (1 << i) != 0)
        .map(|i| char::from(b'1' + i as u8))
        .collect();
    format!("e{digits}")
}

/// Sign of merging two disjoint increasing index sets, by transposition count.
fn merge_sign(a: u8, b: u8) -> f64 {
    let mut swaps = 0u32;
    for i in 0..DIM as u8 {
        if b & (1 << i) != 0 {
            swaps += (a >> (i + 1)).count_ones();
        }
    }
    if swaps % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

impl Form {
    /// The zero form.
    pub fn zero() -> Self {
        Form {
            coeffs: [ZERO; BASIS],
        }
    }

    /// The constant scalar `1`.
    pub fn one() -> Self {
        Form::scalar(Complex64::new(1.0, 0.0))
    }

    /// A constant scalar.
    pub fn scalar(c: Complex64) -> Self {
        let mut f = Form::zero();
        f.coeffs[0] = c;
        f
    }

    /// The basis monomial for a mask, e.g. `0b000011` for `e^{12}`.
    pub fn basis(mask: u8) -> Self {
        let mut f = Form::zero();
        f.coeffs[mask as usize] = Complex64::new(1.0, 0.0);
        f
    }

    /// Basis 1-form `e^i` with 1-based index.
    pub fn generator(i: usize) -> Self {
        assert!((1..=DIM).contains(&i));
        Form::basis(1 << (i - 1))
    }

    /// Monomial from 1-based indices; sign follows the given order.
    pub fn monomial(indices: &[usize], c: Complex64) -> Self {
        let mut f = Form::scalar(c);
        for &i in indices {
            f = f.wedge(&Form::generator(i));
        }
        f
    }

    /// Coefficient at a mask.
    pub fn coeff(&self, mask: u8) -> Complex64 {
        self.coeffs[mask as usize]
    }

    /// Sets the coefficient at a mask.
    pub fn set_coeff(&mut self, mask: u8, c: Complex64) {
        self.coeffs[mask as usize] = c;
    }

    /// Adds to the coefficient at a mask.
    pub fn add_coeff(&mut self, mask: u8, c: Complex64) {
        self.coeffs[mask as usize] += c;
    }

    /// Iterator over the non-zero `(mask, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (u8, Complex64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != ZERO)
            .map(|(m, c)| (m as u8, *c))
    }

    /// Largest coefficient magnitude.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// True when every coefficient is at most `tol` in magnitude.
    pub fn is_zero(&self, tol: f64) -> bool {
        self.max_abs() <= tol
    }

    /// Coefficient-wise comparison with an absolute tolerance.
    pub fn approx_eq(&self, other: &Form, tol: f64) -> bool {
        self.coeffs
            .iter()
            .zip(other.coeffs.iter())
            .all(|(a, b)| (a - b).norm() <= tol)
    }

    /// The part of the form of the given degree.
    pub fn degree_part(&self, degree: u32) -> Form {
        let mut out = Form::zero();
        for (mask, c) in self.terms() {
            if mask.count_ones() == degree {
                out.coeffs[mask as usize] = c;
            }
        }
        out
    }

    /// Degrees present with non-negligible coefficients.
    pub fn degrees(&self, tol: f64) -> Vec<u32> {
        let mut ds: Vec<u32> = self
            .terms()
            .filter(|(_, c)| c.norm() > tol)
            .map(|(m, _)| m.count_ones())
            .collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// Exterior product.
    pub fn wedge(&self, other: &Form) -> Form {
        let mut out = Form::zero();
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                if ma & mb != 0 {
                    continue;
                }
                out.coeffs[(ma | mb) as usize] += ca * cb * merge_sign(ma, mb);
            }
        }
        out
    }

    /// Scales by a complex constant.
    pub fn scale(&self, c: Complex64) -> Form {
        let mut out = self.clone();
        for v in out.coeffs.iter_mut() {
            *v *= c;
        }
        out
    }

    /// Scales by a real constant.
    pub fn scale_re(&self, c: f64) -> Form {
        self.scale(Complex64::new(c, 0.0))
    }

    /// Evaluates a k-form on k basis vectors given by 1-based indices.
    ///
    /// Uses the determinant convention `e^{i1..ik}(e_{i1},..,e_{ik}) = 1`.
    pub fn eval_basis(&self, indices: &[usize]) -> Complex64 {
        let mut mask = 0u8;
        let mut sign = 1.0;
        let mut order: Vec<usize> = Vec::with_capacity(indices.len());
        for &i in indices {
            let bit = 1u8 << (i - 1);
            if mask & bit != 0 {
                return ZERO;
            }
            // count inversions as we insert
            let pos = order.iter().filter(|&&j| j > i).count();
            if pos % 2 == 1 {
                sign = -sign;
            }
            order.push(i);
            mask |= bit;
        }
        self.coeff(mask) * sign
    }

    /// Substitutes each generator `e^i ↦ rows[i-1]` and expands.
    ///
    /// `rows[i-1]` must be a 1-form; this is the pullback under the linear
    /// coframe change it encodes.
    pub fn substitute(&self, rows: &[Form; DIM]) -> Form {
        let mut out = Form::zero();
        for (mask, c) in self.terms() {
            let mut term = Form::scalar(c);
            for i in 0..DIM {
                if mask & (1 << i) != 0 {
                    term = term.wedge(&rows[i]);
                }
            }
            out += term;
        }
        out
    }

    /// Complex conjugate in the ζ-coframe interpretation.
    ///
    /// Conjugates coefficients and swaps each holomorphic index `i` (bits
    /// 0..2) with its conjugate `ī` (bits 3..5), tracking the reordering sign.
    pub fn conjugate_zeta(&self) -> Form {
        let mut out = Form::zero();
        for (mask, c) in self.terms() {
            // list the conjugated indices in the order of the original ones
            let mut new_indices: Vec<usize> = Vec::with_capacity(6);
            for i in 0..DIM {
                if mask & (1 << i) != 0 {
                    new_indices.push(if i < 3 { i + 4 } else { i - 2 });
                }
            }
            let mut term = Form::scalar(c.conj());
            for &i in &new_indices {
                term = term.wedge(&Form::generator(i));
            }
            out += term;
        }
        out
    }

    /// (p,q) bidegree split in the ζ-coframe interpretation.
    pub fn split_pq_zeta(&self) -> Vec<((u32, u32), Form)> {
        let mut parts: std::collections::BTreeMap<(u32, u32), Form> = Default::default();
        for (mask, c) in self.terms() {
            let p = (mask & 0b000111).count_ones();
            let q = (mask & 0b111000).count_ones();
            parts
                .entry((p, q))
                .or_insert_with(Form::zero)
                .add_coeff(mask, c);
        }
        parts.into_iter().collect()
    }

    /// The (p,q) part in the ζ-coframe interpretation.
    pub fn pq_part_zeta(&self, p: u32, q: u32) -> Form {
        let mut out = Form::zero();
        for (mask, c) in self.terms() {
            if (mask & 0b000111).count_ones() == p && (mask & 0b111000).count_ones() == q {
                out.coeffs[mask as usize] = c;
            }
        }
        out
    }
}

impl std::ops::Add for Form {
    type Output = Form;
    fn add(mut self, rhs: Form) -> Form {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a += b;
        }
        self
    }
}

impl std::ops::AddAssign for Form {
    fn add_assign(&mut self, rhs: Form) {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a += b;
        }
    }
}

impl std::ops::Sub for Form {
    type Output = Form;
    fn sub(mut self, rhs: Form) -> Form {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a -= b;
        }
        self
    }
}

impl std::ops::Neg for Form {
    type Output = Form;
    fn neg(self) -> Form {
        self.scale_re(-1.0)
    }
}

/// Exterior product of two forms.
pub fn wedge(a: &Form, b: &Form) -> Form {
    a.wedge(b)
}

/// Differential data of a coframe: the 2-form `d(basis^k)` per generator.
///
/// For the real adapted coframe this is built from [`StructureConstants`];
/// for the ζ-coframe it is built from the complex structure equations.
#[derive(Clone, Debug)]
pub struct Differential {
    d_basis: [Form; DIM],
}

impl Differential {
    /// The differential with `d(basis^k) = d_basis[k-1]`.
    pub fn new(d_basis: [Form; DIM]) -> Self {
        Differential { d_basis }
    }

    /// Chevalley–Eilenberg differential `de^k = Σ_{i<j} c^k_{ij} e^{ij}`.
    pub fn from_structure_constants(sc: &StructureConstants) -> Self {
        let mut d_basis: [Form; DIM] = Default::default();
        for k in 0..DIM {
            let mut f = Form::zero();
            for i in 0..DIM {
                for j in (i + 1)..DIM {
                    let c = sc.get(k + 1, i + 1, j + 1);
                    if c != 0.0 {
                        f.add_coeff((1 << i) | (1 << j), Complex64::new(c, 0.0));
                    }
                }
            }
            d_basis[k] = f;
        }
        Differential { d_basis }
    }

    /// `d` of a generator (1-based index).
    pub fn d_generator(&self, i: usize) -> &Form {
        &self.d_basis[i - 1]
    }

    /// Antiderivation of degree +1 determined by the generator images.
    pub fn apply(&self, a: &Form) -> Form {
        let mut out = Form::zero();
        for (mask, c) in a.terms() {
            for i in 0..DIM {
                if mask & (1 << i) == 0 {
                    continue;
                }
                // d hits slot i; the remaining monomial keeps its order and
                // the even-degree image moves to the front at no sign cost.
                let rest = mask & !(1 << i);
                let term = self.d_basis[i].wedge(&Form::basis(rest));
                out += term.scale(c * prefix_sign(mask, i));
            }
        }
        out
    }
}

/// Sign `(-1)^{m-1}` where `m` is the position of bit `i` within `mask`.
fn prefix_sign(mask: u8, i: usize) -> f64 {
    let before = (mask & ((1u8 << i) - 1)).count_ones();
    if before % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Chevalley–Eilenberg differential of a form for the given constants.
pub fn d(a: &Form, sc: &StructureConstants) -> Form {
    Differential::from_structure_constants(sc).apply(a)
}

/// Linear relations between the ζ-coframe and the real adapted coframe.
///
/// Rows are `ζ^a = Σ_j zeta_from_e[a][j] e^j` for `a = 1..3`; the conjugate
/// rows and the inverse are derived. The complex structure acts on the real
/// coframe by `Je^1 = -e^2, Je^3 = -e^4, Je^5 = -e^6`.
#[derive(Clone, Debug)]
pub struct ComplexFrame {
    zeta_from_e: [[Complex64; DIM]; DIM],
    e_from_zeta: [[Complex64; DIM]; DIM],
}

impl ComplexFrame {
    /// Builds a frame from the three holomorphic rows; fails when singular.
    pub fn new(rows: [[Complex64; DIM]; 3]) -> Result<Self> {
        let mut zeta_from_e = [[ZERO; DIM]; DIM];
        for a in 0..3 {
            zeta_from_e[a] = rows[a];
            for j in 0..DIM {
                zeta_from_e[a + 3][j] = rows[a][j].conj();
            }
        }
        let e_from_zeta = invert6(&zeta_from_e)
            .ok_or_else(|| GeometryError::SingularFrame("ζ rows are degenerate".into()))?;
        Ok(ComplexFrame {
            zeta_from_e,
            e_from_zeta,
        })
    }

    /// Row `ζ^a` (1-based, a ∈ 1..3) over the real coframe.
    pub fn zeta_row(&self, a: usize) -> [Complex64; DIM] {
        self.zeta_from_e[a - 1]
    }

    /// Re-expresses a real-coframe form over the ζ-coframe.
    pub fn to_zeta(&self, a: &Form) -> Form {
        let rows = matrix_rows(&self.e_from_zeta);
        a.substitute(&rows)
    }

    /// Re-expresses a ζ-coframe form over the real coframe.
    pub fn to_e(&self, a: &Form) -> Form {
        let rows = matrix_rows(&self.zeta_from_e);
        a.substitute(&rows)
    }

    /// Action of J on 1-forms of the real coframe, extended to monomials.
    pub fn j_coframe(&self, a: &Form) -> Form {
        let mut rows: [Form; DIM] = Default::default();
        for m in 0..3 {
            // Je^{2m+1} = -e^{2m+2},  Je^{2m+2} = e^{2m+1}
            rows[2 * m] = -Form::generator(2 * m + 2);
            rows[2 * m + 1] = Form::generator(2 * m + 1);
        }
        a.substitute(&rows)
    }
}

/// Rows of a 6×6 matrix as 1-forms: row `i` gives the image of generator `i+1`.
fn matrix_rows(m: &[[Complex64; DIM]; DIM]) -> [Form; DIM] {
    let mut rows: [Form; DIM] = Default::default();
    for (i, row) in m.iter().enumerate() {
        let mut f = Form::zero();
        for (j, &c) in row.iter().enumerate() {
            if c != ZERO {
                f.add_coeff(1 << j, c);
            }
        }
        rows[i] = f;
    }
    rows
}

/// Gaussian elimination with partial pivoting; `None` when singular.
fn invert6(m: &[[Complex64; DIM]; DIM]) -> Option<[[Complex64; DIM]; DIM]> {
    let mut a = *m;
    let mut inv = [[ZERO; DIM]; DIM];
    for (i, row) in inv.iter_mut().enumerate() {
        row[i] = Complex64::new(1.0, 0.0);
    }
    for col in 0..DIM {
        let pivot = (col..DIM).max_by(|&r, &s| {
            a[r][col]
                .norm()
                .partial_cmp(&a[s][col].norm())
                .unwrap_or(std::cmp::Ordering::Equal)
        })?;
        if a[pivot][col].norm() < 1e-14 {
            return None;
        }
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let inv_p = Complex64::new(1.0, 0.0) / a[col][col];
        for j in 0..DIM {
            a[col][j] *= inv_p;
            inv[col][j] *= inv_p;
        }
        for r in 0..DIM {
            if r == col {
                continue;
            }
            let f = a[r][col];
            if f == ZERO {
                continue;
            }
            for j in 0..DIM {
                let (ac, ic) = (a[col][j], inv[col][j]);
                a[r][j] -= f * ac;
                inv[r][j] -= f * ic;
            }
        }
    }
    Some(inv)
}

/// (p,q) decomposition of a real-coframe form with respect to a frame.
///
/// The components are returned over the real coframe; their sum reconstructs
/// the input, and each is of pure bidegree with respect to J.
pub fn decompose_pq(a: &Form, frame: &ComplexFrame) -> Vec<((u32, u32), Form)> {
    let in_zeta = frame.to_zeta(a);
    in_zeta
        .split_pq_zeta()
        .into_iter()
        .map(|(pq, part)| (pq, frame.to_e(&part)))
        .collect()
}

/// `(∂a, ∂̄a)`: bidegree (p+1,q) and (p,q+1) parts of `da` per component.
///
/// For the integrable structures produced by this crate, `d = ∂ + ∂̄`, so the
/// pieces of other bidegrees vanish; they are discarded here and checked by
/// the integrability property tests.
pub fn del_delbar(a: &Form, frame: &ComplexFrame, sc: &StructureConstants) -> (Form, Form) {
    let diff = Differential::from_structure_constants(sc);
    let mut del = Form::zero();
    let mut delbar = Form::zero();
    for ((p, q), part) in decompose_pq(a, frame) {
        let d_part = frame.to_zeta(&diff.apply(&part));
        del += frame.to_e(&d_part.pq_part_zeta(p + 1, q));
        delbar += frame.to_e(&d_part.pq_part_zeta(p, q + 1));
    }
    (del, delbar)
}

/// Serialization image of a form: sparse `{mask, re, im}` triples.
#[derive(Serialize, Deserialize)]
struct FormTerm {
    mask: u8,
    re: f64,
    im: f64,
}

impl Serialize for Form {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<FormTerm> = self
            .terms()
            .map(|(mask, c)| FormTerm {
                mask,
                re: c.re,
                im: c.im,
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Form {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<FormTerm>::deserialize(d)?;
        let mut f = Form::zero();
        for t in terms {
            f.add_coeff(t.mask, Complex64::new(t.re, t.im));
        }
        Ok(f)
    }
}

/// Relative-error comparison of two forms against a common scale.
pub fn max_rel_err(a: &Form, b: &Form, scale: f64) -> f64 {
    let mut worst = 0.0f64;
    for mask in 0..BASIS {
        let da = (a.coeffs[mask] - b.coeffs[mask]).norm();
        worst = worst.max(da);
    }
    worst / scale.max(tol::ABS_FLOOR)
}
