//! Resultant test functions for images of maps `F^n → F^{n+1}`.
//!
//! `R_f(b)` is the resultant of the homogenized system `f_i - b_i`. It
//! vanishes whenever `b = f(a)`, so a nonzero value proves `b` is outside the
//! image. A zero value proves nothing.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::groebner::{buchberger, Budget, Ideal};
use crate::interp::{interpolate, simplex_lattice, ValueTable};
use crate::poly::{monomials_up_to, Monomial, MonomialOrder, Poly, PolyMap};

/// Largest Macaulay matrix we build.
pub const MACAULAY_DIM_CAP: usize = 2_000;
/// Largest number of sample points for the symbolic test polynomial.
pub const SAMPLE_CAP: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResultantMethod {
    Sylvester,
    Macaulay,
}

/// What a test value allows one to conclude.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// The point is provably not in the image.
    OutsideImage,
    /// The value vanished; nothing follows.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultantCertificate {
    pub map: PolyMap,
    pub point: Vec<FieldElem>,
    pub value: FieldElem,
    pub verdict: Verdict,
    pub method: ResultantMethod,
    /// Side length of the resultant matrix.
    pub matrix_dim: usize,
    /// Side length of the Macaulay denominator minor (0 for Sylvester).
    pub minor_dim: usize,
    /// Whether the denominator vanished and the value came from the
    /// perturbed system `F_i + ε x_i^{d_i}` at `ε = 0`.
    pub perturbed: bool,
}

impl ResultantCertificate {
    pub fn certifies_outside(&self) -> bool {
        self.verdict == Verdict::OutsideImage
    }
}

fn det(mut a: Vec<Vec<FieldElem>>) -> FieldElem {
    let n = a.len();
    let mut acc = FieldElem::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return FieldElem::zero();
        };
        if p != col {
            a.swap(p, col);
            acc = -acc;
        }
        let piv = a[col][col].clone();
        let inv = piv.inv().expect("nonzero pivot");
        acc = &acc * &piv;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] * &inv;
            for c in col..n {
                let d = &factor * &a[col][c];
                a[r][c] = &a[r][c] - &d;
            }
        }
    }
    acc
}

fn univariate_coeffs_desc(p: &Poly) -> Result<Vec<FieldElem>> {
    if p.nvars() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: p.nvars(),
        });
    }
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let d = p.degree();
    Ok((0..=d)
        .rev()
        .map(|k| p.coeff(&Monomial(vec![k])))
        .collect())
}

/// Determinant of the Sylvester matrix of two univariate polynomials,
/// coefficients in descending powers, rows of `f` first.
pub fn sylvester_resultant(f: &Poly, g: &Poly) -> Result<FieldElem> {
    let a = univariate_coeffs_desc(f)?;
    let b = univariate_coeffs_desc(g)?;
    let (d, e) = (a.len() - 1, b.len() - 1);
    let n = d + e;
    let mut m = vec![vec![FieldElem::zero(); n]; n];
    for k in 0..e {
        for (j, c) in a.iter().enumerate() {
            m[k][k + j] = c.clone();
        }
    }
    for k in 0..d {
        for (j, c) in b.iter().enumerate() {
            m[e + k][k + j] = c.clone();
        }
    }
    Ok(det(m))
}

struct MacaulayValue {
    value: FieldElem,
    dim: usize,
    minor_dim: usize,
    perturbed: bool,
}

/// Coefficients of `det(A + εI)` in ascending powers of `ε`.
fn shifted_det_coeffs(a: &[Vec<FieldElem>]) -> Result<Vec<FieldElem>> {
    let n = a.len();
    let values = (0..=n)
        .map(|t| {
            let eps = FieldElem::from_int(t as i64);
            let mut b = a.to_vec();
            for (i, row) in b.iter_mut().enumerate() {
                row[i] = &row[i] + &eps;
            }
            vec![det(b)]
        })
        .collect();
    let p = interpolate(&ValueTable::new(1, n as u32, values)?)?;
    let p = &p.components()[0];
    Ok((0..=n as u32).map(|k| p.coeff(&Monomial(vec![k]))).collect())
}

fn submatrix(a: &[Vec<FieldElem>], idx: &[usize]) -> Vec<Vec<FieldElem>> {
    idx.iter()
        .map(|&r| idx.iter().map(|&c| a[r][c].clone()).collect())
        .collect()
}

/// Macaulay resultant of `k` forms in `k` variables, form `i` paired with
/// variable `i`. Normalized so that `Res(x_0^{d_0}, …) = 1`.
fn macaulay(forms: &[Poly], degrees: &[u32]) -> Result<MacaulayValue> {
    let k = forms.len();
    if let Some(i) = degrees.iter().position(|&d| d == 0) {
        let e: u32 = degrees
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &d)| d)
            .product();
        return Ok(MacaulayValue {
            value: forms[i].constant_term().pow(e),
            dim: 0,
            minor_dim: 0,
            perturbed: false,
        });
    }
    let top: u32 = degrees.iter().map(|d| d - 1).sum::<u32>() + 1;
    let monos: Vec<Vec<u32>> = monomials_up_to(k, top)
        .into_iter()
        .filter(|m| m.iter().sum::<u32>() == top)
        .collect();
    let n = monos.len();
    if n > MACAULAY_DIM_CAP {
        return Err(Error::ResourceBudgetExceeded(format!(
            "Macaulay matrix of size {n} exceeds cap {MACAULAY_DIM_CAP}"
        )));
    }
    let index: BTreeMap<&[u32], usize> = monos.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
    let mut mat = vec![vec![FieldElem::zero(); n]; n];
    let mut non_reduced = Vec::new();
    for (row, alpha) in monos.iter().enumerate() {
        let divisible: Vec<usize> = (0..k).filter(|&i| alpha[i] >= degrees[i]).collect();
        if divisible.len() > 1 {
            non_reduced.push(row);
        }
        let i = divisible[0];
        let mut shift = alpha.clone();
        shift[i] -= degrees[i];
        for (m, c) in forms[i].terms() {
            let col: Vec<u32> = m.0.iter().zip(&shift).map(|(a, b)| a + b).collect();
            mat[row][index[col.as_slice()]] = c.clone();
        }
    }
    let minor = submatrix(&mat, &non_reduced);
    let den = det(minor.clone());
    if !den.is_zero() {
        return Ok(MacaulayValue {
            value: det(mat).checked_div(&den)?,
            dim: n,
            minor_dim: non_reduced.len(),
            perturbed: false,
        });
    }
    // Perturbing F_i by ε x_i^{d_i} adds ε to the diagonal of both matrices.
    let num = shifted_det_coeffs(&mat)?;
    let den = shifted_det_coeffs(&minor)?;
    let low = den
        .iter()
        .position(|c| !c.is_zero())
        .expect("det(M' + εI) is monic");
    Ok(MacaulayValue {
        value: num[low].checked_div(&den[low])?,
        dim: n,
        minor_dim: non_reduced.len(),
        perturbed: true,
    })
}

/// Resultant of `nvars` homogeneous polynomials in `nvars` variables.
pub fn macaulay_resultant(forms: &[Poly]) -> Result<FieldElem> {
    let k = forms.len();
    let mut degrees = Vec::with_capacity(k);
    for f in forms {
        if f.nvars() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                got: f.nvars(),
            });
        }
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !f.is_homogeneous() {
            return Err(Error::InvalidParams("Macaulay resultant needs homogeneous forms".into()));
        }
        degrees.push(f.degree());
    }
    Ok(macaulay(forms, &degrees)?.value)
}

fn check_shape(f: &PolyMap) -> Result<usize> {
    let n = f.nvars();
    if f.len() != n + 1 {
        return Err(Error::DimensionMismatch {
            expected: n + 1,
            got: f.len(),
        });
    }
    Ok(n)
}

/// Value of the test function at `b`, without the degeneracy check.
fn raw_value(f: &PolyMap, b: &[FieldElem]) -> Result<(FieldElem, ResultantMethod, MacaulayValue)> {
    let n = check_shape(f)?;
    if b.len() != n + 1 {
        return Err(Error::DimensionMismatch {
            expected: n + 1,
            got: b.len(),
        });
    }
    let method = if n == 1 {
        ResultantMethod::Sylvester
    } else {
        ResultantMethod::Macaulay
    };
    let shifted: Vec<Poly> = f
        .components()
        .iter()
        .zip(b)
        .map(|(fi, bi)| fi - &Poly::constant(n, bi.clone()))
        .collect();
    if shifted.iter().any(Poly::is_zero) {
        let mv = MacaulayValue {
            value: FieldElem::zero(),
            dim: 0,
            minor_dim: 0,
            perturbed: false,
        };
        return Ok((FieldElem::zero(), method, mv));
    }
    let degrees: Vec<u32> = f.components().iter().map(Poly::degree).collect();
    if n == 1 {
        let v = sylvester_resultant(&shifted[0], &shifted[1])?;
        let mv = MacaulayValue {
            value: v.clone(),
            dim: (degrees[0] + degrees[1]) as usize,
            minor_dim: 0,
            perturbed: false,
        };
        return Ok((v, method, mv));
    }
    let forms = shifted
        .iter()
        .zip(&degrees)
        .map(|(p, &d)| p.homogenize(d))
        .collect::<Result<Vec<_>>>()?;
    let mv = macaulay(&forms, &degrees)?;
    Ok((mv.value.clone(), method, mv))
}

/// Whether the top-degree forms of `f` share a nonzero common zero, in which
/// case every homogenized system has a root at infinity and `R_f ≡ 0`.
pub fn has_common_zero_at_infinity(f: &PolyMap) -> Result<bool> {
    let n = check_shape(f)?;
    let tops: Vec<Poly> = f.components().iter().map(Poly::leading_form).collect();
    let gb = buchberger(&Ideal::new(n, tops, MonomialOrder::GrevLex)?, &Budget::default())?;
    let lms = gb.leading_monomials();
    Ok((0..n).any(|v| {
        !lms.iter()
            .any(|m| m.0[v] > 0 && m.0.iter().enumerate().all(|(j, &e)| j == v || e == 0))
    }))
}

/// Evaluates `R_f(b)`. A zero value on a system with a common zero at
/// infinity is reported as [`Error::DegenerateSystem`], since then the test
/// vanishes everywhere.
pub fn resultant_test_value(f: &PolyMap, b: &[FieldElem]) -> Result<ResultantCertificate> {
    let (value, method, mv) = raw_value(f, b)?;
    if value.is_zero() && has_common_zero_at_infinity(f)? {
        return Err(Error::DegenerateSystem(
            "top-degree forms share a zero at infinity; the test function vanishes identically"
                .into(),
        ));
    }
    let verdict = if value.is_zero() {
        Verdict::Inconclusive
    } else {
        Verdict::OutsideImage
    };
    Ok(ResultantCertificate {
        map: f.clone(),
        point: b.to_vec(),
        value,
        verdict,
        method,
        matrix_dim: mv.dim,
        minor_dim: mv.minor_dim,
        perturbed: mv.perturbed,
    })
}

/// Degree bound for `R_f` in the target coordinates: `Σ_i ∏_{j≠i} d_j`.
pub fn test_poly_degree_bound(f: &PolyMap) -> u32 {
    let d: Vec<u32> = f.components().iter().map(Poly::degree).collect();
    (0..d.len())
        .map(|i| {
            d.iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &x)| x)
                .product::<u32>()
        })
        .sum()
}

/// Symbolic `R_f(Y_1, …, Y_{n+1})`, recovered by interpolation from its
/// values on a simplex lattice of the degree bound.
pub fn resultant_test_poly(f: &PolyMap) -> Result<Poly> {
    let n = check_shape(f)?;
    let t = test_poly_degree_bound(f);
    let lattice = simplex_lattice(n + 1, t);
    if lattice.len() > SAMPLE_CAP {
        return Err(Error::ResourceBudgetExceeded(format!(
            "{} sample points exceed cap {SAMPLE_CAP}",
            lattice.len()
        )));
    }
    let values = lattice
        .field_points()
        .iter()
        .map(|b| raw_value(f, b).map(|(v, _, _)| vec![v]))
        .collect::<Result<Vec<_>>>()?;
    let p = interpolate(&ValueTable::new(n + 1, t, values)?)?;
    Ok(p.into_components().remove(0))
}
