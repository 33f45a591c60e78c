//! Pseudo-monomials `∏_j X_j (X_j - 1) ⋯ (X_j - i_j + 1)`: a triangular
//! alternative to the monomial basis of `Pol^p(F^n)` whose values on the
//! simplex lattice are easy to control.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{monomials_up_to, Monomial, Poly};
use crate::error::{Error, Result};
use crate::field::{FieldElem, Rational};

/// Integer coefficients of `X (X - 1) ⋯ (X - k + 1)`, low degree first.
pub fn falling_factorial(k: u32) -> Vec<BigInt> {
    let mut c = vec![BigInt::one()];
    for i in 0..k {
        // multiply by (X - i)
        let mut next = vec![BigInt::zero(); c.len() + 1];
        for (d, a) in c.iter().enumerate() {
            next[d + 1] += a;
            next[d] -= a * BigInt::from(i);
        }
        c = next;
    }
    c
}

/// The pseudo-monomial indexed by `exps`.
pub fn pseudo_monomial(exps: &[u32]) -> Poly {
    let n = exps.len();
    let mut acc = Poly::one(n);
    for (j, &k) in exps.iter().enumerate() {
        if k == 0 {
            continue;
        }
        let mut factor = Poly::zero(n);
        for (d, c) in falling_factorial(k).into_iter().enumerate() {
            let mut e = vec![0; n];
            e[j] = d as u32;
            factor.add_term(Monomial(e), FieldElem::Rational(Rational::from_integer(c)));
        }
        acc = &acc * &factor;
    }
    acc
}

/// Pseudo-monomials of degree `<= p` in `n` variables, lex-ascending index.
pub fn pseudo_monomial_basis(n: usize, p: u32) -> Vec<Poly> {
    monomials_up_to(n, p)
        .iter()
        .map(|e| pseudo_monomial(e))
        .collect()
}

/// Sparse change-of-basis matrix: row `i` lists the monomial coefficients of
/// the `i`-th pseudo-monomial, columns indexed by the same lex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisChange {
    dim: usize,
    rows: Vec<Vec<(usize, Rational)>>,
}

impl BasisChange {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> Rational {
        self.rows[i]
            .iter()
            .find(|(c, _)| *c == j)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn row(&self, i: usize) -> &[(usize, Rational)] {
        &self.rows[i]
    }

    /// Nonzero diagonal and nothing above it.
    pub fn is_lower_triangular_invertible(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, row)| {
            row.iter().all(|(j, _)| *j <= i) && !self.entry(i, i).is_zero()
        })
    }
}

pub fn pseudo_basis_change(n: usize, p: u32) -> BasisChange {
    let lattice = monomials_up_to(n, p);
    let index = |e: &Vec<u32>| lattice.binary_search(e).expect("sub-monomial lies in lattice");
    let rows = lattice
        .iter()
        .map(|e| {
            let mut row: Vec<(usize, Rational)> = pseudo_monomial(e)
                .terms()
                .map(|(m, c)| (index(&m.0), c.as_rational().expect("integer coefficients").clone()))
                .collect();
            row.sort_by_key(|(j, _)| *j);
            row
        })
        .collect();
    BasisChange {
        dim: lattice.len(),
        rows,
    }
}

/// Coordinates of `f` in the pseudo-monomial basis of `Pol^p(F^n)`.
pub fn to_pseudo(f: &Poly, p: u32) -> Result<Vec<FieldElem>> {
    if f.degree() > p {
        return Err(Error::DegreeTooHigh {
            degree: f.degree() as usize,
            bound: p as usize,
        });
    }
    let lattice = monomials_up_to(f.nvars(), p);
    let mut out = vec![FieldElem::zero(); lattice.len()];
    let mut rest = f.clone();
    // every monomial of a pseudo-monomial divides its index, so peeling off
    // the lex-largest term is a triangular solve
    loop {
        let Some((m, c)) = rest.terms().next_back().map(|(m, c)| (m.clone(), c.clone())) else {
            break;
        };
        let i = lattice.binary_search(&m.0).expect("degree checked");
        rest = &rest - &pseudo_monomial(&m.0).scale(&c);
        out[i] = c;
    }
    Ok(out)
}

pub fn from_pseudo(n: usize, p: u32, coeffs: &[FieldElem]) -> Result<Poly> {
    let lattice = monomials_up_to(n, p);
    if lattice.len() != coeffs.len() {
        return Err(Error::LengthMismatch {
            expected: lattice.len(),
            got: coeffs.len(),
        });
    }
    let mut out = Poly::zero(n);
    for (e, c) in lattice.iter().zip(coeffs) {
        if !c.is_zero() {
            out = &out + &pseudo_monomial(e).scale(c);
        }
    }
    Ok(out)
}
