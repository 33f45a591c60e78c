//! Interpolation on the simplex lattice `{ i in N^s : |i| <= r }`.
//!
//! The unique `f` of degree `<= r` with prescribed lattice values is built by
//! peeling off the last variable: `f = Σ_j X_s(X_s - 1)⋯(X_s - j + 1) · P_j(X')`
//! with `deg P_j <= r - j`. Setting `X_s = k` gives a unitriangular system in
//! `P_0(i'), …, P_k(i')` whose diagonal is `k!`, solved by forward
//! substitution; each `P_j` is then interpolated on a smaller lattice.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldElem, Rational};
use crate::poly::{dim_pol, falling_factorial, monomials_up_to, Monomial, Poly, PolyMap};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplexLattice {
    pub s: usize,
    pub r: u32,
    pub points: Vec<Vec<u32>>,
}

pub fn simplex_lattice(s: usize, r: u32) -> SimplexLattice {
    SimplexLattice {
        s,
        r,
        points: monomials_up_to(s, r),
    }
}

impl SimplexLattice {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Lattice points as field elements.
    pub fn field_points(&self) -> Vec<Vec<FieldElem>> {
        self.points
            .iter()
            .map(|p| p.iter().map(|&e| FieldElem::from_int(e as i64)).collect())
            .collect()
    }
}

/// Values in `F^m` attached to the lattice points, in lattice order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TableRepr")]
pub struct ValueTable {
    s: usize,
    r: u32,
    #[serde(skip)]
    lattice: Vec<Vec<u32>>,
    values: Vec<Vec<FieldElem>>,
}

#[derive(Deserialize)]
struct TableRepr {
    s: usize,
    r: u32,
    #[serde(default)]
    points: Option<Vec<Vec<u32>>>,
    values: Vec<Vec<FieldElem>>,
}

impl TryFrom<TableRepr> for ValueTable {
    type Error = Error;
    fn try_from(t: TableRepr) -> Result<Self> {
        if let Some(points) = &t.points {
            if *points != monomials_up_to(t.s, t.r) {
                return Err(Error::InvalidParams(
                    "table points must list the simplex lattice in lex-ascending order".into(),
                ));
            }
        }
        ValueTable::new(t.s, t.r, t.values)
    }
}

impl ValueTable {
    pub fn new(s: usize, r: u32, values: Vec<Vec<FieldElem>>) -> Result<Self> {
        if s == 0 {
            return Err(Error::InvalidParams("lattice dimension must be at least 1".into()));
        }
        let lattice = monomials_up_to(s, r);
        if values.len() != lattice.len() {
            return Err(Error::LengthMismatch {
                expected: lattice.len(),
                got: values.len(),
            });
        }
        let m = values[0].len();
        if m == 0 {
            return Err(Error::InvalidParams("values must have at least one component".into()));
        }
        for v in &values {
            if v.len() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    got: v.len(),
                });
            }
        }
        Ok(ValueTable {
            s,
            r,
            lattice,
            values,
        })
    }

    /// Builds a table from `(point, value)` pairs, insisting on lattice order.
    pub fn from_pairs(s: usize, r: u32, pairs: Vec<(Vec<u32>, Vec<FieldElem>)>) -> Result<Self> {
        let lattice = monomials_up_to(s, r);
        if pairs.len() != lattice.len() || pairs.iter().zip(&lattice).any(|((p, _), q)| p != q) {
            return Err(Error::InvalidParams(
                "table points must list the simplex lattice in lex-ascending order".into(),
            ));
        }
        ValueTable::new(s, r, pairs.into_iter().map(|(_, v)| v).collect())
    }

    /// Samples `f` on the lattice `S_{s,r}` with `s = f.nvars()`.
    pub fn sample(f: &PolyMap, r: u32) -> Result<Self> {
        let values = lattice_values(f, r)?;
        ValueTable::new(f.nvars(), r, values)
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn m(&self) -> usize {
        self.values[0].len()
    }

    pub fn points(&self) -> &[Vec<u32>] {
        &self.lattice
    }

    pub fn values(&self) -> &[Vec<FieldElem>] {
        &self.values
    }
}

fn falling_at(k: u32, j: u32) -> BigInt {
    (0..j).fold(BigInt::one(), |acc, i| acc * BigInt::from(k - i))
}

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Scalar interpolation in `s` variables from values keyed by lattice point.
fn interp_scalar(s: usize, r: u32, vals: &HashMap<Vec<u32>, FieldElem>) -> Poly {
    if s == 0 {
        return Poly::constant(0, vals[&Vec::new()].clone());
    }
    // values of P_j on S_{s-1, r-j}
    let mut parts: Vec<HashMap<Vec<u32>, FieldElem>> = Vec::with_capacity(r as usize + 1);
    for k in 0..=r {
        let inv_fact = FieldElem::Rational(Rational::new(BigInt::one(), factorial(k)));
        let mut pk = HashMap::new();
        for ip in monomials_up_to(s - 1, r - k) {
            let mut key = ip.clone();
            key.push(k);
            let mut acc = vals[&key].clone();
            for (j, pj) in parts.iter().enumerate() {
                let c = falling_at(k, j as u32);
                if !c.is_zero() {
                    acc = &acc - &pj[&ip].scale(&Rational::from_integer(c));
                }
            }
            pk.insert(ip, &acc * &inv_fact);
        }
        parts.push(pk);
    }
    let mut f = Poly::zero(s);
    for (j, pj) in parts.iter().enumerate() {
        let p = interp_scalar(s - 1, r - j as u32, pj);
        if p.is_zero() {
            continue;
        }
        let lifted = p.embed(s, 0);
        let mut ff = Poly::zero(s);
        for (d, c) in falling_factorial(j as u32).into_iter().enumerate() {
            let mut e = vec![0; s];
            e[s - 1] = d as u32;
            ff.add_term(Monomial(e), FieldElem::Rational(Rational::from_integer(c)));
        }
        f = &f + &(&lifted * &ff);
    }
    f
}

/// The unique map of degree `<= r` attaining the table's values.
pub fn interpolate(table: &ValueTable) -> Result<PolyMap> {
    let comps = (0..table.m())
        .map(|c| {
            let vals: HashMap<Vec<u32>, FieldElem> = table
                .lattice
                .iter()
                .cloned()
                .zip(table.values.iter().map(|v| v[c].clone()))
                .collect();
            interp_scalar(table.s, table.r, &vals)
        })
        .collect();
    PolyMap::new(comps)
}

/// Homogeneous degree-`r` map on `F^{s+1}` with `f(i, 1) = b_i`.
pub fn interpolate_homogeneous(table: &ValueTable) -> Result<PolyMap> {
    interpolate(table)?.homogenize(table.r)
}

/// Values of `f` at every point of `S_{n,r}`, `n = f.nvars()`, in lattice order.
pub fn lattice_values(f: &PolyMap, r: u32) -> Result<Vec<Vec<FieldElem>>> {
    simplex_lattice(f.nvars(), r)
        .field_points()
        .iter()
        .map(|p| f.eval(p))
        .collect()
}

/// Linear isomorphism `F^{m·C(s+r,r)} → Pol^r(F^s, F^m)`; the input is
/// point-major (all `m` coordinates of the first lattice point, then the next).
pub fn iso_values_to_poly(v: &[FieldElem], s: usize, r: u32, m: usize) -> Result<PolyMap> {
    let b = dim_pol(s, r as usize);
    if m == 0 || v.len() != m * b {
        return Err(Error::LengthMismatch {
            expected: m * b,
            got: v.len(),
        });
    }
    let values = v.chunks(m).map(|c| c.to_vec()).collect();
    interpolate(&ValueTable::new(s, r, values)?)
}

/// Inverse of [`iso_values_to_poly`]: lattice evaluation, flattened.
pub fn poly_to_iso_values(f: &PolyMap, r: u32) -> Result<Vec<FieldElem>> {
    if f.degree() > r {
        return Err(Error::DegreeTooHigh {
            degree: f.degree() as usize,
            bound: r as usize,
        });
    }
    Ok(lattice_values(f, r)?.into_iter().flatten().collect())
}
