//! Sparse multivariate polynomials over [`FieldElem`] and polynomial maps.

mod monomial;
pub mod parse;
mod pseudo;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use monomial::{binomial, dim_pol, monomials_up_to, Monomial, MonomialOrder};
pub use pseudo::{
    falling_factorial, from_pseudo, pseudo_basis_change, pseudo_monomial, pseudo_monomial_basis,
    to_pseudo, BasisChange,
};

use crate::error::{Error, Result};
use crate::field::FieldElem;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PolyRepr", into = "PolyRepr")]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, FieldElem>,
}

fn check_dims(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch {
            expected: a,
            got: b,
        });
    }
    Ok(())
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: FieldElem) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, FieldElem::one())
    }

    /// The variable `X_{i+1}` (0-based index `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(Monomial::var(nvars, i), FieldElem::one());
        p
    }

    pub fn monomial(m: Monomial, c: FieldElem) -> Self {
        let mut p = Poly::zero(m.nvars());
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, FieldElem)>,
    {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            check_dims(nvars, m.nvars())?;
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// Adds `c · m` in place.
    pub fn add_term(&mut self, m: Monomial, c: FieldElem) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in lex-ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldElem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, FieldElem> {
        self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElem {
        self.terms.get(m).cloned().unwrap_or_else(FieldElem::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// Constant term.
    pub fn constant_term(&self) -> FieldElem {
        self.coeff(&Monomial::one(self.nvars))
    }

    /// Total degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Whether every coefficient lies in `Q`.
    pub fn is_rational(&self) -> bool {
        self.terms.values().all(|c| c.as_rational().is_some())
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        check_dims(self.nvars, other.nvars)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        check_dims(self.nvars, other.nvars)?;
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &FieldElem) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), x * c))
                .filter(|(_, x)| !x.is_zero())
                .collect(),
        }
    }

    /// `c · m · self`.
    pub fn mul_term(&self, m: &Monomial, c: &FieldElem) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, x)| (k.mul(m), x * c))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact evaluation with per-variable power tables.
    pub fn eval(&self, point: &[FieldElem]) -> Result<FieldElem> {
        check_dims(self.nvars, point.len())?;
        let mut powers: Vec<Vec<FieldElem>> = point.iter().map(|x| vec![FieldElem::one(), x.clone()]).collect();
        for (i, table) in powers.iter_mut().enumerate() {
            let d = self.degree_in(i) as usize;
            while table.len() <= d {
                let next = table.last().unwrap() * &point[i];
                table.push(next);
            }
        }
        let mut acc = FieldElem::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Substitutes `X_i ↦ subs[i]`; all substitutes share one variable count.
    pub fn compose(&self, subs: &[Poly]) -> Result<Poly> {
        check_dims(self.nvars, subs.len())?;
        let target = subs.first().map(|p| p.nvars).unwrap_or(0);
        for s in subs {
            check_dims(target, s.nvars)?;
        }
        let mut powers: Vec<Vec<Poly>> = subs.iter().map(|s| vec![Poly::one(target), s.clone()]).collect();
        for (i, table) in powers.iter_mut().enumerate() {
            let d = self.degree_in(i) as usize;
            while table.len() <= d {
                let next = table.last().unwrap() * &subs[i];
                table.push(next);
            }
        }
        let mut acc = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Re-embeds into `new_nvars` variables, sending `X_i` to `X_{offset+i}`.
    pub fn embed(&self, new_nvars: usize, offset: usize) -> Poly {
        assert!(offset + self.nvars <= new_nvars, "embedding out of range");
        Poly {
            nvars: new_nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = vec![0; new_nvars];
                    e[offset..offset + self.nvars].copy_from_slice(&m.0);
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Homogenizes to degree `r` with a new last variable.
    pub fn homogenize(&self, r: u32) -> Result<Poly> {
        let d = self.degree();
        if d > r {
            return Err(Error::DegreeTooHigh {
                degree: d as usize,
                bound: r as usize,
            });
        }
        Ok(Poly {
            nvars: self.nvars + 1,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.push(r - m.degree());
                    (Monomial(e), c.clone())
                })
                .collect(),
        })
    }

    /// Sets the last variable to 1.
    pub fn dehomogenize(&self) -> Result<Poly> {
        if self.nvars == 0 {
            return Err(Error::InvalidParams("cannot dehomogenize a 0-variable polynomial".into()));
        }
        let mut out = Poly::zero(self.nvars - 1);
        for (m, c) in &self.terms {
            out.add_term(Monomial(m.0[..self.nvars - 1].to_vec()), c.clone());
        }
        Ok(out)
    }

    /// Top-degree homogeneous part.
    pub fn leading_form(&self) -> Poly {
        let d = self.degree();
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Leading monomial and coefficient under `order`.
    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &FieldElem)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    /// Coefficients of all monomials of degree `<= r`, lex ascending.
    pub fn coeff_vector(&self, r: u32) -> Result<Vec<FieldElem>> {
        let d = self.degree();
        if d > r {
            return Err(Error::DegreeTooHigh {
                degree: d as usize,
                bound: r as usize,
            });
        }
        Ok(monomials_up_to(self.nvars, r)
            .into_iter()
            .map(|e| self.coeff(&Monomial(e)))
            .collect())
    }

    pub fn from_coeff_vector(nvars: usize, r: u32, v: &[FieldElem]) -> Result<Poly> {
        let basis = monomials_up_to(nvars, r);
        if basis.len() != v.len() {
            return Err(Error::LengthMismatch {
                expected: basis.len(),
                got: v.len(),
            });
        }
        Poly::from_terms(
            nvars,
            basis.into_iter().map(Monomial).zip(v.iter().cloned()),
        )
    }

    pub fn map_coeffs<F: FnMut(&FieldElem) -> FieldElem>(&self, mut f: F) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("polynomial variable counts differ")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("polynomial variable counts differ")
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("polynomial variable counts differ")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, e)
                    }
                })
                .collect();
            let coeff = match c {
                FieldElem::Rational(_) => c.to_string(),
                FieldElem::Cyclo(_) => format!("({c})"),
            };
            if vars.is_empty() {
                write!(f, "{coeff}")?;
            } else if c.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{coeff}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    nvars: usize,
    terms: Vec<TermRepr>,
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exps: Vec<u32>,
    coeff: FieldElem,
}

impl From<Poly> for PolyRepr {
    fn from(p: Poly) -> Self {
        PolyRepr {
            nvars: p.nvars,
            terms: p
                .terms
                .into_iter()
                .map(|(m, coeff)| TermRepr { exps: m.0, coeff })
                .collect(),
        }
    }
}

impl TryFrom<PolyRepr> for Poly {
    type Error = Error;
    fn try_from(r: PolyRepr) -> Result<Self> {
        Poly::from_terms(
            r.nvars,
            r.terms.into_iter().map(|t| (Monomial(t.exps), t.coeff)),
        )
    }
}

/// An ordered tuple of polynomials in a common set of variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PolyMapRepr", into = "PolyMapRepr")]
pub struct PolyMap {
    components: Vec<Poly>,
}

#[derive(Serialize, Deserialize)]
struct PolyMapRepr {
    components: Vec<Poly>,
}

impl From<PolyMap> for PolyMapRepr {
    fn from(m: PolyMap) -> Self {
        PolyMapRepr {
            components: m.components,
        }
    }
}

impl TryFrom<PolyMapRepr> for PolyMap {
    type Error = Error;
    fn try_from(r: PolyMapRepr) -> Result<Self> {
        PolyMap::new(r.components)
    }
}

impl PolyMap {
    pub fn new(components: Vec<Poly>) -> Result<Self> {
        let first = components
            .first()
            .ok_or_else(|| Error::InvalidParams("a polynomial map needs at least one component".into()))?;
        for c in &components {
            check_dims(first.nvars, c.nvars)?;
        }
        Ok(PolyMap { components })
    }

    pub fn zero(nvars: usize, m: usize) -> Self {
        PolyMap {
            components: vec![Poly::zero(nvars); m.max(1)],
        }
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn into_components(self) -> Vec<Poly> {
        self.components
    }

    pub fn nvars(&self) -> usize {
        self.components[0].nvars
    }

    /// Number of components `m`.
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn degree(&self) -> u32 {
        self.components.iter().map(Poly::degree).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.components.iter().all(Poly::is_homogeneous)
    }

    pub fn eval(&self, point: &[FieldElem]) -> Result<Vec<FieldElem>> {
        self.components.iter().map(|c| c.eval(point)).collect()
    }

    /// Flattening `Pol^r(F^n, F^m) → F^{m·C(n+r, n)}`: components outer,
    /// lex-ascending monomials inner.
    pub fn coeff_vector(&self, r: u32) -> Result<Vec<FieldElem>> {
        let mut out = Vec::new();
        for c in &self.components {
            out.extend(c.coeff_vector(r)?);
        }
        Ok(out)
    }

    pub fn from_coeff_vector(nvars: usize, m: usize, r: u32, v: &[FieldElem]) -> Result<Self> {
        let d = dim_pol(nvars, r as usize);
        if v.len() != m * d || m == 0 {
            return Err(Error::LengthMismatch {
                expected: m * d,
                got: v.len(),
            });
        }
        PolyMap::new(
            v.chunks(d)
                .map(|chunk| Poly::from_coeff_vector(nvars, r, chunk))
                .collect::<Result<_>>()?,
        )
    }

    pub fn homogenize(&self, r: u32) -> Result<PolyMap> {
        PolyMap::new(
            self.components
                .iter()
                .map(|c| c.homogenize(r))
                .collect::<Result<_>>()?,
        )
    }

    pub fn dehomogenize(&self) -> Result<PolyMap> {
        PolyMap::new(
            self.components
                .iter()
                .map(Poly::dehomogenize)
                .collect::<Result<_>>()?,
        )
    }

    pub fn compose(&self, subs: &[Poly]) -> Result<PolyMap> {
        PolyMap::new(
            self.components
                .iter()
                .map(|c| c.compose(subs))
                .collect::<Result<_>>()?,
        )
    }
}

impl fmt::Display for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::field::Rational;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn int(n: i64) -> FieldElem {
        FieldElem::from_int(n)
    }

    fn x(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    #[test]
    fn arithmetic_examples() {
        let one = Poly::one(2);
        let a = &(&x(2, 0) + &one) * &(&x(2, 0) - &one);
        assert_eq!(a, &x(2, 0).pow(2) - &one);
        let s = (&x(2, 0) + &x(2, 1)).pow(2);
        assert_eq!(s.coeff(&Monomial(vec![1, 1])), int(2));
        assert_eq!(s.num_terms(), 3);
        assert!((&s * &Poly::zero(2)).is_zero());
        assert!(x(2, 0).checked_add(&x(3, 0)).is_err());
    }

    #[test]
    fn evaluation_examples() {
        let f = &x(2, 0).pow(2) + &x(2, 1);
        assert_eq!(f.eval(&[int(2), int(3)]).unwrap(), int(7));
        let t3 = x(1, 0).pow(3);
        assert!(t3.eval(&[FieldElem::zeta(3).unwrap()]).unwrap().is_one());
        assert_eq!(Poly::constant(3, int(5)).eval(&[int(1), int(9), int(0)]).unwrap(), int(5));
        assert!(f.eval(&[int(1)]).is_err());
    }

    #[test]
    fn coeff_vector_examples() {
        let f = PolyMap::new(vec![x(1, 0)]).unwrap();
        assert_eq!(f.coeff_vector(1).unwrap(), vec![int(0), int(1)]);
        let g = PolyMap::new(vec![
            &Poly::one(1) + &x(1, 0).scale(&int(2)),
            x(1, 0).pow(2),
        ])
        .unwrap();
        assert_eq!(
            g.coeff_vector(2).unwrap(),
            [1, 2, 0, 0, 0, 1].map(int).to_vec()
        );
        assert!(PolyMap::zero(2, 3).coeff_vector(2).unwrap().iter().all(FieldElem::is_zero));
        assert!(matches!(g.coeff_vector(1), Err(Error::DegreeTooHigh { .. })));
    }

    #[test]
    fn homogenize_examples() {
        let f = &x(1, 0) + &Poly::one(1);
        assert_eq!(f.homogenize(1).unwrap(), &x(2, 0) + &x(2, 1));
        let g = &x(1, 0).pow(2) + &x(1, 0);
        assert_eq!(g.homogenize(2).unwrap(), &x(2, 0).pow(2) + &(&x(2, 0) * &x(2, 1)));
    }

    #[test]
    fn homogeneity_and_degree() {
        let p = &x(2, 0) * &x(2, 1);
        assert!(p.is_homogeneous());
        assert_eq!(p.degree(), 2);
        assert!(!(&x(1, 0) + &Poly::one(1)).is_homogeneous());
        assert!(Poly::zero(3).is_homogeneous());
        assert_eq!(Poly::zero(3).degree(), 0);
    }

    #[test]
    fn json_shape() {
        let f = &x(2, 0).scale(&FieldElem::from_ratio(1, 2)) + &Poly::constant(2, int(-3));
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(
            s,
            r#"{"nvars":2,"terms":[{"exps":[0,0],"coeff":"-3"},{"exps":[1,0],"coeff":"1/2"}]}"#
        );
        assert_eq!(serde_json::from_str::<Poly>(&s).unwrap(), f);
        let m = PolyMap::new(vec![f.clone(), Poly::zero(2)]).unwrap();
        let ms = serde_json::to_string(&m).unwrap();
        assert_eq!(serde_json::from_str::<PolyMap>(&ms).unwrap(), m);
        assert!(serde_json::from_str::<PolyMap>(r#"{"components":[]}"#).is_err());
        assert!(serde_json::from_str::<Poly>(r#"{"nvars":1,"terms":[{"exps":[1,0],"coeff":"1"}]}"#).is_err());
    }

    #[test]
    fn compose_substitutes() {
        // (x1 + x2)^2 with x1 = t, x2 = t^2
        let f = (&x(2, 0) + &x(2, 1)).pow(2);
        let t = x(1, 0);
        let g = f.compose(&[t.clone(), t.pow(2)]).unwrap();
        assert_eq!(g, (&t + &t.pow(2)).pow(2));
    }

    pub(crate) fn arb_rational() -> impl Strategy<Value = FieldElem> {
        (-6i64..=6, 1i64..=4).prop_map(|(n, d)| FieldElem::Rational(Rational::new(BigInt::from(n), BigInt::from(d))))
    }

    pub(crate) fn arb_poly(n: usize, max_deg: u32) -> impl Strategy<Value = Poly> {
        let basis = monomials_up_to(n, max_deg);
        proptest::collection::vec(
            (proptest::sample::select(basis), arb_rational()),
            0..6,
        )
        .prop_map(move |ts| Poly::from_terms(n, ts.into_iter().map(|(e, c)| (Monomial(e), c))).unwrap())
    }

    proptest! {
        #[test]
        fn dehomogenize_inverts_homogenize(f in arb_poly(3, 3), extra in 0u32..2) {
            let r = f.degree() + extra;
            let h = f.homogenize(r).unwrap();
            prop_assert!(h.is_homogeneous());
            prop_assert!(h.is_zero() || h.degree() == r);
            prop_assert_eq!(h.dehomogenize().unwrap(), f);
        }

        #[test]
        fn coeff_vector_linear_and_invertible(
            f in arb_poly(2, 3), g in arb_poly(2, 3), a in arb_rational(), b in arb_rational()
        ) {
            let lhs = (&f.scale(&a) + &g.scale(&b)).coeff_vector(3).unwrap();
            let fv = f.coeff_vector(3).unwrap();
            let gv = g.coeff_vector(3).unwrap();
            let rhs: Vec<FieldElem> = fv.iter().zip(&gv).map(|(x, y)| &(x * &a) + &(y * &b)).collect();
            prop_assert_eq!(&lhs, &rhs);
            prop_assert_eq!(Poly::from_coeff_vector(2, 3, &fv).unwrap(), f);
        }

        #[test]
        fn homogeneous_scaling(f in arb_poly(2, 3), a in arb_rational(), p in proptest::collection::vec(arb_rational(), 2)) {
            let h = f.homogenize(3).unwrap();
            let mut pt = p.clone();
            pt.push(FieldElem::from_int(1));
            let scaled: Vec<FieldElem> = pt.iter().map(|v| v * &a).collect();
            let lhs = h.eval(&scaled).unwrap();
            let rhs = &a.pow(3) * &h.eval(&pt).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn ring_laws(f in arb_poly(2, 2), g in arb_poly(2, 2), h in arb_poly(2, 2)) {
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
            prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
            prop_assert!((&f - &f).is_zero());
        }
    }
}
