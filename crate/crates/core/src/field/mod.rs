//! Exact scalars: rationals and multi-prime cyclotomic elements.

mod cyclo;
pub mod primes;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use cyclo::{CycloElem, DEFAULT_PRIME_CAP, DENSE_DEGREE_CAP};
pub use num_rational::BigRational as Rational;
pub use primes::{is_prime, next_prime, next_prime_big, BigPrime};

use crate::error::{Error, Result};

/// A coefficient: either a rational or a genuinely cyclotomic element.
///
/// The `Cyclo` variant never holds an element of `Q`; constructors fold
/// those back into `Rational`, so structural equality is field equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FieldRepr", into = "FieldRepr")]
pub enum FieldElem {
    Rational(Rational),
    Cyclo(CycloElem),
}

impl FieldElem {
    pub fn from_cyclo(c: CycloElem) -> Self {
        match c.as_rational() {
            Some(q) => FieldElem::Rational(q),
            None => FieldElem::Cyclo(c),
        }
    }

    pub fn from_int(n: i64) -> Self {
        FieldElem::Rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        FieldElem::Rational(Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn zeta(p: u64) -> Result<Self> {
        Ok(FieldElem::Cyclo(CycloElem::root_of_unity(p)?))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Rational(q) => q.is_zero(),
            FieldElem::Cyclo(_) => false,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, FieldElem::Rational(q) if q.is_one())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            FieldElem::Rational(q) => Some(q),
            FieldElem::Cyclo(_) => None,
        }
    }

    fn to_cyclo(&self) -> CycloElem {
        match self {
            FieldElem::Rational(q) => CycloElem::from_rational(q.clone()),
            FieldElem::Cyclo(c) => c.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        match self {
            FieldElem::Rational(q) if q.is_zero() => Err(Error::DivisionByZero),
            FieldElem::Rational(q) => Ok(FieldElem::Rational(q.recip())),
            FieldElem::Cyclo(c) => c.inv(),
        }
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = FieldElem::one();
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

    pub fn conj(&self) -> Self {
        match self {
            FieldElem::Rational(_) => self.clone(),
            FieldElem::Cyclo(c) => FieldElem::from_cyclo(c.conj()),
        }
    }

    pub fn real_part(&self) -> Self {
        match self {
            FieldElem::Rational(_) => self.clone(),
            FieldElem::Cyclo(c) => FieldElem::from_cyclo(c.real_part()),
        }
    }

    /// Degree of the minimal polynomial over `Q`.
    pub fn minimal_poly_degree(&self) -> Result<usize> {
        match self {
            FieldElem::Rational(_) => Ok(1),
            FieldElem::Cyclo(c) => c.minimal_poly_degree(),
        }
    }

    /// Primes of the smallest multi-prime cyclotomic field containing `self`.
    pub fn primes(&self) -> &[u64] {
        match self {
            FieldElem::Rational(_) => &[],
            FieldElem::Cyclo(c) => c.primes(),
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        match self {
            FieldElem::Rational(a) => FieldElem::Rational(a * q),
            FieldElem::Cyclo(c) => FieldElem::from_cyclo(c.scale(q)),
        }
    }

    /// Floating-point image (real, imaginary); diagnostics only.
    pub fn to_complex(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        match self {
            FieldElem::Rational(q) => (q.to_f64().unwrap_or(f64::NAN), 0.0),
            FieldElem::Cyclo(c) => c.to_complex(),
        }
    }
}

impl Default for FieldElem {
    fn default() -> Self {
        FieldElem::zero()
    }
}

impl From<Rational> for FieldElem {
    fn from(q: Rational) -> Self {
        FieldElem::Rational(q)
    }
}

impl From<i64> for FieldElem {
    fn from(n: i64) -> Self {
        FieldElem::from_int(n)
    }
}

impl From<CycloElem> for FieldElem {
    fn from(c: CycloElem) -> Self {
        FieldElem::from_cyclo(c)
    }
}

impl<'a> Add<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        match (self, rhs) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a + b),
            _ => FieldElem::from_cyclo(self.to_cyclo().add(&rhs.to_cyclo())),
        }
    }
}

impl<'a> Sub<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        match (self, rhs) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a - b),
            _ => FieldElem::from_cyclo(self.to_cyclo().sub(&rhs.to_cyclo())),
        }
    }
}

impl<'a> Mul<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        match (self, rhs) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a * b),
            (FieldElem::Rational(a), FieldElem::Cyclo(c))
            | (FieldElem::Cyclo(c), FieldElem::Rational(a)) => FieldElem::from_cyclo(c.scale(a)),
            (FieldElem::Cyclo(a), FieldElem::Cyclo(b)) => FieldElem::from_cyclo(a.mul(b)),
        }
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        match self {
            FieldElem::Rational(a) => FieldElem::Rational(-a),
            FieldElem::Cyclo(c) => FieldElem::Cyclo(c.neg()),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: FieldElem) -> FieldElem {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

impl Zero for FieldElem {
    fn zero() -> Self {
        FieldElem::Rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        FieldElem::is_zero(self)
    }
}

impl One for FieldElem {
    fn one() -> Self {
        FieldElem::Rational(Rational::one())
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rational(q) => write!(f, "{q}"),
            FieldElem::Cyclo(c) => write!(f, "{c}"),
        }
    }
}

/// Parses `"p/q"` or `"n"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum FieldRepr {
    Text(String),
    Int(i64),
    Cyclo(CycloRepr),
}

#[derive(Serialize, Deserialize)]
struct CycloRepr {
    primes: Vec<u64>,
    terms: Vec<CycloTermRepr>,
}

#[derive(Serialize, Deserialize)]
struct CycloTermRepr {
    exps: Vec<u32>,
    coeff: String,
}

impl From<FieldElem> for FieldRepr {
    fn from(e: FieldElem) -> Self {
        match e {
            FieldElem::Rational(q) => FieldRepr::Text(q.to_string()),
            FieldElem::Cyclo(c) => FieldRepr::Cyclo(CycloRepr {
                primes: c.primes().to_vec(),
                terms: c
                    .terms()
                    .map(|(k, q)| CycloTermRepr {
                        exps: k.clone(),
                        coeff: q.to_string(),
                    })
                    .collect(),
            }),
        }
    }
}

impl TryFrom<FieldRepr> for FieldElem {
    type Error = Error;
    fn try_from(r: FieldRepr) -> Result<Self> {
        match r {
            FieldRepr::Text(s) => Ok(FieldElem::Rational(parse_rational(&s)?)),
            FieldRepr::Int(n) => Ok(FieldElem::from_int(n)),
            FieldRepr::Cyclo(c) => {
                let terms = c
                    .terms
                    .into_iter()
                    .map(|t| Ok((t.exps, parse_rational(&t.coeff)?)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(FieldElem::from_cyclo(CycloElem::from_terms(c.primes, terms)?))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> FieldElem {
        FieldElem::from_ratio(n, d)
    }

    #[test]
    fn rational_sum() {
        assert_eq!(&q(1, 2) + &q(1, 3), q(5, 6));
    }

    #[test]
    fn zeta3_squared() {
        let z = FieldElem::zeta(3).unwrap();
        let expected = &(-&z) - &FieldElem::one();
        assert_eq!(&z * &z, expected);
        // 1 + z + z^2 = 0
        let s = &(&FieldElem::one() + &z) + &(&z * &z);
        assert!(s.is_zero());
    }

    #[test]
    fn zeta5_inverse_and_fourth_power() {
        let z = FieldElem::zeta(5).unwrap();
        assert!((&z * &z.inv().unwrap()).is_one());
        let mut expected = FieldElem::from_int(-1);
        for k in 1..=3 {
            expected = &expected - &z.pow(k);
        }
        assert_eq!(z.pow(4), expected);
        assert!(z.pow(5).is_one());
    }

    #[test]
    fn not_prime_rejected() {
        assert_eq!(FieldElem::zeta(4), Err(Error::NotPrime("4".into())));
        assert!(FieldElem::zeta(2).is_err());
        assert!(matches!(
            CycloElem::root_of_unity(1_000_003),
            Err(Error::PrimeCapExceeded { .. })
        ));
    }

    #[test]
    fn real_parts() {
        let z3 = FieldElem::zeta(3).unwrap();
        assert_eq!(z3.real_part(), q(-1, 2));
        assert_eq!(q(5, 7).real_part(), q(5, 7));
        let z5 = FieldElem::zeta(5).unwrap();
        let re = z5.real_part();
        assert_eq!(re.minimal_poly_degree().unwrap(), 2);
        let two_re = &(&z5 + &z5.pow(4)) * &q(1, 2);
        assert_eq!(re, two_re);
    }

    #[test]
    fn minimal_degrees() {
        for p in [3u64, 5, 7, 11, 13] {
            let z = FieldElem::zeta(p).unwrap();
            assert_eq!(z.minimal_poly_degree().unwrap(), (p - 1) as usize);
            assert_eq!(
                z.real_part().minimal_poly_degree().unwrap(),
                ((p - 1) / 2) as usize
            );
        }
        assert_eq!(q(3, 4).minimal_poly_degree().unwrap(), 1);
        // ζ3 + ζ5 generates the compositum of degree 8
        let s = &FieldElem::zeta(3).unwrap() + &FieldElem::zeta(5).unwrap();
        assert_eq!(s.minimal_poly_degree().unwrap(), 8);
    }

    #[test]
    fn generic_inverse_in_compositum() {
        let z3 = FieldElem::zeta(3).unwrap();
        let z5 = FieldElem::zeta(5).unwrap();
        let a = &(&z3 + &z5) + &(&(&z3 * &z5) * &q(2, 3));
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
        let c = &FieldElem::from_int(1) + &z5;
        assert!((&c * &c.inv().unwrap()).is_one());
        assert_eq!(FieldElem::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn union_field_matches_numerics() {
        let a = &FieldElem::zeta(3).unwrap() * &q(2, 1);
        let b = &FieldElem::zeta(5).unwrap().pow(2) - &q(1, 3);
        let s = &a + &b;
        assert_eq!(s.primes(), &[3, 5]);
        let (ar, ai) = a.to_complex();
        let (br, bi) = b.to_complex();
        let (sr, si) = s.to_complex();
        assert!((sr - ar - br).abs() < 1e-12 && (si - ai - bi).abs() < 1e-12);
        let p = &a * &b;
        let (pr, pi) = p.to_complex();
        assert!((pr - (ar * br - ai * bi)).abs() < 1e-12);
        assert!((pi - (ar * bi + ai * br)).abs() < 1e-12);
    }

    #[test]
    fn json_roundtrip() {
        let z = &FieldElem::zeta(7).unwrap() * &q(-3, 4);
        let s = serde_json::to_string(&z).unwrap();
        assert_eq!(
            s,
            r#"{"primes":[7],"terms":[{"exps":[1],"coeff":"-3/4"}]}"#
        );
        let back: FieldElem = serde_json::from_str(&s).unwrap();
        assert_eq!(back, z);
        let r: FieldElem = serde_json::from_str("\"5/6\"").unwrap();
        assert_eq!(r, q(5, 6));
        assert_eq!(serde_json::to_string(&q(4, 1)).unwrap(), "\"4\"");
        let i: FieldElem = serde_json::from_str("7").unwrap();
        assert_eq!(i, q(7, 1));
        // non-canonical input with the top exponent folds back to Q
        let folded: FieldElem = serde_json::from_str(
            r#"{"primes":[3],"terms":[{"exps":[0],"coeff":"1"},{"exps":[1],"coeff":"1"},{"exps":[2],"coeff":"1"}]}"#,
        )
        .unwrap();
        assert!(folded.is_zero());
    }
}
