//! Elements of multi-prime cyclotomic fields `Q(ζ_{p_1}, …, ζ_{p_t})`.
//!
//! An element is stored over the tensor power basis
//! `ζ_{p_1}^{e_1} ⋯ ζ_{p_t}^{e_t}` with `0 <= e_i <= p_i - 2`. Because the
//! primes are distinct the field degree is `∏ (p_i - 1)` and this basis is a
//! genuine `Q`-basis, so the stored form is canonical once zero coefficients
//! are dropped and primes that no term uses are removed from the prime list.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::primes::is_prime;
use super::FieldElem;
use crate::error::{Error, Result};

/// Default upper bound on primes admitted into cyclotomic arithmetic.
pub const DEFAULT_PRIME_CAP: u64 = 1_000_000;

/// Field degree above which generic (non-monomial) inversion and
/// minimal-polynomial computations are refused.
pub const DENSE_DEGREE_CAP: u128 = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycloElem {
    primes: Vec<u64>,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

type TermMap = BTreeMap<Vec<u32>, BigRational>;

fn add_into(map: &mut TermMap, key: Vec<u32>, c: &BigRational) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&key) {
        Some(v) => {
            *v += c;
            if v.is_zero() {
                map.remove(&key);
            }
        }
        None => {
            map.insert(key, c.clone());
        }
    }
}

fn union_primes(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out: Vec<u64> = a.iter().chain(b.iter()).copied().collect();
    out.sort_unstable();
    out.dedup();
    out
}

impl CycloElem {
    pub fn zero() -> Self {
        CycloElem {
            primes: Vec::new(),
            terms: BTreeMap::new(),
        }
    }

    pub fn from_rational(q: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(Vec::new(), q);
        }
        CycloElem {
            primes: Vec::new(),
            terms,
        }
    }

    /// The primitive `p`-th root of unity `e^{2πi/p}`, for `3 <= p <= DEFAULT_PRIME_CAP`.
    pub fn root_of_unity(p: u64) -> Result<Self> {
        Self::root_of_unity_capped(p, DEFAULT_PRIME_CAP)
    }

    pub fn root_of_unity_capped(p: u64, cap: u64) -> Result<Self> {
        Self::zeta_power_capped(p, 1, cap)
    }

    /// `ζ_p^k` for any integer exponent `k`.
    pub fn zeta_power(p: u64, k: i64) -> Result<Self> {
        Self::zeta_power_capped(p, k, DEFAULT_PRIME_CAP)
    }

    fn zeta_power_capped(p: u64, k: i64, cap: u64) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        if p > cap {
            return Err(Error::PrimeCapExceeded {
                prime: p.to_string(),
                cap,
            });
        }
        let e = k.rem_euclid(p as i64) as u32;
        let mut terms = BTreeMap::new();
        terms.insert(vec![e], BigRational::one());
        Ok(Self::canonical(vec![p], terms))
    }

    /// Builds an element from `(exponents, coefficient)` pairs over the given
    /// primes. Exponents may range over `0..p_i`; the top power is rewritten
    /// through `1 + ζ + … + ζ^{p-1} = 0`.
    pub fn from_terms<I>(primes: Vec<u64>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, BigRational)>,
    {
        for w in primes.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidParams(
                    "cyclotomic primes must be strictly increasing".into(),
                ));
            }
        }
        for &p in &primes {
            if p < 3 || !is_prime(p) {
                return Err(Error::NotPrime(p.to_string()));
            }
            if p > DEFAULT_PRIME_CAP {
                return Err(Error::PrimeCapExceeded {
                    prime: p.to_string(),
                    cap: DEFAULT_PRIME_CAP,
                });
            }
        }
        let mut map = TermMap::new();
        for (exps, c) in terms {
            if exps.len() != primes.len() {
                return Err(Error::DimensionMismatch {
                    expected: primes.len(),
                    got: exps.len(),
                });
            }
            let key: Vec<u32> = exps
                .iter()
                .zip(&primes)
                .map(|(&e, &p)| (e as u64 % p) as u32)
                .collect();
            add_into(&mut map, key, &c);
        }
        Ok(Self::canonical(primes, map))
    }

    /// Reduces group-ring exponents (`0..p`) to the power basis and drops
    /// unused primes.
    fn canonical(primes: Vec<u64>, mut map: TermMap) -> Self {
        for (i, &p) in primes.iter().enumerate() {
            let top = (p - 1) as u32;
            if !map.keys().any(|k| k[i] == top) {
                continue;
            }
            let mut next = TermMap::new();
            for (key, c) in map {
                if key[i] == top {
                    let neg = -c;
                    for e in 0..top {
                        let mut k2 = key.clone();
                        k2[i] = e;
                        add_into(&mut next, k2, &neg);
                    }
                } else {
                    add_into(&mut next, key, &c);
                }
            }
            map = next;
        }
        map.retain(|_, c| !c.is_zero());
        let used: Vec<bool> = (0..primes.len())
            .map(|i| map.keys().any(|k| k[i] != 0))
            .collect();
        if used.iter().all(|&u| u) {
            return CycloElem { primes, terms: map };
        }
        let keep: Vec<usize> = (0..primes.len()).filter(|&i| used[i]).collect();
        let primes = keep.iter().map(|&i| primes[i]).collect();
        let terms = map
            .into_iter()
            .map(|(k, c)| (keep.iter().map(|&i| k[i]).collect(), c))
            .collect();
        CycloElem { primes, terms }
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Iterates `(exponents, coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(q)` when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if !self.primes.is_empty() {
            return None;
        }
        Some(
            self.terms
                .get(&Vec::new())
                .cloned()
                .unwrap_or_else(BigRational::zero),
        )
    }

    /// `[Q(ζ_{p_1}, …, ζ_{p_t}) : Q]` for the element's own prime list.
    pub fn field_degree(&self) -> u128 {
        self.primes
            .iter()
            .fold(1u128, |acc, &p| acc.saturating_mul((p - 1) as u128))
    }

    fn embed(&self, target: &[u64]) -> TermMap {
        if self.primes == target {
            return self.terms.clone();
        }
        let idx: Vec<usize> = self
            .primes
            .iter()
            .map(|p| target.binary_search(p).expect("target contains primes"))
            .collect();
        self.terms
            .iter()
            .map(|(k, c)| {
                let mut key = vec![0u32; target.len()];
                for (j, &e) in k.iter().enumerate() {
                    key[idx[j]] = e;
                }
                (key, c.clone())
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        let primes = union_primes(&self.primes, &other.primes);
        let mut map = self.embed(&primes);
        for (k, c) in other.embed(&primes) {
            add_into(&mut map, k, &c);
        }
        Self::canonical(primes, map)
    }

    pub fn neg(&self) -> Self {
        CycloElem {
            primes: self.primes.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        CycloElem {
            primes: self.primes.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c * q)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let primes = union_primes(&self.primes, &other.primes);
        let a = self.embed(&primes);
        let b = other.embed(&primes);
        let mut map = TermMap::new();
        for (ka, ca) in &a {
            for (kb, cb) in &b {
                let key: Vec<u32> = ka
                    .iter()
                    .zip(kb)
                    .zip(&primes)
                    .map(|((&x, &y), &p)| ((x as u64 + y as u64) % p) as u32)
                    .collect();
                add_into(&mut map, key, &(ca * cb));
            }
        }
        Self::canonical(primes, map)
    }

    /// Complex conjugation, `ζ_p ↦ ζ_p^{p-1}`, extended multiplicatively.
    pub fn conj(&self) -> Self {
        let mut map = TermMap::new();
        for (k, c) in &self.terms {
            let key: Vec<u32> = k
                .iter()
                .zip(&self.primes)
                .map(|(&e, &p)| ((p - e as u64) % p) as u32)
                .collect();
            add_into(&mut map, key, c);
        }
        Self::canonical(self.primes.clone(), map)
    }

    /// `(e + conj(e)) / 2`.
    pub fn real_part(&self) -> Self {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        self.add(&self.conj()).scale(&half)
    }

    pub fn inv(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(FieldElem::Rational(q.recip()));
        }
        if self.terms.len() == 1 {
            let (k, c) = self.terms.iter().next().unwrap();
            let mut map = TermMap::new();
            let key = k
                .iter()
                .zip(&self.primes)
                .map(|(&e, &p)| ((p - e as u64) % p) as u32)
                .collect();
            map.insert(key, c.recip());
            return Ok(FieldElem::from_cyclo(Self::canonical(
                self.primes.clone(),
                map,
            )));
        }
        let degree = self.field_degree();
        if degree > DENSE_DEGREE_CAP {
            return Err(Error::FieldTooLarge {
                degree,
                cap: DENSE_DEGREE_CAP,
            });
        }
        self.inv_tower()
    }

    /// Inversion in `K(ζ_p)` with `p` the largest prime, by the extended
    /// Euclidean algorithm against `Φ_p` over the subfield `K`.
    fn inv_tower(&self) -> Result<FieldElem> {
        let t = self.primes.len();
        let p = self.primes[t - 1];
        let sub_primes = self.primes[..t - 1].to_vec();
        let deg = (p - 1) as usize;
        // coefficients in ζ_p, each an element of the subfield
        let mut parts: Vec<TermMap> = vec![TermMap::new(); deg];
        for (k, c) in &self.terms {
            let e = k[t - 1] as usize;
            parts[e].insert(k[..t - 1].to_vec(), c.clone());
        }
        let a: Vec<FieldElem> = parts
            .into_iter()
            .map(|m| FieldElem::from_cyclo(Self::canonical(sub_primes.clone(), m)))
            .collect();
        let phi: Vec<FieldElem> = vec![FieldElem::one(); deg + 1];
        let inv = upoly::inverse_mod(&a, &phi)?;
        let zeta = FieldElem::from_cyclo(Self::root_of_unity_capped(p, u64::MAX)?);
        let mut acc = FieldElem::zero();
        let mut power = FieldElem::one();
        for c in inv {
            acc = &acc + &(&c * &power);
            power = &power * &zeta;
        }
        Ok(acc)
    }

    /// Degree over `Q` of the minimal polynomial, i.e. `dim_Q Q[e]`,
    /// found as the first linear dependency among `1, e, e^2, …`.
    pub fn minimal_poly_degree(&self) -> Result<usize> {
        if self.as_rational().is_some() {
            return Ok(1);
        }
        let degree = self.field_degree();
        if degree > DENSE_DEGREE_CAP {
            return Err(Error::FieldTooLarge {
                degree,
                cap: DENSE_DEGREE_CAP,
            });
        }
        let mut basis = EchelonBasis::default();
        let mut power = CycloElem::from_rational(BigRational::one());
        let mut count = 0usize;
        loop {
            let v = power.embed(&self.primes);
            if !basis.insert(v) {
                return Ok(count);
            }
            count += 1;
            power = power.mul(self);
        }
    }

    /// Floating-point image under `ζ_p ↦ e^{2πi/p}`; for sanity checks only.
    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in &self.terms {
            let mut angle = 0.0;
            for (&e, &p) in k.iter().zip(&self.primes) {
                angle += 2.0 * std::f64::consts::PI * e as f64 / p as f64;
            }
            let cf = c.to_f64().unwrap_or(f64::NAN);
            re += cf * angle.cos();
            im += cf * angle.sin();
        }
        (re, im)
    }
}

/// Row-echelon accumulator over `Q` keyed by sparse coordinates.
#[derive(Default)]
struct EchelonBasis {
    rows: BTreeMap<Vec<u32>, TermMap>,
}

impl EchelonBasis {
    /// Returns `false` when `v` is in the span of the rows already present.
    fn insert(&mut self, mut v: TermMap) -> bool {
        loop {
            let Some((pivot, c)) = v.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
                return false;
            };
            match self.rows.get(&pivot) {
                Some(row) => {
                    for (k, rc) in row {
                        add_into(&mut v, k.clone(), &(-(&c * rc)));
                    }
                }
                None => {
                    let inv = c.recip();
                    let row: TermMap = v.into_iter().map(|(k, x)| (k, x * &inv)).collect();
                    self.rows.insert(pivot, row);
                    return true;
                }
            }
        }
    }
}

/// Dense univariate polynomials over [`FieldElem`], low degree first.
mod upoly {
    use super::*;

    fn trim(p: &mut Vec<FieldElem>) {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
    }

    fn sub(a: &[FieldElem], b: &[FieldElem]) -> Vec<FieldElem> {
        let n = a.len().max(b.len());
        let mut out: Vec<FieldElem> = (0..n)
            .map(|i| {
                let x = a.get(i).cloned().unwrap_or_else(FieldElem::zero);
                match b.get(i) {
                    Some(y) => &x - y,
                    None => x,
                }
            })
            .collect();
        trim(&mut out);
        out
    }

    fn mul(a: &[FieldElem], b: &[FieldElem]) -> Vec<FieldElem> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![FieldElem::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
        trim(&mut out);
        out
    }

    fn divmod(a: &[FieldElem], b: &[FieldElem]) -> Result<(Vec<FieldElem>, Vec<FieldElem>)> {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let lc_inv = b[db].inv()?;
        if r.len() < b.len() {
            return Ok((Vec::new(), r));
        }
        let mut q = vec![FieldElem::zero(); r.len() - db];
        while r.len() >= b.len() {
            let shift = r.len() - 1 - db;
            let c = r.last().unwrap() * &lc_inv;
            for (j, y) in b.iter().enumerate() {
                r[shift + j] = &r[shift + j] - &(&c * y);
            }
            q[shift] = c;
            r.pop();
            trim(&mut r);
        }
        trim(&mut q);
        Ok((q, r))
    }

    /// `u` with `u · a ≡ 1 (mod m)`, assuming `gcd(a, m) = 1`.
    pub(super) fn inverse_mod(a: &[FieldElem], m: &[FieldElem]) -> Result<Vec<FieldElem>> {
        let mut r0 = m.to_vec();
        let mut r1 = a.to_vec();
        trim(&mut r1);
        if r1.is_empty() {
            return Err(Error::DivisionByZero);
        }
        let mut s0: Vec<FieldElem> = Vec::new();
        let mut s1: Vec<FieldElem> = vec![FieldElem::one()];
        while !r1.is_empty() {
            let (q, r) = divmod(&r0, &r1)?;
            let s2 = sub(&s0, &mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        if r0.len() != 1 {
            return Err(Error::DivisionByZero);
        }
        let c_inv = r0[0].inv()?;
        Ok(s0.iter().map(|x| x * &c_inv).collect())
    }
}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let factors: Vec<String> = k
                .iter()
                .zip(&self.primes)
                .filter(|(&e, _)| e > 0)
                .map(|(&e, &p)| {
                    if e == 1 {
                        format!("z{p}")
                    } else {
                        format!("z{p}^{e}")
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}
