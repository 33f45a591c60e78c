//! Explicit constructions: root-of-unity points off images of rational maps,
//! elusive maps with cyclotomic coefficients, polynomials of large
//! determinantal complexity, Raz lifts and the parameter schedules.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{next_prime, FieldElem, Rational, DEFAULT_PRIME_CAP};
use crate::poly::{from_pseudo, Poly, PolyMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldKind {
    Complex,
    Real,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisKind {
    Monomial,
    PseudoMonomial,
}

fn big_binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `⌈(m · C(s+r, s) + 1) / (m − s)⌉`.
fn k_bound_big(s: u64, r: u64, m: u64) -> Result<BigUint> {
    if s >= m {
        return Err(Error::InvalidParams(format!(
            "need s < m, got s = {s}, m = {m}"
        )));
    }
    let num = big_binomial(s + r, s) * m + 1u32;
    let den = BigUint::from(m - s);
    Ok((num + &den - 1u32) / den)
}

/// Least `K` for which a dimension count guarantees an `(s, r)`-elusive
/// `K`-tuple in `F^m`.
pub fn elusive_k_bound(s: usize, r: u32, m: usize) -> Result<u128> {
    k_bound_big(s as u64, r as u64, m as u64)?
        .to_u128()
        .ok_or_else(|| Error::InvalidParams("bound does not fit in 128 bits".into()))
}

/// `D(m, r) = (m+1)(m+2)(r^m + 1)^{m+2}`: some nonzero element of the
/// elimination ideal of a degree-`r` map into `F^m` has degree at most this.
pub fn effective_degree_bound(m: u64, r: u64) -> BigUint {
    let m32 = u32::try_from(m).expect("m fits in u32");
    let inner = BigUint::from(r).pow(m32) + 1u32;
    BigUint::from(m + 1) * (m + 2) * inner.pow(m32 + 2)
}

fn proven_threshold(degree_bound: &BigUint, field: FieldKind) -> BigUint {
    match field {
        FieldKind::Complex => degree_bound + 2u32,
        FieldKind::Real => degree_bound * 2u32 + 3u32,
    }
}

struct PrimeRun {
    primes: Vec<u64>,
    threshold: u64,
    meets_proven: bool,
}

/// `count` consecutive primes from the threshold up. Without an override the
/// proven threshold is used and must fit under the cap.
fn prime_run(count: usize, proven: &BigUint, threshold: Option<u64>) -> Result<PrimeRun> {
    let cap = DEFAULT_PRIME_CAP;
    let start = match threshold {
        Some(t) => t,
        None => proven.to_u64().filter(|&t| t <= cap).ok_or_else(|| Error::PrimeCapExceeded {
            prime: proven.to_string(),
            cap,
        })?,
    };
    // ζ_2 = -1 is rational, so the smallest usable prime is 3
    let start = start.max(3);
    let mut primes = Vec::with_capacity(count);
    let mut next = start;
    for _ in 0..count {
        let p = next_prime(next);
        if p > cap {
            return Err(Error::PrimeCapExceeded {
                prime: p.to_string(),
                cap,
            });
        }
        primes.push(p);
        next = p + 1;
    }
    Ok(PrimeRun {
        primes,
        threshold: start,
        meets_proven: BigUint::from(start) >= *proven,
    })
}

fn root_coordinate(p: u64, field: FieldKind) -> Result<FieldElem> {
    let z = FieldElem::zeta(p)?;
    Ok(match field {
        FieldKind::Complex => z,
        FieldKind::Real => &z + &z.conj(),
    })
}

/// A point with root-of-unity coordinates off the image of every rational
/// degree-`r` map out of `F^s`, when the primes meet the proven threshold.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KlpsPoint {
    pub point: Vec<FieldElem>,
    pub primes: Vec<u64>,
    pub threshold: u64,
    pub proven_threshold: String,
    pub meets_proven_threshold: bool,
    pub field: FieldKind,
}

/// Builds `(b̃^1, …, b̃^{s+1}, tail)` with `b̃^i = Σ_{j<=i} mixing[i][j] b^j`
/// and `b^j = ζ_{p_j}` (complex) or `ζ_{p_j} + conj ζ_{p_j}` (real). The
/// default mixing is the identity.
pub fn klps_point(
    s: usize,
    m: usize,
    degree_bound: &BigUint,
    mixing: Option<&[Vec<Rational>]>,
    tail: &[Rational],
    field: FieldKind,
    threshold: Option<u64>,
) -> Result<KlpsPoint> {
    if s + 1 > m {
        return Err(Error::InvalidParams(format!("need s < m, got s = {s}, m = {m}")));
    }
    if tail.len() != m - s - 1 {
        return Err(Error::LengthMismatch {
            expected: m - s - 1,
            got: tail.len(),
        });
    }
    if let Some(a) = mixing {
        if a.len() != s + 1 || a.iter().any(|row| row.len() != s + 1) {
            return Err(Error::InvalidParams(format!(
                "mixing matrix must be {0}x{0}",
                s + 1
            )));
        }
        for (i, row) in a.iter().enumerate() {
            if row[i].is_zero() || row[i + 1..].iter().any(|c| !c.is_zero()) {
                return Err(Error::InvalidParams(
                    "mixing matrix must be lower triangular with nonzero diagonal".into(),
                ));
            }
        }
    }
    let proven = proven_threshold(degree_bound, field);
    let run = prime_run(s + 1, &proven, threshold)?;
    let roots = run
        .primes
        .iter()
        .map(|&p| root_coordinate(p, field))
        .collect::<Result<Vec<_>>>()?;
    let mut point = Vec::with_capacity(m);
    for i in 0..=s {
        let v = match mixing {
            None => roots[i].clone(),
            Some(a) => roots[..=i]
                .iter()
                .zip(&a[i])
                .fold(FieldElem::zero(), |acc, (b, c)| &acc + &b.scale(c)),
        };
        point.push(v);
    }
    point.extend(tail.iter().cloned().map(FieldElem::Rational));
    Ok(KlpsPoint {
        point,
        primes: run.primes,
        threshold: run.threshold,
        proven_threshold: proven.to_string(),
        meets_proven_threshold: run.meets_proven,
        field,
    })
}

/// Parameters of an elusive map `F^n → F^m` of degree `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElusiveSpec {
    pub n: usize,
    pub p: u32,
    pub s: usize,
    pub r: u32,
    pub m: usize,
    pub field: FieldKind,
    pub basis: BasisKind,
    /// Must equal `C(n+p, n)` when given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    /// Smallest prime allowed. Defaults to the proven threshold; anything
    /// lower makes the result heuristic.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElusiveCertificate {
    pub k: usize,
    pub k_bound: String,
    /// `primes[j][i]` feeds coefficient `i` (lex ascending) of component `j`.
    pub primes: Vec<Vec<u64>>,
    pub basis: BasisKind,
    pub field: FieldKind,
    pub threshold: u64,
    pub proven_threshold: String,
    pub meets_proven_threshold: bool,
    /// Primes below the proven threshold: elusiveness is not guaranteed and
    /// has to be checked directly.
    pub heuristic: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElusiveMap {
    pub map: PolyMap,
    pub certificate: ElusiveCertificate,
}

/// Map whose (pseudo-)monomial coefficients, lex ascending from the constant
/// term, are roots of unity of pairwise distinct primes (real parts over the
/// reals).
pub fn build_elusive_map(spec: &ElusiveSpec) -> Result<ElusiveMap> {
    let ElusiveSpec { n, p, s, r, m, field, basis, .. } = *spec;
    if m == 0 {
        return Err(Error::InvalidParams("m must be positive".into()));
    }
    let k_big = big_binomial((n as u64) + p as u64, n as u64);
    let k = k_big
        .to_usize()
        .filter(|&k| k <= 1_000_000)
        .ok_or_else(|| Error::InvalidParams("too many coefficients".into()))?;
    if let Some(given) = spec.k {
        if given != k {
            return Err(Error::InvalidParams(format!(
                "K must equal C(n+p, n) = {k}, got {given}"
            )));
        }
    }
    let bound = k_bound_big(s as u64, r as u64, m as u64)?;
    if k_big < bound {
        return Err(Error::InvalidParams(format!(
            "C(n+p, n) = {k} is below the elusiveness bound {bound}"
        )));
    }
    let proven = proven_threshold(&effective_degree_bound(m as u64, r as u64), field);
    let run = prime_run(k * m, &proven, spec.threshold)?;
    let grid: Vec<Vec<u64>> = run.primes.chunks(k).map(<[u64]>::to_vec).collect();
    let comps = grid
        .iter()
        .map(|row| {
            let coeffs = row
                .iter()
                .map(|&q| {
                    let z = FieldElem::zeta(q)?;
                    Ok(match field {
                        FieldKind::Complex => z,
                        FieldKind::Real => z.real_part(),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            match basis {
                BasisKind::Monomial => Poly::from_coeff_vector(n, p, &coeffs),
                BasisKind::PseudoMonomial => from_pseudo(n, p, &coeffs),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ElusiveMap {
        map: PolyMap::new(comps)?,
        certificate: ElusiveCertificate {
            k,
            k_bound: bound.to_string(),
            primes: grid,
            basis,
            field,
            threshold: run.threshold,
            proven_threshold: proven.to_string(),
            meets_proven_threshold: run.meets_proven,
            heuristic: !run.meets_proven,
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetHardCertificate {
    pub n: usize,
    pub m: usize,
    pub r: u32,
    pub field: FieldKind,
    pub primes: Vec<u64>,
    pub threshold: u64,
    pub proven_threshold: String,
    pub meets_proven_threshold: bool,
    /// The determinantal complexity lower bound the construction claims.
    pub claimed_lower_bound: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DetHardPolynomial {
    pub poly: Poly,
    pub certificate: DetHardCertificate,
}

/// Degree-`r` polynomial in `n` variables whose coefficient at the monomial
/// of lex rank `i` is the `i`-th coordinate of a root-of-unity point off the
/// image of the determinantal parametrization of size `m`. Coordinates past
/// the first `(n+1)m² + 1` are the rational tail, all ones.
pub fn det_hard_polynomial(
    n: usize,
    m: usize,
    r: u32,
    field: FieldKind,
    threshold: Option<u64>,
) -> Result<DetHardPolynomial> {
    if n == 0 || m == 0 || r == 0 {
        return Err(Error::InvalidParams("n, m, r must be positive".into()));
    }
    let dim = big_binomial(r as u64 + n as u64, n as u64);
    let params = (n + 1) * m * m;
    if dim < BigUint::from(params + 1) {
        return Err(Error::InvalidParams(format!(
            "need C(r+n, n) - 1 >= (n+1)m^2 = {params}, got C(r+n, n) = {dim}"
        )));
    }
    let dim = dim
        .to_usize()
        .filter(|&d| d <= 1_000_000)
        .ok_or_else(|| Error::InvalidParams("too many coefficients".into()))?;
    let degree_bound = effective_degree_bound(params as u64, m as u64);
    let tail = vec![Rational::one(); dim - params - 1];
    let pt = klps_point(params, dim, &degree_bound, None, &tail, field, threshold)?;
    let poly = Poly::from_coeff_vector(n, r, &pt.point)?;
    Ok(DetHardPolynomial {
        poly,
        certificate: DetHardCertificate {
            n,
            m,
            r,
            field,
            primes: pt.primes,
            threshold: pt.threshold,
            proven_threshold: pt.proven_threshold,
            meets_proven_threshold: pt.meets_proven_threshold,
            claimed_lower_bound: m + 1,
        },
    })
}

/// `f̃_i(X, Z) = Σ_j f_{ji}(X) Z_j` with `f_{ji}` the component `j·n + i`.
pub fn raz_lift(f: &PolyMap) -> Result<PolyMap> {
    let len = f.len();
    let n = (len as f64).sqrt().round() as usize;
    if n * n != len {
        return Err(Error::NotASquare(len));
    }
    if f.nvars() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: f.nvars(),
        });
    }
    let comps = (0..n)
        .map(|i| {
            (0..n).fold(Poly::zero(2 * n), |acc, j| {
                let fji = f.components()[j * n + i].embed(2 * n, 0);
                &acc + &(&fji * &Poly::var(2 * n, n + j))
            })
        })
        .collect();
    PolyMap::new(comps)
}

/// `f̂(X, Z, Y) = Σ_i f̃_i(X, Z) Y_i`.
pub fn flatten_to_scalar(ft: &PolyMap) -> Result<Poly> {
    let n = ft.len();
    if ft.nvars() != 2 * n {
        return Err(Error::DimensionMismatch {
            expected: 2 * n,
            got: ft.nvars(),
        });
    }
    let total = 3 * n;
    Ok(ft
        .components()
        .iter()
        .enumerate()
        .fold(Poly::zero(total), |acc, (i, fi)| {
            &acc + &(&fi.embed(total, 0) * &Poly::var(total, 2 * n + i))
        }))
}

/// `t ↦ (t, t², …, t^m)`.
pub fn moment_curve(m: usize) -> Result<PolyMap> {
    if m == 0 {
        return Err(Error::InvalidParams("m must be positive".into()));
    }
    PolyMap::new((1..=m as u32).map(|e| Poly::var(1, 0).pow(e)).collect())
}

/// Parameters for depth-`r` circuit lower bounds from elusive maps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct C45Schedule {
    pub n: u64,
    pub p: u64,
    pub m: u64,
    pub s: u64,
    /// `n² / (50 r²)`, recorded as claimed, not verified.
    pub claimed_size_bound: String,
    /// `s = 0` gives no elusiveness beyond nonconstancy.
    pub degenerate_s: bool,
}

/// `(n, p, m, s) = (5n′r, 5r, n′², ⌊n′²/2⌋)` for `n′ >= r²`.
pub fn schedule_c45(n_prime: u64, r: u64) -> Result<C45Schedule> {
    if r == 0 || n_prime == 0 {
        return Err(Error::InvalidParams("n' and r must be positive".into()));
    }
    if n_prime < r * r {
        return Err(Error::InvalidParams(format!(
            "need n' >= r^2, got n' = {n_prime}, r = {r}"
        )));
    }
    let n = 5 * n_prime * r;
    let m = n_prime * n_prime;
    let s = m / 2;
    let bound = Rational::new((n * n).into(), (50 * r * r).into());
    Ok(C45Schedule {
        n,
        p: 5 * r,
        m,
        s,
        claimed_size_bound: bound.to_string(),
        degenerate_s: s == 0,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuperSchedule {
    pub s: u64,
    pub m: u64,
    pub p: u64,
    pub r: u64,
    /// `(n + r − 4)^4 >= r!`, required by the construction.
    pub side_condition: bool,
    /// `C(n+p, n) >= ⌈(m C(s+r, s) + 1)/(m − s)⌉`.
    pub k_condition: bool,
}

/// `s = ⌊n/((r′−1)r′)⌋^{r′−3}`, `m = n C(n−1+r′, r′)`, `p = (r′−1)(2r′−1)`,
/// `r = 2r′ − 1`.
pub fn schedule_super(n: u64, r_prime: u64) -> Result<SuperSchedule> {
    if r_prime < 4 {
        return Err(Error::InvalidParams(format!("need r' >= 4, got {r_prime}")));
    }
    if n == 0 {
        return Err(Error::InvalidParams("n must be positive".into()));
    }
    let too_big = || Error::InvalidParams("schedule value does not fit in 64 bits".into());
    let r = 2 * r_prime - 1;
    let p = (r_prime - 1) * (2 * r_prime - 1);
    let s = (n / ((r_prime - 1) * r_prime))
        .checked_pow((r_prime - 3) as u32)
        .ok_or_else(too_big)?;
    let m = (big_binomial(n - 1 + r_prime, r_prime) * n)
        .to_u64()
        .ok_or_else(too_big)?;
    let lhs = BigUint::from(n + r - 4).pow(4);
    let fact: BigUint = (1..=r).map(BigUint::from).product();
    let side_condition = lhs >= fact;
    if !side_condition {
        return Err(Error::InvalidParams(format!(
            "(n + r - 4)^4 >= r! fails for n = {n}, r = {r}"
        )));
    }
    let k_condition = s < m && big_binomial(n + p, n) >= k_bound_big(s, r, m)?;
    Ok(SuperSchedule {
        s,
        m,
        p,
        r,
        side_condition,
        k_condition,
    })
}
