//! Evaluation maps and elusive tuples: deciding whether finitely many points
//! can all lie on the image of a single degree-`r` map out of `F^s`.

mod construct;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::groebner::{solvable_system, Budget};
use crate::interp::lattice_values;
use crate::poly::{dim_pol, monomials_up_to, Monomial, Poly, PolyMap};

pub use construct::{
    build_elusive_map, det_hard_polynomial, effective_degree_bound, elusive_k_bound,
    flatten_to_scalar, klps_point, moment_curve, raz_lift, schedule_c45, schedule_super,
    BasisKind, C45Schedule, DetHardCertificate, DetHardPolynomial, ElusiveCertificate, ElusiveMap,
    ElusiveSpec, FieldKind, KlpsPoint, SuperSchedule,
};

/// Shape of `Ev^k_{r,s,m} : Pol^r(F^s, F^m) × (F^s)^k → (F^m)^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvMapSpec {
    pub k: usize,
    pub r: u32,
    pub s: usize,
    pub m: usize,
}

impl EvMapSpec {
    pub fn new(k: usize, r: u32, s: usize, m: usize) -> Result<Self> {
        if k == 0 || m == 0 {
            return Err(Error::InvalidParams("k and m must be positive".into()));
        }
        Ok(EvMapSpec { k, r, s, m })
    }

    /// Coefficients of the map: `m · C(s+r, s)`.
    pub fn map_unknowns(&self) -> usize {
        self.m * dim_pol(self.s, self.r as usize)
    }

    /// Source dimension of the evaluation map.
    pub fn unknowns(&self) -> usize {
        self.map_unknowns() + self.k * self.s
    }

    /// Symbolic evaluation map. Variables: the coefficients of each
    /// component (component-major, monomials lex ascending), then the `k`
    /// points. Output is point-major.
    pub fn symbolic(&self) -> PolyMap {
        let monos = monomials_up_to(self.s, self.r);
        let b = monos.len();
        let nv = self.unknowns();
        let base = self.map_unknowns();
        let mut comps = Vec::with_capacity(self.k * self.m);
        for i in 0..self.k {
            for l in 0..self.m {
                let mut p = Poly::zero(nv);
                for (a, alpha) in monos.iter().enumerate() {
                    let mut e = vec![0u32; nv];
                    e[l * b + a] = 1;
                    for (t, &x) in alpha.iter().enumerate() {
                        e[base + i * self.s + t] = x;
                    }
                    p.add_term(Monomial(e), FieldElem::one());
                }
                comps.push(p);
            }
        }
        PolyMap::new(comps).expect("nonempty, equal arity")
    }
}

/// `Ev(g, pts)`, flattened point-major.
pub fn ev_map(spec: &EvMapSpec, g: &PolyMap, pts: &[Vec<FieldElem>]) -> Result<Vec<FieldElem>> {
    if g.nvars() != spec.s {
        return Err(Error::DimensionMismatch {
            expected: spec.s,
            got: g.nvars(),
        });
    }
    if g.len() != spec.m {
        return Err(Error::DimensionMismatch {
            expected: spec.m,
            got: g.len(),
        });
    }
    if g.degree() > spec.r {
        return Err(Error::DegreeTooHigh {
            degree: g.degree() as usize,
            bound: spec.r as usize,
        });
    }
    if pts.len() != spec.k {
        return Err(Error::LengthMismatch {
            expected: spec.k,
            got: pts.len(),
        });
    }
    let mut out = Vec::with_capacity(spec.k * spec.m);
    for p in pts {
        out.extend(g.eval(p)?);
    }
    Ok(out)
}

/// An ordered `k`-tuple of points in `F^m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KTuple {
    m: usize,
    points: Vec<Vec<FieldElem>>,
}

impl KTuple {
    pub fn new(points: Vec<Vec<FieldElem>>) -> Result<Self> {
        let m = points
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::InvalidParams("empty tuple".into()))?;
        if m == 0 {
            return Err(Error::InvalidParams("points must have positive dimension".into()));
        }
        for p in &points {
            if p.len() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    got: p.len(),
                });
            }
        }
        Ok(KTuple { m, points })
    }

    /// Splits a point-major flat vector into `k` points of `F^m`.
    pub fn from_flat(m: usize, flat: &[FieldElem]) -> Result<Self> {
        if m == 0 || flat.is_empty() || !flat.len().is_multiple_of(m) {
            return Err(Error::LengthMismatch {
                expected: m,
                got: flat.len(),
            });
        }
        Self::new(flat.chunks(m).map(<[FieldElem]>::to_vec).collect())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Vec<FieldElem>] {
        &self.points
    }

    pub fn flattened(&self) -> Vec<FieldElem> {
        self.points.iter().flatten().cloned().collect()
    }
}

/// Decides `(s, r)`-elusiveness of `tuple` exactly: the tuple is elusive iff
/// the system `g(a_i) = b_i` in the coefficients of `g` and the preimages
/// `a_i` has no complex solution.
pub fn is_elusive_bruteforce(tuple: &KTuple, s: usize, r: u32, budget: &Budget) -> Result<bool> {
    if s == 0 || r == 0 {
        // images of constant maps are single points
        let first = &tuple.points[0];
        return Ok(tuple.points.iter().any(|p| p != first));
    }
    let spec = EvMapSpec::new(tuple.k(), r, s, tuple.m)?;
    let ev = spec.symbolic();
    let eqs: Vec<Poly> = ev
        .components()
        .iter()
        .zip(tuple.flattened())
        .map(|(e, b)| e - &Poly::constant(e.nvars(), b))
        .collect();
    Ok(!solvable_system(&eqs, budget)?.solvable)
}

fn det_by_expansion(a: &[Vec<FieldElem>]) -> FieldElem {
    fn rec(a: &[Vec<FieldElem>], row: usize, cols: &mut Vec<usize>) -> FieldElem {
        if row == a.len() {
            return FieldElem::one();
        }
        let mut acc = FieldElem::zero();
        for pos in 0..cols.len() {
            let c = cols.remove(pos);
            if !a[row][c].is_zero() {
                let t = &a[row][c] * &rec(a, row + 1, cols);
                acc = if pos % 2 == 0 { &acc + &t } else { &acc - &t };
            }
            cols.insert(pos, c);
        }
        acc
    }
    rec(a, 0, &mut (0..a.len()).collect())
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Largest number of minors [`is_elusive_affine`] will expand.
pub const MINOR_CAP: usize = 100_000;

/// `(s, 1)`-elusiveness: the image of an affine map `F^s → F^m` is an affine
/// subspace of dimension `<= s`, so the tuple is elusive iff its affine span
/// has dimension `> s`. Decided through `(s+1)`-minors of the difference
/// matrix, which only needs ring operations and so stays cheap over large
/// cyclotomic composita.
pub fn is_elusive_affine(tuple: &KTuple, s: usize) -> Result<bool> {
    let base = &tuple.points[0];
    let diffs: Vec<Vec<FieldElem>> = tuple.points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    let t = s + 1;
    if diffs.len() < t || tuple.m < t {
        return Ok(false);
    }
    let rows = subsets(diffs.len(), t);
    let cols = subsets(tuple.m, t);
    if rows.len().saturating_mul(cols.len()) > MINOR_CAP {
        return Err(Error::ResourceBudgetExceeded(format!(
            "{} minors exceed cap {MINOR_CAP}",
            rows.len() * cols.len()
        )));
    }
    for rs in &rows {
        for cs in &cols {
            let minor: Vec<Vec<FieldElem>> = rs
                .iter()
                .map(|&i| cs.iter().map(|&j| diffs[i][j].clone()).collect())
                .collect();
            if !det_by_expansion(&minor).is_zero() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Values of `f` on the simplex lattice `S_{n, deg f}`, as a tuple.
pub fn lattice_tuple(f: &PolyMap) -> Result<KTuple> {
    KTuple::new(lattice_values(f, f.degree())?)
}

/// Whether `f` is strongly `(s, r)`-elusive: its lattice values already form
/// an `(s, r)`-elusive tuple.
pub fn strong_elusiveness(f: &PolyMap, r: u32, s: usize, budget: &Budget) -> Result<bool> {
    is_elusive_bruteforce(&lattice_tuple(f)?, s, r, budget)
}

/// Largest `s <= s_max` for which `f` is strongly `(s, r)`-elusive, probing
/// downward. Strong elusiveness is inherited by smaller `s`, so the first
/// success is the answer. `None` means not even `(0, r)` holds, i.e. `f` is
/// constant.
pub fn strong_elusiveness_index(
    f: &PolyMap,
    r: u32,
    s_max: usize,
    budget: &Budget,
) -> Result<Option<usize>> {
    let tuple = lattice_tuple(f)?;
    for s in (0..=s_max).rev() {
        if is_elusive_bruteforce(&tuple, s, r, budget)? {
            return Ok(Some(s));
        }
    }
    Ok(None)
}
