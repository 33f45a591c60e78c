//! Complexity minimization over parametrized families: the least `α` for
//! which `f` lies in the image of the family's `α`-th parametrization,
//! decided by consistency of the coefficient equations.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::decide::solvable_system;
use super::{Budget, BudgetUsed};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly, PolyMap};

/// An indexed family of polynomial parametrizations `P_α : V_α → Pol`.
pub trait ComplexityFamily {
    fn name(&self) -> String;

    /// `α ≤ β` implies image of `P_α` is contained in the image of `P_β`.
    fn monotone(&self) -> bool;

    /// Equations in the parameters `v ∈ V_α` whose common zeros are exactly
    /// the `v` with `P_α(v) = f`.
    fn system(&self, alpha: usize, f: &PolyMap) -> Result<Vec<Poly>>;
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SolveMethod {
    /// A nonzero constant appeared among the equations.
    ConstantEquation,
    /// The system stayed consistent after fixing these unknowns to zero,
    /// which exhibits a solution of the original system.
    Specialization { zeroed: Vec<usize> },
    /// Reduced Gröbner basis of the full system.
    FullBasis { budget_used: BudgetUsed },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchStep {
    pub alpha: usize,
    pub unknowns: usize,
    pub equations: usize,
    pub solvable: bool,
    pub method: SolveMethod,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SearchOutcome {
    Found { alpha: usize, steps: Vec<SearchStep> },
    AboveCap { cap: usize, steps: Vec<SearchStep> },
}

impl SearchOutcome {
    pub fn value(&self) -> Option<usize> {
        match self {
            SearchOutcome::Found { alpha, .. } => Some(*alpha),
            SearchOutcome::AboveCap { .. } => None,
        }
    }

    pub fn steps(&self) -> &[SearchStep] {
        match self {
            SearchOutcome::Found { steps, .. } | SearchOutcome::AboveCap { steps, .. } => steps,
        }
    }
}

/// Number of zero-specialization attempts before the full basis.
const SPECIALIZATION_TRIES: usize = 12;

fn zero_out(eqs: &[Poly], zeroed: &[usize]) -> Vec<Poly> {
    eqs.iter()
        .map(|p| {
            Poly::from_terms(
                p.nvars(),
                p.terms()
                    .filter(|(m, _)| zeroed.iter().all(|&k| m.0[k] == 0))
                    .map(|(m, c)| (m.clone(), c.clone())),
            )
            .expect("same variable count")
        })
        .collect()
}

/// Decides consistency of `eqs`. Cheap sufficient checks run first:
/// a constant equation refutes; a consistent coordinate specialization
/// confirms. Otherwise the full basis decides.
fn decide(eqs: &[Poly], budget: &Budget, seed: u64) -> Result<(bool, SolveMethod)> {
    if eqs.iter().any(|e| e.is_constant() && !e.is_zero()) {
        return Ok((false, SolveMethod::ConstantEquation));
    }
    let n = eqs.first().map(Poly::nvars).unwrap_or(0);
    let mut used: Vec<usize> = (0..n)
        .filter(|&k| eqs.iter().any(|e| e.terms().any(|(m, _)| m.0[k] > 0)))
        .collect();
    let nonzero_eqs = eqs.iter().filter(|e| !e.is_zero()).count();
    if used.len() > nonzero_eqs {
        let spare = used.len() - nonzero_eqs;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let trial_budget = Budget {
            max_reductions: budget.max_reductions / 20,
            ..*budget
        };
        for _ in 0..SPECIALIZATION_TRIES {
            used.shuffle(&mut rng);
            let mut zeroed: Vec<usize> = used[..spare].to_vec();
            zeroed.sort_unstable();
            let spec = zero_out(eqs, &zeroed);
            if spec.iter().any(|e| e.is_constant() && !e.is_zero()) {
                continue;
            }
            match solvable_system(&spec, &trial_budget) {
                Ok(s) if s.solvable => {
                    return Ok((true, SolveMethod::Specialization { zeroed }));
                }
                Ok(_) | Err(Error::ResourceBudgetExceeded(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    let s = solvable_system(eqs, budget)?;
    Ok((
        s.solvable,
        SolveMethod::FullBasis {
            budget_used: s.basis.budget_used(),
        },
    ))
}

/// Ascending scan `α = alpha_min, …, alpha_max` for the first `α` whose
/// system is consistent.
pub fn complexity_search(
    f: &PolyMap,
    family: &dyn ComplexityFamily,
    alpha_min: usize,
    alpha_max: usize,
    budget: &Budget,
    seed: u64,
) -> Result<SearchOutcome> {
    let mut steps = Vec::new();
    for alpha in alpha_min..=alpha_max {
        let eqs = family.system(alpha, f)?;
        let unknowns = eqs.first().map(Poly::nvars).unwrap_or(0);
        let (solvable, method) = decide(&eqs, budget, seed.wrapping_add(alpha as u64))?;
        steps.push(SearchStep {
            alpha,
            unknowns,
            equations: eqs.iter().filter(|e| !e.is_zero()).count(),
            solvable,
            method,
        });
        if solvable {
            return Ok(SearchOutcome::Found { alpha, steps });
        }
    }
    Ok(SearchOutcome::AboveCap {
        cap: alpha_max,
        steps,
    })
}

/// Determinant of a square matrix of polynomials by cofactor expansion.
pub fn det_polynomial(entries: &[Vec<Poly>]) -> Result<Poly> {
    let m = entries.len();
    if m == 0 {
        return Err(Error::InvalidParams("empty matrix".into()));
    }
    let nv = entries[0][0].nvars();
    for row in entries {
        if row.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: row.len(),
            });
        }
    }
    fn rec(entries: &[Vec<Poly>], rows: &[usize], cols: &mut Vec<usize>, nv: usize) -> Poly {
        let Some((&r, rest)) = rows.split_first() else {
            return Poly::one(nv);
        };
        let mut acc = Poly::zero(nv);
        for pos in 0..cols.len() {
            let c = cols.remove(pos);
            let entry = &entries[r][c];
            if !entry.is_zero() {
                let minor = rec(entries, rest, cols, nv);
                let term = entry * &minor;
                acc = if pos % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            cols.insert(pos, c);
        }
        acc
    }
    let rows: Vec<usize> = (0..m).collect();
    let mut cols: Vec<usize> = (0..m).collect();
    Ok(rec(entries, &rows, &mut cols, nv))
}

/// `m ↦ { A^* Det_m : A an affine map F^n → F^{m×m} }`. Unknowns are the
/// constant and linear coefficients of each entry, row-major, `n + 1` per
/// entry.
#[derive(Clone, Copy, Debug, Default)]
pub struct DetFamily;

impl DetFamily {
    /// Generic affine matrix over `Q[u, X]` with unknowns first.
    fn generic_matrix(m: usize, n: usize) -> Vec<Vec<Poly>> {
        let nu = m * m * (n + 1);
        let total = nu + n;
        (0..m)
            .map(|r| {
                (0..m)
                    .map(|c| {
                        let base = (r * m + c) * (n + 1);
                        let mut e = Poly::var(total, base);
                        for i in 0..n {
                            e = &e + &(&Poly::var(total, base + 1 + i) * &Poly::var(total, nu + i));
                        }
                        e
                    })
                    .collect()
            })
            .collect()
    }
}

impl ComplexityFamily for DetFamily {
    fn name(&self) -> String {
        "determinantal".into()
    }

    fn monotone(&self) -> bool {
        true
    }

    fn system(&self, m: usize, f: &PolyMap) -> Result<Vec<Poly>> {
        if f.len() != 1 {
            return Err(Error::InvalidParams(
                "determinantal complexity takes a single polynomial".into(),
            ));
        }
        if m == 0 {
            return Err(Error::InvalidParams("matrix size must be at least 1".into()));
        }
        let f = &f.components()[0];
        let n = f.nvars();
        let nu = m * m * (n + 1);
        let det = det_polynomial(&Self::generic_matrix(m, n))?;
        let mut by_x: BTreeMap<Vec<u32>, Poly> = BTreeMap::new();
        for (mono, c) in det.terms() {
            let (u, x) = mono.0.split_at(nu);
            by_x.entry(x.to_vec())
                .or_insert_with(|| Poly::zero(nu))
                .add_term(Monomial(u.to_vec()), c.clone());
        }
        for (mono, c) in f.terms() {
            by_x.entry(mono.0.clone())
                .or_insert_with(|| Poly::zero(nu))
                .add_term(Monomial::one(nu), -c);
        }
        Ok(by_x.into_values().filter(|p| !p.is_zero()).collect())
    }
}

/// Least `m <= m_max` with `f = det(A(X))` for an affine matrix `A`.
pub fn det_complexity(f: &Poly, m_max: usize, budget: &Budget, seed: u64) -> Result<SearchOutcome> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let map = PolyMap::new(vec![f.clone()])?;
    complexity_search(&map, &DetFamily, 1, m_max, budget, seed)
}

/// Checks `det(A) = f` for an explicit matrix of affine forms.
pub fn is_det_witness(entries: &[Vec<Poly>], f: &Poly) -> Result<bool> {
    if entries.iter().flatten().any(|e| e.degree() > 1) {
        return Ok(false);
    }
    Ok(det_polynomial(entries)? == *f)
}
