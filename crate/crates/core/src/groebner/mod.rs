//! Buchberger's algorithm with the Gebauer–Möller pair criteria.
//!
//! Polynomials are kept internally as term vectors sorted ascending in the
//! working order, so the leading term is the last entry and reduction steps
//! are linear merges.

mod complexity;
mod decide;

use std::cmp::Ordering;

use num_traits::One;
use serde::{Deserialize, Serialize};

pub use complexity::{
    complexity_search, det_complexity, det_polynomial, is_det_witness, ComplexityFamily,
    DetFamily, SearchOutcome, SearchStep, SolveMethod,
};
pub use decide::{
    image_ideal, image_ideal_basis, in_image_over_c, in_zariski_closure, separating_generator,
    solvable_over_c, solvable_system, Solvability,
};

use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::poly::{Monomial, MonomialOrder, Poly};

/// Resource caps for one Gröbner computation. Exceeding any of them aborts
/// with [`Error::ResourceBudgetExceeded`]; a partial result is never returned.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// S-pairs reduced.
    pub max_pairs: usize,
    /// Polynomials held in the working basis.
    pub max_basis: usize,
    /// Terms in any single intermediate polynomial.
    pub max_terms: usize,
    /// Elementary reduction steps across the whole run.
    pub max_reductions: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_pairs: 50_000,
            max_basis: 5_000,
            max_terms: 100_000,
            max_reductions: 5_000_000,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            max_pairs: usize::MAX,
            max_basis: usize::MAX,
            max_terms: usize::MAX,
            max_reductions: u64::MAX,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetUsed {
    pub pairs: usize,
    pub reductions: u64,
    pub peak_basis: usize,
    pub peak_terms: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    nvars: usize,
    generators: Vec<Poly>,
    order: MonomialOrder,
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(nvars: usize, generators: Vec<Poly>, order: MonomialOrder) -> Result<Self> {
        for g in &generators {
            if g.nvars() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    got: g.nvars(),
                });
            }
        }
        Ok(Ideal {
            nvars,
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
            order,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }
}

/// Reduced Gröbner basis, sorted by ascending leading monomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroebnerBasis {
    nvars: usize,
    order: MonomialOrder,
    basis: Vec<Poly>,
    budget_used: BudgetUsed,
}

type Terms = Vec<(Monomial, FieldElem)>;

struct Engine<'a> {
    order: MonomialOrder,
    budget: &'a Budget,
    used: BudgetUsed,
}

fn over(what: &str, cap: impl std::fmt::Display) -> Error {
    Error::ResourceBudgetExceeded(format!("{what} exceeded cap {cap}"))
}

impl<'a> Engine<'a> {
    fn new(order: MonomialOrder, budget: &'a Budget) -> Self {
        Engine {
            order,
            budget,
            used: BudgetUsed::default(),
        }
    }

    fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }

    fn to_terms(&self, p: &Poly) -> Terms {
        let mut t: Terms = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        t.sort_by(|a, b| self.cmp(&a.0, &b.0));
        t
    }

    fn monic(&self, mut t: Terms) -> Terms {
        let lc = t.last().expect("nonzero").1.clone();
        if !lc.is_one() {
            let inv = lc.inv().expect("nonzero leading coefficient");
            for (_, c) in t.iter_mut() {
                *c = &*c * &inv;
            }
        }
        t
    }

    /// `f - c · m · g`, both ascending.
    fn sub_scaled(&mut self, f: &[(Monomial, FieldElem)], c: &FieldElem, m: &Monomial, g: &[(Monomial, FieldElem)]) -> Result<Terms> {
        let mut out = Vec::with_capacity(f.len() + g.len());
        let (mut i, mut j) = (0, 0);
        let shifted = |k: usize| g[k].0.mul(m);
        let mut gj = if g.is_empty() { None } else { Some(shifted(0)) };
        while i < f.len() || gj.is_some() {
            let ord = match (&gj, i < f.len()) {
                (None, _) => Ordering::Less,
                (Some(_), false) => Ordering::Greater,
                (Some(mg), true) => self.cmp(&f[i].0, mg),
            };
            match ord {
                Ordering::Less => {
                    out.push(f[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let mg = gj.take().unwrap();
                    out.push((mg, -&(c * &g[j].1)));
                    j += 1;
                    gj = (j < g.len()).then(|| shifted(j));
                }
                Ordering::Equal => {
                    let mg = gj.take().unwrap();
                    let v = &f[i].1 - &(c * &g[j].1);
                    if !v.is_zero() {
                        out.push((mg, v));
                    }
                    i += 1;
                    j += 1;
                    gj = (j < g.len()).then(|| shifted(j));
                }
            }
        }
        self.used.reductions += 1;
        self.used.peak_terms = self.used.peak_terms.max(out.len());
        if self.used.reductions > self.budget.max_reductions {
            return Err(over("reduction steps", self.budget.max_reductions));
        }
        if out.len() > self.budget.max_terms {
            return Err(over("polynomial length", self.budget.max_terms));
        }
        Ok(out)
    }

    /// Full reduction modulo monic `basis`.
    fn normal_form(&mut self, f: Terms, basis: &[&Terms]) -> Result<Terms> {
        let mut p = f;
        let mut rem: Terms = Vec::new();
        while let Some((lm, lc)) = p.last().cloned() {
            let div = basis.iter().find(|g| g.last().unwrap().0.divides(&lm));
            match div {
                Some(g) => {
                    let q = g.last().unwrap().0.quotient_of(&lm);
                    p = self.sub_scaled(&p, &lc, &q, g)?;
                }
                None => {
                    p.pop();
                    rem.push((lm, lc));
                }
            }
        }
        rem.reverse();
        Ok(rem)
    }

    fn spoly(&mut self, f: &Terms, g: &Terms) -> Result<Terms> {
        let lf = &f.last().unwrap().0;
        let lg = &g.last().unwrap().0;
        let l = lf.lcm(lg);
        let uf = lf.quotient_of(&l);
        let ug = lg.quotient_of(&l);
        let fu: Terms = f.iter().map(|(m, c)| (m.mul(&uf), c.clone())).collect();
        self.sub_scaled(&fu, &FieldElem::one(), &ug, g)
    }
}

fn lm(t: &Terms) -> &Monomial {
    &t.last().unwrap().0
}

fn is_constant(t: &Terms) -> bool {
    t.len() == 1 && t[0].0.is_one()
}

/// Computes the reduced Gröbner basis of `ideal` within `budget`.
pub fn buchberger(ideal: &Ideal, budget: &Budget) -> Result<GroebnerBasis> {
    let n = ideal.nvars;
    let mut eng = Engine::new(ideal.order, budget);
    let mut store: Vec<Terms> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();

    let unit = |used: BudgetUsed| GroebnerBasis {
        nvars: n,
        order: ideal.order,
        basis: vec![Poly::one(n)],
        budget_used: used,
    };

    let mut gens: Vec<Terms> = ideal
        .generators
        .iter()
        .map(|g| eng.monic(eng.to_terms(g)))
        .collect();
    gens.sort_by(|a, b| eng.cmp(lm(a), lm(b)).then_with(|| a.len().cmp(&b.len())));
    for h in gens {
        if is_constant(&h) {
            return Ok(unit(eng.used));
        }
        update(&mut store, &mut active, &mut pairs, h);
    }

    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| pair_key(&store, pairs[a]).cmp(&pair_key(&store, pairs[b])))
            .unwrap();
        let (i, j) = pairs.swap_remove(best);
        eng.used.pairs += 1;
        if eng.used.pairs > budget.max_pairs {
            return Err(over("S-pairs", budget.max_pairs));
        }
        let s = eng.spoly(&store[i], &store[j])?;
        let basis: Vec<&Terms> = store
            .iter()
            .zip(&active)
            .filter(|(_, &a)| a)
            .map(|(t, _)| t)
            .collect();
        let h = eng.normal_form(s, &basis)?;
        if h.is_empty() {
            continue;
        }
        let h = eng.monic(h);
        if is_constant(&h) {
            return Ok(unit(eng.used));
        }
        update(&mut store, &mut active, &mut pairs, h);
        let live = active.iter().filter(|&&a| a).count();
        eng.used.peak_basis = eng.used.peak_basis.max(live);
        if live > budget.max_basis {
            return Err(over("basis size", budget.max_basis));
        }
    }

    // minimalize, then interreduce
    let mut idx: Vec<usize> = (0..store.len()).filter(|&k| active[k]).collect();
    idx.sort_by(|&a, &b| eng.cmp(lm(&store[a]), lm(&store[b])).then(a.cmp(&b)));
    let mut minimal: Vec<usize> = Vec::new();
    for &k in &idx {
        if !minimal.iter().any(|&g| lm(&store[g]).divides(lm(&store[k]))) {
            minimal.push(k);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for (pos, &k) in minimal.iter().enumerate() {
        let others: Vec<&Terms> = minimal
            .iter()
            .enumerate()
            .filter(|&(q, _)| q != pos)
            .map(|(_, &g)| &store[g])
            .collect();
        let r = eng.normal_form(store[k].clone(), &others)?;
        reduced.push(eng.monic(r));
    }
    let basis = reduced
        .into_iter()
        .map(|t| Poly::from_terms(n, t).expect("consistent variable count"))
        .collect();
    Ok(GroebnerBasis {
        nvars: n,
        order: ideal.order,
        basis,
        budget_used: eng.used,
    })
}

fn pair_key(store: &[Terms], (i, j): (usize, usize)) -> (u32, Vec<u32>, Vec<u32>, usize, usize) {
    let (a, b) = (lm(&store[i]), lm(&store[j]));
    (a.lcm(b).degree(), a.0.clone(), b.0.clone(), i, j)
}

/// Gebauer–Möller update when `h` joins the basis.
fn update(store: &mut Vec<Terms>, active: &mut Vec<bool>, pairs: &mut Vec<(usize, usize)>, h: Terms) {
    let hi = store.len();
    let lh = lm(&h).clone();
    let cands: Vec<usize> = (0..store.len()).filter(|&g| active[g]).collect();
    let lcm_with = |g: usize| lh.lcm(lm(&store[g]));

    // drop new pairs whose lcm is a proper multiple of another new pair's lcm
    let mut kept: Vec<usize> = Vec::new();
    for (pos, &g1) in cands.iter().enumerate() {
        let l1 = lcm_with(g1);
        let coprime = lh.coprime(lm(&store[g1]));
        let dominated = cands[pos + 1..]
            .iter()
            .chain(kept.iter())
            .any(|&g2| lcm_with(g2).divides(&l1));
        if coprime || !dominated {
            kept.push(g1);
        }
    }
    let new_pairs: Vec<(usize, usize)> = kept
        .into_iter()
        .filter(|&g| !lh.coprime(lm(&store[g])))
        .map(|g| (g, hi))
        .collect();

    // Buchberger's chain criterion on old pairs
    pairs.retain(|&(a, b)| {
        let lab = lm(&store[a]).lcm(lm(&store[b]));
        !(lh.divides(&lab) && lh.lcm(lm(&store[a])) != lab && lh.lcm(lm(&store[b])) != lab)
    });
    pairs.extend(new_pairs);

    for g in cands {
        if lh.divides(lm(&store[g])) {
            active[g] = false;
        }
    }
    store.push(h);
    active.push(true);
}

impl GroebnerBasis {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    pub fn budget_used(&self) -> BudgetUsed {
        self.budget_used
    }

    /// Whether the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant() && !self.basis[0].is_zero()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis
            .iter()
            .map(|g| g.leading_term(self.order).expect("nonzero").0.clone())
            .collect()
    }

    /// Remainder of `f` with no term divisible by a leading monomial.
    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        if f.nvars() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: f.nvars(),
            });
        }
        let budget = Budget::unlimited();
        let mut eng = Engine::new(self.order, &budget);
        let basis: Vec<Terms> = self.basis.iter().map(|g| eng.to_terms(g)).collect();
        let refs: Vec<&Terms> = basis.iter().collect();
        let r = eng.normal_form(eng.to_terms(f), &refs)?;
        Poly::from_terms(self.nvars, r)
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Every S-polynomial of basis pairs reduces to zero.
    pub fn spolys_reduce_to_zero(&self) -> bool {
        let budget = Budget::unlimited();
        let mut eng = Engine::new(self.order, &budget);
        let basis: Vec<Terms> = self.basis.iter().map(|g| eng.to_terms(g)).collect();
        let refs: Vec<&Terms> = basis.iter().collect();
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                let s = eng.spoly(&basis[i], &basis[j]).expect("unbounded");
                if !eng.normal_form(s, &refs).expect("unbounded").is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// Reduced form: monic, no leading monomial divides another term's
    /// monomial in a different element.
    pub fn is_reduced(&self) -> bool {
        let lms = self.leading_monomials();
        self.basis.iter().enumerate().all(|(i, g)| {
            let (_, lc) = g.leading_term(self.order).unwrap();
            lc.is_one()
                && g.terms().all(|(m, _)| {
                    lms.iter()
                        .enumerate()
                        .all(|(j, l)| j == i || !l.divides(m))
                })
        })
    }

    /// Basis elements free of the first `k` variables, re-expressed in the
    /// remaining ones.
    pub fn eliminate_first(&self, k: usize) -> Vec<Poly> {
        self.basis
            .iter()
            .filter(|g| g.terms().all(|(m, _)| m.0[..k].iter().all(|&e| e == 0)))
            .map(|g| {
                Poly::from_terms(
                    self.nvars - k,
                    g.terms().map(|(m, c)| (Monomial(m.0[k..].to_vec()), c.clone())),
                )
                .expect("consistent")
            })
            .collect()
    }
}
