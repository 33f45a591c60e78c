//! Decisions built on Gröbner bases: consistency over `C`, image ideals and
//! membership of points in images and their closures.

use super::{buchberger, Budget, GroebnerBasis, Ideal};
use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::poly::{MonomialOrder, Poly, PolyMap};

/// Outcome of a consistency test, with the basis that decided it.
#[derive(Clone, Debug)]
pub struct Solvability {
    pub solvable: bool,
    pub basis: GroebnerBasis,
}

/// Whether the equations `eqs = 0` have a common zero over `C`: by the
/// Nullstellensatz, exactly when the reduced basis is not `{1}`. The basis is
/// computed over the coefficients' own field, which does not change whether
/// `1` lies in the ideal.
pub fn solvable_system(eqs: &[Poly], budget: &Budget) -> Result<Solvability> {
    let n = eqs.first().map(Poly::nvars).unwrap_or(0);
    let ideal = Ideal::new(n, eqs.to_vec(), MonomialOrder::GrevLex)?;
    let basis = buchberger(&ideal, budget)?;
    Ok(Solvability {
        solvable: !basis.is_unit(),
        basis,
    })
}

/// Whether `f_i(x) = b_i` for all `i` has a solution over `C`.
pub fn solvable_over_c(system: &[(Poly, FieldElem)], budget: &Budget) -> Result<bool> {
    let eqs: Vec<Poly> = system
        .iter()
        .map(|(f, b)| f - &Poly::constant(f.nvars(), b.clone()))
        .collect();
    Ok(solvable_system(&eqs, budget)?.solvable)
}

/// Reduced basis of `⟨Y_i - f_i(X)⟩` in variables `(X_1..X_n, Y_1..Y_m)`
/// under block elimination with the `X` block first.
pub fn image_ideal_basis(f: &PolyMap, budget: &Budget) -> Result<GroebnerBasis> {
    let n = f.nvars();
    let m = f.len();
    let gens = f
        .components()
        .iter()
        .enumerate()
        .map(|(i, fi)| &Poly::var(n + m, n + i) - &fi.embed(n + m, 0))
        .collect();
    buchberger(&Ideal::new(n + m, gens, MonomialOrder::BlockElim(n))?, budget)
}

/// Generators of `ker f^*`, the ideal of the image closure, as polynomials in
/// `Y_1..Y_m`. They form a grevlex Gröbner basis of that ideal.
pub fn image_ideal(f: &PolyMap, budget: &Budget) -> Result<Vec<Poly>> {
    Ok(image_ideal_basis(f, budget)?.eliminate_first(f.nvars()))
}

fn check_point(b: &[FieldElem], f: &PolyMap) -> Result<()> {
    if b.len() != f.len() {
        return Err(Error::DimensionMismatch {
            expected: f.len(),
            got: b.len(),
        });
    }
    Ok(())
}

/// Whether every element of the image ideal vanishes at `b`.
pub fn in_zariski_closure(b: &[FieldElem], f: &PolyMap, budget: &Budget) -> Result<bool> {
    check_point(b, f)?;
    for g in image_ideal(f, budget)? {
        if !g.eval(b)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `b = f(a)` for some complex `a`.
pub fn in_image_over_c(b: &[FieldElem], f: &PolyMap, budget: &Budget) -> Result<bool> {
    check_point(b, f)?;
    let system: Vec<(Poly, FieldElem)> = f
        .components()
        .iter()
        .cloned()
        .zip(b.iter().cloned())
        .collect();
    solvable_over_c(&system, budget)
}

/// Index of the first generator that does not vanish at `b`.
pub fn separating_generator(b: &[FieldElem], gens: &[Poly]) -> Result<Option<usize>> {
    for (i, g) in gens.iter().enumerate() {
        if !g.eval(b)?.is_zero() {
            return Ok(Some(i));
        }
    }
    Ok(None)
}
