//! Cross-module properties, each checked against an oracle that does not
//! share code with the routine under test.

mod common;

use algcomp_core::circuit::NodeKind;
use algcomp_core::elusive::{flatten_to_scalar, raz_lift};
use algcomp_core::groebner::{
    buchberger, det_complexity, det_polynomial, image_ideal, in_image_over_c, in_zariski_closure,
    Budget, Ideal,
};
use algcomp_core::interp::{interpolate, iso_values_to_poly, poly_to_iso_values, ValueTable};
use algcomp_core::poly::monomials_up_to;
use algcomp_core::poly::parse::{parse_poly, parse_polymap};
use algcomp_core::{CycloElem, Error, FieldElem, MonomialOrder, Poly, PolyMap};
use common::*;
use proptest::prelude::*;
use rand::Rng;

fn budget() -> Budget {
    Budget::default()
}

// ---------------------------------------------------------------- groebner

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn buchberger_output_is_a_reduced_basis(seed in any::<u64>(), lex in any::<bool>()) {
        let mut r = rng(seed);
        // Lex bases of random three-variable ideals can be huge; keep lex to the plane.
        let n = if lex { 2 } else { r.gen_range(2..=3) };
        let gens: Vec<Poly> = (0..r.gen_range(1..=3))
            .map(|_| rand_poly(&mut r, n, 2))
            .filter(|p| !p.is_zero())
            .collect();
        prop_assume!(!gens.is_empty());
        let order = if lex { MonomialOrder::Lex } else { MonomialOrder::GrevLex };
        let small = Budget { max_reductions: 200_000, ..budget() };
        let gb = match buchberger(&Ideal::new(n, gens.clone(), order).unwrap(), &small) {
            Err(Error::ResourceBudgetExceeded(_)) => return Ok(()),
            other => other.unwrap(),
        };
        for g in &gens {
            prop_assert!(gb.normal_form(g).unwrap().is_zero());
        }
        prop_assert!(gb.spolys_reduce_to_zero());
        prop_assert!(gb.is_reduced());
        for b in gb.basis() {
            let (_, c) = b.leading_term(order).unwrap();
            prop_assert!(c.is_one());
        }
    }

    #[test]
    fn closure_contains_image(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = rand_map(&mut r, 1, 2, 2);
        let b = if r.gen_bool(0.5) {
            f.eval(&rand_point(&mut r, 1)).unwrap()
        } else {
            rand_point(&mut r, 2)
        };
        let img = in_image_over_c(&b, &f, &budget()).unwrap();
        let clo = in_zariski_closure(&b, &f, &budget()).unwrap();
        prop_assert!(!img || clo);
    }

    #[test]
    fn basis_is_independent_of_generator_order(seed in any::<u64>()) {
        let mut r = rng(seed);
        let mut gens: Vec<Poly> = (0..3).map(|_| rand_poly(&mut r, 2, 2)).filter(|p| !p.is_zero()).collect();
        prop_assume!(gens.len() >= 2);
        let a = buchberger(&Ideal::new(2, gens.clone(), MonomialOrder::GrevLex).unwrap(), &budget()).unwrap();
        gens.reverse();
        let b = buchberger(&Ideal::new(2, gens, MonomialOrder::GrevLex).unwrap(), &budget()).unwrap();
        prop_assert_eq!(a.basis(), b.basis());
    }
}

#[test]
fn image_ideal_vanishes_on_image_points() {
    let maps = [
        "(t, t^2)",
        "(t, t^2, t^3)",
        "(x1 + x2, x1x2, x1^2 + x2^2 + 1)",
        "(x1^2, x1x2, x2^2)",
        "(t^2 - 1, t^3 - t)",
    ];
    let mut r = rng(11);
    for text in maps {
        let f = parse_polymap(text, None).unwrap();
        let gens = image_ideal(&f, &budget()).unwrap();
        assert!(!gens.is_empty(), "{text}");
        for _ in 0..100 {
            let b = f.eval(&rand_point(&mut r, f.nvars())).unwrap();
            for g in &gens {
                assert!(g.eval(&b).unwrap().is_zero(), "{g} at {text}");
            }
        }
    }
}

#[test]
fn det_complexity_is_at_least_the_degree() {
    for (text, n) in [("x1 + 3", 1), ("x1x2 - x3x4", 4), ("x1x2", 2), ("x1^2 + x2", 2), ("7", 1)] {
        let f = parse_poly(text, Some(n)).unwrap();
        let c = det_complexity(&f, 3, &budget(), 0).unwrap().value().expect(text);
        assert!(c as u32 >= f.degree(), "{text}: {c}");
    }
}

#[test]
fn det_complexity_of_a_pulled_back_determinant_is_at_most_its_size() {
    let mut r = rng(5);
    for _ in 0..5 {
        let n = 2;
        let entries: Vec<Vec<Poly>> = (0..2)
            .map(|_| (0..2).map(|_| rand_poly(&mut r, n, 1)).collect())
            .collect();
        let f = det_polynomial(&entries).unwrap();
        // Independent 2x2 expansion.
        let oracle = &(&entries[0][0] * &entries[1][1]) - &(&entries[0][1] * &entries[1][0]);
        assert_eq!(f, oracle);
        if f.is_zero() {
            continue;
        }
        let c = det_complexity(&f, 2, &budget(), 3).unwrap().value();
        assert!(matches!(c, Some(c) if c <= 2), "{f}: {c:?}");
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    let f = parse_polymap("(t, t^2, t^3)", None).unwrap();
    let a = serde_json::to_string(&image_ideal(&f, &budget()).unwrap()).unwrap();
    let b = serde_json::to_string(&image_ideal(&f, &budget()).unwrap()).unwrap();
    assert_eq!(a, b);
    let g = parse_poly("x1x2 - x3x4", None).unwrap();
    let a = serde_json::to_string(&det_complexity(&g, 3, &budget(), 9).unwrap()).unwrap();
    let b = serde_json::to_string(&det_complexity(&g, 3, &budget(), 9).unwrap()).unwrap();
    assert_eq!(a, b);
}

// ---------------------------------------------------------------- circuits

/// Degree of each node's value as a polynomial in the edge labels.
fn label_degree(g: &algcomp_core::circuit::CircuitGraph) -> u32 {
    let n = g.nodes().len();
    let mut d: Vec<Option<u32>> = vec![None; n];
    while d.iter().any(Option::is_none) {
        for v in 0..n {
            if d[v].is_some() {
                continue;
            }
            let inc: Vec<usize> = (0..g.edges().len()).filter(|&e| g.edges()[e].1 == v).collect();
            if inc.iter().any(|&e| d[g.edges()[e].0].is_none()) {
                continue;
            }
            let via = |e: usize| d[g.edges()[e].0].unwrap() + 1;
            d[v] = Some(match g.nodes()[v].kind {
                NodeKind::Input { .. } | NodeKind::One => 0,
                NodeKind::Sum | NodeKind::Output => inc.iter().map(|&e| via(e)).max().unwrap_or(0),
                NodeKind::Product => inc.iter().map(|&e| via(e)).sum(),
            });
        }
    }
    g.outputs().iter().map(|&o| d[o].unwrap()).max().unwrap()
}

#[test]
fn circuit_evaluation_matches_direct_numeric_evaluation() {
    let mut r = rng(21);
    for _ in 0..50 {
        let g = rand_graph(&mut r, 12);
        let a = rand_point(&mut r, g.size());
        let f = g.evaluate(&a).unwrap();
        assert!(f.degree() <= g.syntactic_degree());
        let gamma = g.gamma_map(&a).unwrap();
        let back = PolyMap::from_coeff_vector(g.ninputs(), g.noutputs(), g.syntactic_degree(), &gamma).unwrap();
        for _ in 0..3 {
            let x = rand_point(&mut r, g.ninputs());
            assert_eq!(back.eval(&x).unwrap(), eval_graph_at(&g, &a, &x));
        }
        if g.is_homogeneous_graph() {
            assert!(f.is_homogeneous(), "{f}");
        }
    }
}

#[test]
fn gamma_is_polynomial_in_the_labels() {
    let mut r = rng(8);
    let mut checked = 0;
    while checked < 8 {
        let g = rand_graph(&mut r, 7);
        let s = g.size();
        let deg = label_degree(&g);
        if monomials_up_to(s, deg).len() > 400 {
            continue;
        }
        let lattice = monomials_up_to(s, deg);
        let values = lattice
            .iter()
            .map(|p| {
                let a: Vec<FieldElem> = p.iter().map(|&c| int(c as i64)).collect();
                g.gamma_map(&a).unwrap()
            })
            .collect();
        let gamma = interpolate(&ValueTable::new(s, deg, values).unwrap()).unwrap();
        for _ in 0..3 {
            let a = rand_point(&mut r, s);
            assert_eq!(gamma.eval(&a).unwrap(), g.gamma_map(&a).unwrap());
        }
        checked += 1;
    }
}

// ---------------------------------------------------------------- fields

fn rand_elem(r: &mut impl Rng) -> FieldElem {
    let mut x = rand_rational(r);
    for p in [3u64, 5] {
        if r.gen_bool(0.6) {
            let z = FieldElem::zeta(p).unwrap().pow(r.gen_range(1..p as u32));
            x = &x + &(&rand_rational(r) * &z);
        }
    }
    x
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b, c) = (rand_elem(&mut r), rand_elem(&mut r), rand_elem(&mut r));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn union_field_agrees_with_floating_point(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = &rand_rational(&mut r) * &FieldElem::zeta(3).unwrap();
        let b = &rand_rational(&mut r) * &FieldElem::zeta(5).unwrap().pow(2);
        let (ar, ai) = a.to_complex();
        let (br, bi) = b.to_complex();
        let (sr, si) = (&a + &b).to_complex();
        let (pr, pi) = (&a * &b).to_complex();
        prop_assert!((sr - ar - br).abs() < 1e-12 && (si - ai - bi).abs() < 1e-12);
        prop_assert!((pr - (ar * br - ai * bi)).abs() < 1e-12);
        prop_assert!((pi - (ar * bi + ai * br)).abs() < 1e-12);
    }

    #[test]
    fn canonical_form_is_stable(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = rand_elem(&mut r);
        if let FieldElem::Cyclo(c) = &x {
            let again = CycloElem::from_terms(
                c.primes().to_vec(),
                c.terms().map(|(e, q)| (e.clone(), q.clone())),
            ).unwrap();
            prop_assert_eq!(FieldElem::from_cyclo(again), x.clone());
            prop_assert!(c.terms().all(|(_, q)| q != &num_traits::Zero::zero()));
        }
        let json = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(serde_json::from_str::<FieldElem>(&json).unwrap(), x);
    }
}

#[test]
fn constant_cyclotomic_collapses_to_rational() {
    let z = FieldElem::zeta(7).unwrap();
    let one = &z * &z.inv().unwrap();
    assert!(matches!(one, FieldElem::Rational(_)));
    let sum = (1..7).fold(FieldElem::from_int(0), |acc, k| &acc + &z.pow(k));
    assert_eq!(sum, FieldElem::from_int(-1));
}

// ---------------------------------------------------------------- interpolation / lifts

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn iso_values_and_lattice_values_are_inverse(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = r.gen_range(1..=3);
        let deg = r.gen_range(0..=3);
        let m = r.gen_range(1..=2);
        let f = rand_map(&mut r, s, m, deg);
        let v = poly_to_iso_values(&f, deg).unwrap();
        prop_assert_eq!(iso_values_to_poly(&v, s, deg, m).unwrap(), f);
    }

    #[test]
    fn raz_lift_is_linear_and_adds_one_degree(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = rand_map(&mut r, 2, 4, 2);
        let g = rand_map(&mut r, 2, 4, 2);
        let c = rand_rational(&mut r);
        let comb = PolyMap::new(
            f.components().iter().zip(g.components()).map(|(a, b)| &a.scale(&c) + b).collect(),
        ).unwrap();
        let (lf, lg, lc) = (raz_lift(&f).unwrap(), raz_lift(&g).unwrap(), raz_lift(&comb).unwrap());
        for ((a, b), x) in lf.components().iter().zip(lg.components()).zip(lc.components()) {
            prop_assert_eq!(&(&a.scale(&c) + b), x);
        }
        let (ff, fg, fc) = (
            flatten_to_scalar(&lf).unwrap(),
            flatten_to_scalar(&lg).unwrap(),
            flatten_to_scalar(&lc).unwrap(),
        );
        prop_assert_eq!(&(&ff.scale(&c) + &fg), &fc);
        if !f.is_zero() {
            prop_assert_eq!(lf.degree(), f.degree() + 1);
            prop_assert_eq!(ff.degree(), f.degree() + 2);
        }
    }
}
