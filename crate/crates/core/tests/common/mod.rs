#![allow(dead_code)]

use algcomp_core::circuit::{CircuitGraph, Node, NodeKind};
use algcomp_core::poly::monomials_up_to;
use algcomp_core::{FieldElem, Monomial, Poly, PolyMap};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64, d: i64) -> FieldElem {
    FieldElem::from_ratio(n, d)
}

pub fn int(n: i64) -> FieldElem {
    FieldElem::from_int(n)
}

pub fn rand_rational(r: &mut impl Rng) -> FieldElem {
    q(r.gen_range(-9..=9), r.gen_range(1..=4))
}

pub fn rand_point(r: &mut impl Rng, n: usize) -> Vec<FieldElem> {
    (0..n).map(|_| rand_rational(r)).collect()
}

/// Dense random polynomial of degree at most `deg`; roughly half the
/// coefficients are zero.
pub fn rand_poly(r: &mut impl Rng, n: usize, deg: u32) -> Poly {
    let mut terms = Vec::new();
    for e in monomials_up_to(n, deg) {
        if r.gen_bool(0.5) {
            terms.push((Monomial(e), rand_rational(r)));
        }
    }
    Poly::from_terms(n, terms).unwrap()
}

pub fn rand_map(r: &mut impl Rng, n: usize, m: usize, deg: u32) -> PolyMap {
    PolyMap::new((0..m).map(|_| rand_poly(r, n, deg)).collect()).unwrap()
}

/// A random DAG with at most `max_nodes` nodes: inputs, an optional constant
/// gate, internal sum/product gates fed by earlier nodes, then output gates.
pub fn rand_graph(r: &mut impl Rng, max_nodes: usize) -> CircuitGraph {
    let ninputs = r.gen_range(1..=3);
    let mut nodes: Vec<Node> = (0..ninputs)
        .map(|v| Node { id: format!("x{v}"), kind: NodeKind::Input { var: v } })
        .collect();
    if r.gen_bool(0.5) {
        nodes.push(Node { id: "one".into(), kind: NodeKind::One });
    }
    let noutputs = r.gen_range(1..=2);
    let room = max_nodes - nodes.len() - noutputs;
    let ninternal = r.gen_range(1..=room.min(6));
    let mut edges = Vec::new();
    for k in 0..ninternal {
        let kind = if r.gen_bool(0.5) { NodeKind::Sum } else { NodeKind::Product };
        let me = nodes.len();
        nodes.push(Node { id: format!("g{k}"), kind });
        let fan_in = r.gen_range(1..=2);
        for _ in 0..fan_in {
            edges.push((r.gen_range(0..me), me));
        }
    }
    let first_internal = nodes.len() - ninternal;
    let mut outputs = Vec::new();
    for k in 0..noutputs {
        let me = nodes.len();
        nodes.push(Node { id: format!("out{k}"), kind: NodeKind::Output });
        edges.push((r.gen_range(first_internal..me.min(first_internal + ninternal)), me));
        if r.gen_bool(0.3) {
            edges.push((r.gen_range(0..first_internal), me));
        }
        outputs.push(me);
    }
    CircuitGraph::new(nodes, edges, outputs, Some(ninputs)).unwrap()
}

/// Evaluates a graph numerically at `x`, straight from its definition,
/// without building any polynomial.
pub fn eval_graph_at(g: &CircuitGraph, labels: &[FieldElem], x: &[FieldElem]) -> Vec<FieldElem> {
    let n = g.nodes().len();
    let mut val: Vec<Option<FieldElem>> = vec![None; n];
    // Repeated sweeps are enough for a DAG this small.
    while val.iter().any(Option::is_none) {
        for v in 0..n {
            if val[v].is_some() {
                continue;
            }
            let incoming: Vec<usize> = (0..g.edges().len()).filter(|&e| g.edges()[e].1 == v).collect();
            if incoming.iter().any(|&e| val[g.edges()[e].0].is_none()) {
                continue;
            }
            let term = |e: usize| &labels[e] * val[g.edges()[e].0].as_ref().unwrap();
            val[v] = Some(match g.nodes()[v].kind {
                NodeKind::Input { var } => x[var].clone(),
                NodeKind::One => int(1),
                NodeKind::Sum | NodeKind::Output => {
                    incoming.iter().fold(int(0), |acc, &e| &acc + &term(e))
                }
                NodeKind::Product => incoming.iter().fold(int(1), |acc, &e| &acc * &term(e)),
            });
        }
    }
    g.outputs().iter().map(|&o| val[o].clone().unwrap()).collect()
}

/// Rank of a rational matrix by plain Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<FieldElem>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][c].inv().unwrap();
        for i in 0..rows.len() {
            if i != rank && !rows[i][c].is_zero() {
                let f = &rows[i][c] * &inv;
                for j in 0..ncols {
                    let d = &f * &rows[rank][j];
                    rows[i][j] = &rows[i][j] - &d;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// (1,1)-elusiveness in the plane: no line (or point) contains every point.
pub fn not_collinear(pts: &[Vec<FieldElem>]) -> bool {
    let diffs = pts[1..]
        .iter()
        .map(|p| p.iter().zip(&pts[0]).map(|(a, b)| a - b).collect())
        .collect();
    rank(diffs) >= 2
}
