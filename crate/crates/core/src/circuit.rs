//! Circuit graphs: labelled DAGs of input, sum and product gates whose edges
//! carry scalar multipliers once an assignment is supplied.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::poly::{Poly, PolyMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeKind {
    /// The variable `X_{var+1}`.
    Input { var: usize },
    /// The constant 1.
    One,
    Sum,
    Product,
    /// Behaves like a sum gate; never has outgoing edges.
    Output,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub id: String,
    pub kind: NodeKind,
}

/// How output values are read off the graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputConvention {
    /// Every output is an output gate fed by labelled edges.
    LabelledEdges,
    /// At least one output is an internal node read off directly.
    NodeValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct CircuitGraph {
    nodes: Vec<Node>,
    edges: Vec<(usize, usize)>,
    outputs: Vec<usize>,
    ninputs: usize,
    topo: Vec<usize>,
}

impl CircuitGraph {
    /// Validates and builds a graph. `ninputs` defaults to one past the
    /// largest input variable.
    pub fn new(
        nodes: Vec<Node>,
        edges: Vec<(usize, usize)>,
        outputs: Vec<usize>,
        ninputs: Option<usize>,
    ) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidGraph(m));
        let mut seen = HashMap::new();
        for (i, n) in nodes.iter().enumerate() {
            if seen.insert(n.id.clone(), i).is_some() {
                return bad(format!("duplicate node id {:?}", n.id));
            }
        }
        let max_var = nodes
            .iter()
            .filter_map(|n| match n.kind {
                NodeKind::Input { var } => Some(var + 1),
                _ => None,
            })
            .max()
            .unwrap_or(0);
        let ninputs = ninputs.unwrap_or(max_var);
        if max_var > ninputs {
            return bad(format!("input variable index {} out of range", max_var - 1));
        }
        for &(s, d) in &edges {
            if s >= nodes.len() || d >= nodes.len() {
                return bad("edge endpoint does not exist".into());
            }
            match nodes[d].kind {
                NodeKind::Input { .. } | NodeKind::One => {
                    return bad(format!("input gate {:?} has an incoming edge", nodes[d].id))
                }
                _ => {}
            }
            if nodes[s].kind == NodeKind::Output {
                return bad(format!("output gate {:?} has an outgoing edge", nodes[s].id));
            }
        }
        if outputs.is_empty() {
            return bad("no outputs".into());
        }
        if outputs.iter().any(|&o| o >= nodes.len()) {
            return bad("output does not exist".into());
        }
        let topo = topo_order(nodes.len(), &edges)?;
        Ok(CircuitGraph {
            nodes,
            edges,
            outputs,
            ninputs,
            topo,
        })
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    /// Edges as `(source, target)` node indices, in label order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn outputs(&self) -> &[usize] {
        &self.outputs
    }

    pub fn ninputs(&self) -> usize {
        self.ninputs
    }

    pub fn noutputs(&self) -> usize {
        self.outputs.len()
    }

    pub fn output_convention(&self) -> OutputConvention {
        if self
            .outputs
            .iter()
            .all(|&o| self.nodes[o].kind == NodeKind::Output)
        {
            OutputConvention::LabelledEdges
        } else {
            OutputConvention::NodeValue
        }
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Length in edges of the longest directed path.
    pub fn depth(&self) -> usize {
        let mut longest = vec![0usize; self.nodes.len()];
        for &v in &self.topo {
            for &(s, d) in &self.edges {
                if s == v {
                    longest[d] = longest[d].max(longest[v] + 1);
                }
            }
        }
        longest.into_iter().max().unwrap_or(0)
    }

    /// Syntactic degree of every node.
    pub fn node_degrees(&self) -> Vec<u32> {
        let mut deg = vec![0u32; self.nodes.len()];
        let incoming = self.incoming();
        for &v in &self.topo {
            deg[v] = match self.nodes[v].kind {
                NodeKind::Input { .. } => 1,
                NodeKind::One => 0,
                NodeKind::Sum | NodeKind::Output => {
                    incoming[v].iter().map(|&e| deg[self.edges[e].0]).max().unwrap_or(0)
                }
                NodeKind::Product => incoming[v].iter().map(|&e| deg[self.edges[e].0]).sum(),
            };
        }
        deg
    }

    /// Maximum syntactic degree over all nodes.
    pub fn syntactic_degree(&self) -> u32 {
        self.node_degrees().into_iter().max().unwrap_or(0)
    }

    /// Every sum (and output) gate has children of one syntactic degree.
    pub fn is_homogeneous_graph(&self) -> bool {
        let deg = self.node_degrees();
        let incoming = self.incoming();
        self.nodes.iter().enumerate().all(|(v, n)| {
            if !matches!(n.kind, NodeKind::Sum | NodeKind::Output) {
                return true;
            }
            let mut ds = incoming[v].iter().map(|&e| deg[self.edges[e].0]);
            match ds.next() {
                None => true,
                Some(d) => ds.all(|x| x == d),
            }
        })
    }

    fn incoming(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.nodes.len()];
        for (e, &(_, d)) in self.edges.iter().enumerate() {
            inc[d].push(e);
        }
        inc
    }

    /// The polynomial tuple computed at the outputs under edge labels `a`.
    pub fn evaluate(&self, a: &[FieldElem]) -> Result<PolyMap> {
        if a.len() != self.edges.len() {
            return Err(Error::LengthMismatch {
                expected: self.edges.len(),
                got: a.len(),
            });
        }
        let n = self.ninputs;
        let incoming = self.incoming();
        let mut val: Vec<Option<Poly>> = vec![None; self.nodes.len()];
        for &v in &self.topo {
            let contrib = |e: usize| -> Poly {
                let src = self.edges[e].0;
                val[src].as_ref().expect("topological order").scale(&a[e])
            };
            let p = match self.nodes[v].kind {
                NodeKind::Input { var } => Poly::var(n, var),
                NodeKind::One => Poly::one(n),
                NodeKind::Sum | NodeKind::Output => incoming[v]
                    .iter()
                    .fold(Poly::zero(n), |acc, &e| &acc + &contrib(e)),
                NodeKind::Product => incoming[v]
                    .iter()
                    .fold(Poly::one(n), |acc, &e| &acc * &contrib(e)),
            };
            val[v] = Some(p);
        }
        PolyMap::new(
            self.outputs
                .iter()
                .map(|&o| val[o].clone().expect("evaluated"))
                .collect(),
        )
    }

    /// Coefficient vector of the computed tuple at the syntactic degree.
    pub fn gamma_map(&self, a: &[FieldElem]) -> Result<Vec<FieldElem>> {
        self.evaluate(a)?.coeff_vector(self.syntactic_degree())
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph circuit {\n");
        for n in &self.nodes {
            let label = match n.kind {
                NodeKind::Input { var } => format!("x{}", var + 1),
                NodeKind::One => "1".into(),
                NodeKind::Sum => "+".into(),
                NodeKind::Product => "*".into(),
                NodeKind::Output => "out".into(),
            };
            let shape = if self.outputs.iter().any(|&o| self.nodes[o].id == n.id) {
                "doublecircle"
            } else {
                "circle"
            };
            let _ = writeln!(s, "  {:?} [label={:?}, shape={}];", n.id, label, shape);
        }
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            let _ = writeln!(
                s,
                "  {:?} -> {:?} [label=\"y{}\"];",
                self.nodes[a].id,
                self.nodes[b].id,
                e + 1
            );
        }
        s.push_str("}\n");
        s
    }
}

fn topo_order(n: usize, edges: &[(usize, usize)]) -> Result<Vec<usize>> {
    let mut indeg = vec![0usize; n];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(s, d) in edges {
        indeg[d] += 1;
        out[s].push(d);
    }
    // smallest index first keeps the order deterministic
    let mut ready: std::collections::BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = ready.pop_first() {
        order.push(v);
        for &d in &out[v] {
            indeg[d] -= 1;
            if indeg[d] == 0 {
                ready.insert(d);
            }
        }
    }
    if order.len() != n {
        return Err(Error::CyclicGraph);
    }
    Ok(order)
}

#[derive(Serialize, Deserialize)]
struct NodeRepr {
    id: String,
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    var: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ninputs: Option<usize>,
    nodes: Vec<NodeRepr>,
    edges: Vec<(String, String)>,
    outputs: Vec<String>,
}

impl From<CircuitGraph> for GraphRepr {
    fn from(g: CircuitGraph) -> Self {
        let id = |i: usize| g.nodes[i].id.clone();
        GraphRepr {
            ninputs: Some(g.ninputs),
            nodes: g
                .nodes
                .iter()
                .map(|n| {
                    let (kind, var) = match n.kind {
                        NodeKind::Input { var } => ("input", Some(var)),
                        NodeKind::One => ("one", None),
                        NodeKind::Sum => ("sum", None),
                        NodeKind::Product => ("product", None),
                        NodeKind::Output => ("output", None),
                    };
                    NodeRepr {
                        id: n.id.clone(),
                        kind: kind.into(),
                        var,
                    }
                })
                .collect(),
            edges: g.edges.iter().map(|&(a, b)| (id(a), id(b))).collect(),
            outputs: g.outputs.iter().map(|&o| id(o)).collect(),
        }
    }
}

impl TryFrom<GraphRepr> for CircuitGraph {
    type Error = Error;
    fn try_from(r: GraphRepr) -> Result<Self> {
        let mut nodes = Vec::with_capacity(r.nodes.len());
        for n in r.nodes {
            let kind = match (n.kind.as_str(), n.var) {
                ("input", Some(var)) => NodeKind::Input { var },
                ("input", None) => {
                    return Err(Error::InvalidGraph(format!("input {:?} lacks a variable", n.id)))
                }
                ("one" | "const", _) => NodeKind::One,
                ("sum", _) => NodeKind::Sum,
                ("product", _) => NodeKind::Product,
                ("output", _) => NodeKind::Output,
                (k, _) => return Err(Error::InvalidGraph(format!("unknown node kind {k:?}"))),
            };
            nodes.push(Node { id: n.id, kind });
        }
        let index: HashMap<&str, usize> = nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (n.id.as_str(), i))
            .collect();
        let look = |id: &str| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| Error::InvalidGraph(format!("unknown node {id:?}")))
        };
        let edges = r
            .edges
            .iter()
            .map(|(a, b)| Ok((look(a)?, look(b)?)))
            .collect::<Result<Vec<_>>>()?;
        let outputs = r.outputs.iter().map(|o| look(o)).collect::<Result<Vec<_>>>()?;
        CircuitGraph::new(nodes, edges, outputs, r.ninputs)
    }
}

/// Zero-label check helper: all-zero assignments compute the zero map
/// unless a product gate has no incoming edges.
pub fn zero_assignment(g: &CircuitGraph) -> Vec<FieldElem> {
    vec![FieldElem::zero(); g.size()]
}

/// All-ones assignment.
pub fn unit_assignment(g: &CircuitGraph) -> Vec<FieldElem> {
    vec![FieldElem::one(); g.size()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;

    fn node(id: &str, kind: NodeKind) -> Node {
        Node {
            id: id.into(),
            kind,
        }
    }

    fn int(n: i64) -> FieldElem {
        FieldElem::from_int(n)
    }

    fn product_graph() -> CircuitGraph {
        CircuitGraph::new(
            vec![
                node("x1", NodeKind::Input { var: 0 }),
                node("x2", NodeKind::Input { var: 1 }),
                node("p", NodeKind::Product),
            ],
            vec![(0, 2), (1, 2)],
            vec![2],
            None,
        )
        .unwrap()
    }

    fn double_sum_graph() -> CircuitGraph {
        CircuitGraph::new(
            vec![node("x1", NodeKind::Input { var: 0 }), node("s", NodeKind::Sum)],
            vec![(0, 1), (0, 1)],
            vec![1],
            None,
        )
        .unwrap()
    }

    #[test]
    fn degrees() {
        assert_eq!(product_graph().syntactic_degree(), 2);
        let g = CircuitGraph::new(
            vec![
                node("x", NodeKind::Input { var: 0 }),
                node("one", NodeKind::One),
                node("s", NodeKind::Sum),
            ],
            vec![(0, 2), (1, 2)],
            vec![2],
            None,
        )
        .unwrap();
        assert_eq!(g.syntactic_degree(), 1);
        assert!(!g.is_homogeneous_graph());
        let c = CircuitGraph::new(vec![node("one", NodeKind::One)], vec![], vec![0], None).unwrap();
        assert_eq!(c.syntactic_degree(), 0);
        assert!(c.is_homogeneous_graph());
        assert!(double_sum_graph().is_homogeneous_graph());
    }

    #[test]
    fn evaluation_semantics() {
        let g = double_sum_graph();
        let f = g.evaluate(&[int(2), int(5)]).unwrap();
        assert_eq!(f.components()[0], Poly::var(1, 0).scale(&int(7)));
        assert_eq!(g.gamma_map(&[int(2), int(5)]).unwrap(), vec![int(0), int(7)]);
        assert!(g.evaluate(&zero_assignment(&g)).unwrap().is_zero());
        assert!(matches!(g.evaluate(&[int(1)]), Err(Error::LengthMismatch { .. })));

        let p = product_graph();
        let f = p.evaluate(&[int(3), int(4)]).unwrap();
        let xy = Monomial(vec![1, 1]);
        assert_eq!(f.components()[0], Poly::monomial(xy.clone(), int(12)));
        let gamma = p.gamma_map(&[int(3), int(4)]).unwrap();
        assert_eq!(gamma.len(), 6);
        assert_eq!(gamma.iter().filter(|c| !c.is_zero()).count(), 1);
        assert_eq!(gamma[4], int(12)); // lattice (0,0),(0,1),(0,2),(1,0),(1,1),(2,0)
    }

    #[test]
    fn size_and_depth() {
        assert_eq!(double_sum_graph().size(), 2);
        let lone = CircuitGraph::new(vec![node("x", NodeKind::Input { var: 0 })], vec![], vec![0], None).unwrap();
        assert_eq!(lone.depth(), 0);
        let chain = CircuitGraph::new(
            vec![
                node("x", NodeKind::Input { var: 0 }),
                node("a", NodeKind::Sum),
                node("b", NodeKind::Sum),
                node("o", NodeKind::Output),
            ],
            vec![(0, 1), (1, 2), (2, 3)],
            vec![3],
            None,
        )
        .unwrap();
        assert_eq!(chain.depth(), 3);
        assert_eq!(chain.output_convention(), OutputConvention::LabelledEdges);
        assert_eq!(double_sum_graph().output_convention(), OutputConvention::NodeValue);
    }

    #[test]
    fn rejects_bad_graphs() {
        let cyc = CircuitGraph::new(
            vec![node("a", NodeKind::Sum), node("b", NodeKind::Sum)],
            vec![(0, 1), (1, 0)],
            vec![0],
            None,
        );
        assert_eq!(cyc, Err(Error::CyclicGraph));
        let into_input = CircuitGraph::new(
            vec![node("a", NodeKind::Sum), node("x", NodeKind::Input { var: 0 })],
            vec![(0, 1)],
            vec![0],
            None,
        );
        assert!(matches!(into_input, Err(Error::InvalidGraph(_))));
        let dup = CircuitGraph::new(vec![node("a", NodeKind::One), node("a", NodeKind::One)], vec![], vec![0], None);
        assert!(dup.is_err());
    }

    #[test]
    fn json_and_dot() {
        let text = r#"{"nodes":[{"id":"x","kind":"input","var":0},{"id":"y","kind":"input","var":1},
            {"id":"p","kind":"product"},{"id":"o","kind":"output"}],
            "edges":[["x","p"],["y","p"],["p","o"]],"outputs":["o"]}"#;
        let g: CircuitGraph = serde_json::from_str(text).unwrap();
        assert_eq!(g.ninputs(), 2);
        assert_eq!(g.syntactic_degree(), 2);
        let back: CircuitGraph = serde_json::from_str(&serde_json::to_string(&g).unwrap()).unwrap();
        assert_eq!(back, g);
        let dot = g.to_dot();
        assert!(dot.contains("\"p\" -> \"o\" [label=\"y3\"]"));
    }
}
