//! Polynomial reductions from general energy games to complete bipartite
//! ones: the win-everywhere gadget, the bipartite split and the completion.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::graph::{Edge, GameGraph, Player};

/// Where an output node comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    Node(usize),
    Edge(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub step: &'static str,
    /// `origins[v]` for every output node `v`.
    pub origins: Vec<Origin>,
    pub params: Vec<(&'static str, i64)>,
}

impl ReductionTrace {
    fn identity(step: &'static str, n: usize) -> Self {
        ReductionTrace { step, origins: (0..n).map(Origin::Node).collect(), params: Vec::new() }
    }

    /// Output nodes that are not input nodes, with their origins.
    pub fn new_nodes(&self) -> impl Iterator<Item = (usize, Origin)> + '_ {
        self.origins.iter().copied().enumerate().filter(|&(v, o)| o != Origin::Node(v))
    }

    pub fn param(&self, name: &str) -> Option<i64> {
        self.params.iter().find(|(k, _)| *k == name).map(|&(_, v)| v)
    }
}

/// The text sidecar: a header comment, then one `new_id <- origin` line per output node.
impl fmt::Display for ReductionTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "# step {}", self.step)?;
        for (k, v) in &self.params {
            write!(f, " {k}={v}")?;
        }
        writeln!(f)?;
        for (v, o) in self.origins.iter().enumerate() {
            match o {
                Origin::Node(i) => writeln!(f, "{v} <- node {i}")?,
                Origin::Edge(j) => writeln!(f, "{v} <- edge {j}")?,
            }
        }
        Ok(())
    }
}

fn checked(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::WeightOverflow)
}

/// Replaces each edge `(x, y)` by `x -> u -> v -> y` through a fresh Alice
/// node `u` and Bob node `v`, with escapes `u -> s` of weight `-nW` and
/// `v -> s` of weight `nW`.
///
/// The winner at `s` is unchanged and one player wins at every output node.
/// Edge `j` yields nodes `n + 2j` (Alice) and `n + 2j + 1` (Bob). When the
/// edge already ends at `s`, Bob's escape would run parallel to `v -> s` at
/// a higher weight, which Bob never prefers, so it is left out.
pub fn to_win_everywhere(graph: &GameGraph, s: usize) -> Result<(GameGraph, usize, ReductionTrace)> {
    graph.validate().into_result()?;
    let n = graph.node_count();
    if s >= n {
        return Err(Error::NodeOutOfRange { node: s, n });
    }
    let big = checked(n as i64, graph.max_abs_weight())?;
    let mut owners = graph.owners().to_vec();
    let mut origins: Vec<Origin> = (0..n).map(Origin::Node).collect();
    let mut edges = Vec::with_capacity(5 * graph.edge_count());
    for (j, e) in graph.edges().iter().enumerate() {
        let u = owners.len();
        let v = u + 1;
        owners.extend([Player::Alice, Player::Bob]);
        origins.extend([Origin::Edge(j), Origin::Edge(j)]);
        edges.extend([
            Edge::new(e.source, u, e.weight),
            Edge::new(u, v, 0),
            Edge::new(v, e.target, 0),
            Edge::new(u, s, -big),
        ]);
        if e.target != s {
            edges.push(Edge::new(v, s, big));
        }
    }
    let trace = ReductionTrace {
        step: "winall",
        origins,
        params: alloc::vec![("n", n as i64), ("W", graph.max_abs_weight()), ("s", s as i64), ("escape", big)],
    };
    Ok((GameGraph::new(owners, edges)?, s, trace))
}

/// Splits every edge between two nodes of the same owner through a fresh
/// node of the other owner: `(u, v, w)` becomes `(u, u', w), (u', v, 0)`.
/// Minimal energies of the original nodes are unchanged.
pub fn to_bipartite(graph: &GameGraph) -> Result<(GameGraph, ReductionTrace)> {
    let mut owners = graph.owners().to_vec();
    let mut trace = ReductionTrace::identity("bipartite", graph.node_count());
    let mut edges = Vec::with_capacity(graph.edge_count());
    for (j, e) in graph.edges().iter().enumerate() {
        let owner = graph.owner(e.source);
        if owner == graph.owner(e.target) {
            let mid = owners.len();
            owners.push(owner.opponent());
            trace.origins.push(Origin::Edge(j));
            edges.push(Edge::new(e.source, mid, e.weight));
            edges.push(Edge::new(mid, e.target, 0));
        } else {
            edges.push(*e);
        }
    }
    trace.params.push(("split", (owners.len() - graph.node_count()) as i64));
    Ok((GameGraph::new(owners, edges)?, trace))
}

fn first_same_owner_edge(graph: &GameGraph) -> Option<usize> {
    graph.edges().iter().position(|e| graph.owner(e.source) == graph.owner(e.target))
}

/// Completes a bipartite graph: every missing Alice-to-Bob edge is added
/// with weight `-nW`, then every missing Bob-to-Alice edge with weight
/// `n^2 W`, where `n` and `W` are read from the graph as it is before each
/// of the two steps.
///
/// When one player wins everywhere in the input, the same player wins
/// everywhere in the output. That promise is not checked.
pub fn to_complete_bipartite(graph: &GameGraph) -> Result<(GameGraph, ReductionTrace)> {
    if let Some(edge) = first_same_owner_edge(graph) {
        return Err(Error::NotBipartite { edge });
    }
    let n = graph.node_count() as i64;
    let alice: Vec<usize> = graph.nodes_of(Player::Alice).collect();
    let bob: Vec<usize> = graph.nodes_of(Player::Bob).collect();

    let w0 = graph.max_abs_weight();
    let low = -checked(n, w0)?;
    let mut edges = graph.edges().to_vec();
    let before = edges.len();
    for &u in &alice {
        for &v in &bob {
            if !graph.has_edge(u, v) {
                edges.push(Edge::new(u, v, low));
            }
        }
    }
    let added_low = edges.len() - before;
    let step1 = GameGraph::new(graph.owners().to_vec(), edges)?;

    let w1 = step1.max_abs_weight();
    let high = checked(checked(n, n)?, w1)?;
    let mut edges = step1.edges().to_vec();
    let before = edges.len();
    for &u in &bob {
        for &v in &alice {
            if !step1.has_edge(u, v) {
                edges.push(Edge::new(u, v, high));
            }
        }
    }
    let added_high = edges.len() - before;
    let out = GameGraph::new(graph.owners().to_vec(), edges)?;

    let mut trace = ReductionTrace::identity("complete", graph.node_count());
    trace.params = alloc::vec![
        ("n", n),
        ("W", w0),
        ("alice_to_bob_weight", low),
        ("alice_to_bob_added", added_low as i64),
        ("W1", w1),
        ("bob_to_alice_weight", high),
        ("bob_to_alice_added", added_high as i64),
    ];
    Ok((out, trace))
}

/// No same-owner edges, and every Alice-Bob pair is joined in both directions.
pub fn is_complete_bipartite(graph: &GameGraph) -> bool {
    if first_same_owner_edge(graph).is_some() {
        return false;
    }
    let alice: Vec<usize> = graph.nodes_of(Player::Alice).collect();
    let bob: Vec<usize> = graph.nodes_of(Player::Bob).collect();
    alice.iter().all(|&a| bob.iter().all(|&b| graph.has_edge(a, b) && graph.has_edge(b, a)))
}
