//! Game graphs: ownership, weighted edges, validation and self-loop removal.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Player {
    Alice,
    Bob,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Alice => Player::Bob,
            Player::Bob => Player::Alice,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub weight: i64,
}

impl Edge {
    pub const fn new(source: usize, target: usize, weight: i64) -> Self {
        Edge { source, target, weight }
    }
}

/// A weighted game graph on nodes `0..n`.
///
/// Edges keep their insertion order, which is also the order in which they
/// are written back out. Parallel edges are allowed; self-loops and sinks
/// are representable so that [`GameGraph::validate`] can report them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameGraph {
    owners: Vec<Player>,
    edges: Vec<Edge>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
    max_abs_weight: i64,
}

impl GameGraph {
    /// Builds a graph, checking edge endpoints and the `n^2 * W` headroom.
    pub fn new(owners: Vec<Player>, edges: Vec<Edge>) -> Result<Self> {
        let n = owners.len();
        let mut out = alloc::vec![Vec::new(); n];
        let mut inc = alloc::vec![Vec::new(); n];
        let mut max_abs_weight = 0i64;
        for (i, e) in edges.iter().enumerate() {
            for node in [e.source, e.target] {
                if node >= n {
                    return Err(Error::NodeOutOfRange { node, n });
                }
            }
            max_abs_weight = max_abs_weight.max(e.weight.checked_abs().ok_or(Error::WeightOverflow)?);
            out[e.source].push(i);
            inc[e.target].push(i);
        }
        check_headroom(n, max_abs_weight)?;
        Ok(GameGraph { owners, edges, out, inc, max_abs_weight })
    }

    /// Same topology and owners, new weights (one per edge, in edge order).
    pub fn with_weights(&self, weights: &[i64]) -> Result<Self> {
        if weights.len() != self.edges.len() {
            return Err(Error::InvalidArgument("weight vector length differs from edge count"));
        }
        let edges = self
            .edges
            .iter()
            .zip(weights)
            .map(|(e, &w)| Edge { weight: w, ..*e })
            .collect();
        GameGraph::new(self.owners.clone(), edges)
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.owners.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `W`, the largest absolute edge weight (0 for an edgeless graph).
    #[inline]
    pub fn max_abs_weight(&self) -> i64 {
        self.max_abs_weight
    }

    /// The universal bound `n * W` on finite minimal energies.
    pub fn universal_bound(&self) -> i64 {
        // fits: the constructor checked n^2 * W
        self.node_count() as i64 * self.max_abs_weight
    }

    #[inline]
    pub fn owner(&self, v: usize) -> Player {
        self.owners[v]
    }

    pub fn owners(&self) -> &[Player] {
        &self.owners
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, i: usize) -> &Edge {
        &self.edges[i]
    }

    /// Indices of the out-edges of `v`, in edge order.
    #[inline]
    pub fn out_edge_ids(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    /// Indices of the in-edges of `v`, in edge order.
    #[inline]
    pub fn in_edge_ids(&self, v: usize) -> &[usize] {
        &self.inc[v]
    }

    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = &Edge> + '_ {
        self.out[v].iter().map(move |&i| &self.edges[i])
    }

    pub fn in_edges(&self, v: usize) -> impl Iterator<Item = &Edge> + '_ {
        self.inc[v].iter().map(move |&i| &self.edges[i])
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.out_edges(u).any(|e| e.target == v)
    }

    pub fn nodes_of(&self, player: Player) -> impl Iterator<Item = usize> + '_ {
        self.owners.iter().enumerate().filter(move |(_, &p)| p == player).map(|(v, _)| v)
    }

    /// Checks every structural invariant the solvers rely on.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for v in 0..self.node_count() {
            if self.out[v].is_empty() {
                violations.push(Violation::Sink { node: v });
            }
        }
        for (i, e) in self.edges.iter().enumerate() {
            if e.source == e.target {
                violations.push(Violation::SelfLoop { edge: i, node: e.source });
            }
        }
        ValidationReport { violations }
    }

    /// Replaces every self-loop `(v, v)` of weight `w` by a fresh node `v'`
    /// owned by the opponent of `v` and the edges `(v, v')`, `(v', v)`, both
    /// of weight `w`. Fresh nodes are appended in loop-edge order; the edge
    /// `(v, v')` takes the place of the loop and `(v', v)` follows it.
    pub fn eliminate_self_loops(&self) -> GameGraph {
        if self.edges.iter().all(|e| e.source != e.target) {
            return self.clone();
        }
        let mut owners = self.owners.clone();
        let mut edges = Vec::with_capacity(self.edges.len() + 4);
        for e in &self.edges {
            if e.source == e.target {
                let helper = owners.len();
                owners.push(self.owners[e.source].opponent());
                edges.push(Edge::new(e.source, helper, e.weight));
                edges.push(Edge::new(helper, e.source, e.weight));
            } else {
                edges.push(*e);
            }
        }
        // one extra node per loop cannot break the headroom by more than the
        // caller can absorb; surface it as an error path all the same
        GameGraph::new(owners, edges).expect("self-loop elimination exceeded weight headroom")
    }
}

fn check_headroom(n: usize, max_abs_weight: i64) -> Result<()> {
    let n = i64::try_from(n).map_err(|_| Error::WeightOverflow)?;
    n.checked_mul(n)
        .and_then(|nn| nn.checked_mul(max_abs_weight))
        .and_then(|x| x.checked_mul(4))
        .map(|_| ())
        .ok_or(Error::WeightOverflow)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    Sink { node: usize },
    SelfLoop { edge: usize, node: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Sink { node } => write!(f, "sink node {node}"),
            Violation::SelfLoop { edge, node } => {
                write!(f, "self-loop (normalize first) at node {node}, edge {edge}")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidGraph(self))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::figure1;
    use alloc::string::ToString;

    #[test]
    fn figure1_is_valid() {
        let g = figure1();
        assert_eq!((g.node_count(), g.edge_count()), (3, 6));
        assert_eq!(g.max_abs_weight(), 8);
        assert!(g.validate().is_valid());
    }

    #[test]
    fn sink_is_reported() {
        let g = GameGraph::new(
            alloc::vec![Player::Alice, Player::Bob],
            alloc::vec![Edge::new(0, 1, 1)],
        )
        .unwrap();
        let report = g.validate();
        assert_eq!(report.violations, alloc::vec![Violation::Sink { node: 1 }]);
        assert!(report.to_string().contains("sink node"));
    }

    #[test]
    fn self_loop_is_reported() {
        let g = GameGraph::new(alloc::vec![Player::Alice], alloc::vec![Edge::new(0, 0, 3)]).unwrap();
        let report = g.validate();
        assert!(!report.is_valid());
        assert!(report.to_string().contains("self-loop (normalize first)"));
    }

    #[test]
    fn out_of_range_edge_rejected() {
        let err = GameGraph::new(alloc::vec![Player::Alice], alloc::vec![Edge::new(0, 1, 0)]);
        assert_eq!(err, Err(Error::NodeOutOfRange { node: 1, n: 1 }));
    }

    #[test]
    fn headroom_is_checked() {
        let owners = alloc::vec![Player::Alice, Player::Bob];
        let edges = alloc::vec![Edge::new(0, 1, i64::MAX / 8), Edge::new(1, 0, 0)];
        assert_eq!(GameGraph::new(owners, edges), Err(Error::WeightOverflow));
    }

    #[test]
    fn self_loop_elimination() {
        let g = figure1();
        assert_eq!(g.eliminate_self_loops(), g);

        let g = GameGraph::new(alloc::vec![Player::Alice], alloc::vec![Edge::new(0, 0, -1)]).unwrap();
        let h = g.eliminate_self_loops();
        assert_eq!(h.node_count(), 2);
        assert_eq!(h.owner(1), Player::Bob);
        assert_eq!(h.edges(), &[Edge::new(0, 1, -1), Edge::new(1, 0, -1)]);
        assert!(h.validate().is_valid());
        assert_eq!(h.eliminate_self_loops(), h);
    }
}
