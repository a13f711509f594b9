//! Potential transformation `w'(u,v) = w(u,v) + e(u) - e(v)` restricted to
//! the nodes where the potential is finite.

use alloc::vec::Vec;

use crate::energy::{Energy, EnergyFunction};
use crate::error::{Error, Result};
use crate::graph::{Edge, GameGraph, Player};

/// A game after a potential shift, with the bookkeeping needed to map
/// energies back onto the original node set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PotentialGame {
    /// Subgraph on the finite-potential nodes with shifted weights.
    pub graph: GameGraph,
    /// `kept[i]` is the original index of node `i` of `graph`.
    pub kept: Vec<usize>,
    /// `offsets[i] = e(kept[i])`.
    pub offsets: Vec<i64>,
    original_nodes: usize,
}

impl PotentialGame {
    pub fn original_node_count(&self) -> usize {
        self.original_nodes
    }

    /// `e(v) + sub(v)` on kept nodes, infinity on the dropped ones.
    pub fn lift(&self, sub: &EnergyFunction) -> EnergyFunction {
        assert_eq!(sub.len(), self.kept.len(), "energy function does not match the subgraph");
        let mut out = EnergyFunction::constant(self.original_nodes, Energy::Infinite);
        for (i, &v) in self.kept.iter().enumerate() {
            out[v] = sub[i].plus(self.offsets[i]);
        }
        out
    }
}

/// Shifts the weights of `graph` by the potential `e` and drops every node
/// with `e(v) = inf`.
///
/// Edges from Alice nodes into dropped nodes are removed. The potential must
/// satisfy the progress conditions on the game it came from, so a Bob node
/// with finite potential never points at a dropped node and every kept
/// Alice node keeps a successor; both are reported as [`Error::Contract`].
/// Every cycle of the result has the same total weight as in `graph`.
pub fn apply_potential(graph: &GameGraph, e: &EnergyFunction) -> Result<PotentialGame> {
    if e.len() != graph.node_count() || !e.is_well_formed() {
        return Err(Error::Contract("potential must be a non-negative energy function on all nodes"));
    }
    let n = graph.node_count();
    let mut new_index = alloc::vec![usize::MAX; n];
    let mut kept = Vec::new();
    let mut offsets = Vec::new();
    for v in 0..n {
        if let Energy::Finite(x) = e[v] {
            new_index[v] = kept.len();
            kept.push(v);
            offsets.push(x);
        }
    }

    let mut edges = Vec::with_capacity(graph.edge_count());
    for &u in &kept {
        let pu = offsets[new_index[u]];
        let mut kept_out = 0usize;
        for edge in graph.out_edges(u) {
            match e[edge.target] {
                Energy::Finite(pv) => {
                    let w = edge
                        .weight
                        .checked_add(pu)
                        .and_then(|x| x.checked_sub(pv))
                        .ok_or(Error::WeightOverflow)?;
                    edges.push(Edge::new(new_index[u], new_index[edge.target], w));
                    kept_out += 1;
                }
                Energy::Infinite if graph.owner(u) == Player::Bob => {
                    return Err(Error::Contract("Bob node with finite potential reaches an infinite one"));
                }
                Energy::Infinite => {}
            }
        }
        if kept_out == 0 {
            return Err(Error::Contract("Alice node with finite potential has no finite successor"));
        }
    }
    let owners = kept.iter().map(|&v| graph.owner(v)).collect();
    Ok(PotentialGame {
        graph: GameGraph::new(owners, edges)?,
        kept,
        offsets,
        original_nodes: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{figure1, figure3};

    #[test]
    fn figure3_shift() {
        let g = figure3();
        let e = EnergyFunction::from_options([Some(0), Some(0), Some(6)]);
        let pg = apply_potential(&g, &e).unwrap();
        let weights: Vec<i64> = pg.graph.edges().iter().map(|e| e.weight).collect();
        assert_eq!(weights, [7, -4, -2, -2]);
        // cycle a -> c -> a keeps its total
        assert_eq!(2 + -8, -4 + -2);
        assert_eq!(pg.kept, [0, 1, 2]);
    }

    #[test]
    fn zero_potential_is_identity() {
        let g = figure1();
        let pg = apply_potential(&g, &EnergyFunction::constant(3, Energy::ZERO)).unwrap();
        assert_eq!(pg.graph, g);
    }

    #[test]
    fn infinite_nodes_are_dropped() {
        // a(Alice) -> b(Bob) and a -> c(Bob); c is losing
        let g = GameGraph::new(
            alloc::vec![Player::Alice, Player::Bob, Player::Bob],
            alloc::vec![
                Edge::new(0, 1, 1),
                Edge::new(0, 2, 0),
                Edge::new(1, 0, 0),
                Edge::new(2, 0, -5),
            ],
        )
        .unwrap();
        let e = EnergyFunction::from_options([Some(0), Some(0), None]);
        let pg = apply_potential(&g, &e).unwrap();
        assert_eq!(pg.graph.node_count(), 2);
        assert_eq!(pg.graph.edges(), &[Edge::new(0, 1, 1), Edge::new(1, 0, 0)]);
        let lifted = pg.lift(&EnergyFunction::from_options([Some(1), Some(2)]));
        assert_eq!(lifted, EnergyFunction::from_options([Some(1), Some(2), None]));
    }

    #[test]
    fn contract_violations() {
        let g = figure1();
        // b is Bob with an edge into c, which is infinite
        let e = EnergyFunction::from_options([Some(0), Some(0), None]);
        assert!(matches!(apply_potential(&g, &e), Err(Error::Contract(_))));

        let g = GameGraph::new(
            alloc::vec![Player::Alice, Player::Bob],
            alloc::vec![Edge::new(0, 1, 0), Edge::new(1, 0, 0)],
        )
        .unwrap();
        let e = EnergyFunction::from_options([Some(0), None]);
        assert!(matches!(apply_potential(&g, &e), Err(Error::Contract(_))));
    }
}
