//! Local fixed-point checks on energy functions.

use crate::energy::{edge_satisfied, Energy, EnergyFunction};
use crate::graph::{GameGraph, Player};

/// The right-hand side of the minimal-energy equation at `u`:
/// `min` (Alice) or `max` (Bob) over out-edges of `max(e(v) - w(u,v), 0)`.
pub fn local_value(graph: &GameGraph, e: &EnergyFunction, u: usize) -> Energy {
    let candidates = graph.out_edges(u).map(|edge| e[edge.target].minus(edge.weight).clamp_zero());
    let value = match graph.owner(u) {
        Player::Alice => candidates.min(),
        Player::Bob => candidates.max(),
    };
    // a sink has no successor; treat as a losing position for its owner
    value.unwrap_or(match graph.owner(u) {
        Player::Alice => Energy::Infinite,
        Player::Bob => Energy::ZERO,
    })
}

/// True iff `e` solves the minimal-energy equations at every node. One pass
/// over the edges. The equations have exactly one solution, the minimal
/// energy function.
pub fn verify_minimal(graph: &GameGraph, e: &EnergyFunction) -> bool {
    e.len() == graph.node_count()
        && e.is_well_formed()
        && (0..graph.node_count()).all(|u| local_value(graph, e, u) == e[u])
}

/// Conditions 1 and 2 of the progress characterisation: some out-edge of
/// every Alice node and every out-edge of every Bob node satisfy
/// `e(u) + w(u,v) >= e(v)`.
pub fn check_progress_conditions(graph: &GameGraph, e: &EnergyFunction) -> bool {
    e.len() == graph.node_count() && (0..graph.node_count()).all(|u| node_satisfied(graph, e, u))
}

#[inline]
pub(crate) fn node_satisfied(graph: &GameGraph, e: &EnergyFunction, u: usize) -> bool {
    let mut ok = graph.out_edges(u).map(|edge| edge_satisfied(e[u], edge.weight, e[edge.target]));
    match graph.owner(u) {
        Player::Alice => ok.any(|b| b),
        Player::Bob => ok.all(|b| b),
    }
}
