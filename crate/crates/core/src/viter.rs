//! Value iteration over an admissible list, with per-node counters for
//! Alice's nodes so each update costs `O(deg+ + deg-)`.
//!
//! Every node starts at the smallest list entry. A node is pending while it
//! violates its local condition (Alice: every out-edge has
//! `e(u) + w < e(v)`; Bob: some out-edge does). Updating a pending node sets
//! it to the `min`/`max` of `e(v) - w(u,v)` over its out-edges, rounded up
//! to the next list entry. With an admissible list the result is the
//! minimal energy function, and each node is updated at most `|list|` times.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use crate::admissible::AdmissibleList;
use crate::energy::{edge_satisfied, EnergyFunction};
use crate::graph::{GameGraph, Player};

/// Pop order of the pending set. The result does not depend on it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PendingOrder {
    #[default]
    Fifo,
    Lifo,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IterationStats {
    /// Updates per node.
    pub node_updates: Vec<u64>,
    pub total_updates: u64,
    /// Edges scanned, initialisation included.
    pub edge_relaxations: u64,
    /// Updates where a finite candidate lay beyond the list and became infinity.
    pub truncations: u64,
}

impl IterationStats {
    pub fn absorb(&mut self, other: &IterationStats) {
        self.total_updates += other.total_updates;
        self.edge_relaxations += other.edge_relaxations;
        self.truncations += other.truncations;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub energies: EnergyFunction,
    pub stats: IterationStats,
}

/// Computes the minimal energies of `graph`, given that `list` is admissible for it.
///
/// The graph must be valid (no sinks, no self-loops).
pub fn solve_with_list(graph: &GameGraph, list: &AdmissibleList) -> Solution {
    solve_observed(graph, list, PendingOrder::Fifo, |_| {})
}

/// [`solve_with_list`] with an explicit pending order and a callback that
/// sees the energy function after every update.
pub fn solve_observed<F>(
    graph: &GameGraph,
    list: &AdmissibleList,
    order: PendingOrder,
    mut observe: F,
) -> Solution
where
    F: FnMut(&EnergyFunction),
{
    debug_assert!(graph.validate().is_valid(), "value iteration needs a valid graph");
    let n = graph.node_count();
    let mut e = EnergyFunction::constant(n, list.first());
    let mut stats = IterationStats { node_updates: alloc::vec![0; n], ..Default::default() };

    let mut pending: VecDeque<usize> = VecDeque::new();
    let mut queued = alloc::vec![false; n];
    let mut count = alloc::vec![0i64; n];

    for u in 0..n {
        let satisfied = satisfied_out_edges(graph, &e, u) as i64;
        stats.edge_relaxations += graph.out_degree(u) as u64;
        let violated = match graph.owner(u) {
            Player::Alice => satisfied == 0,
            Player::Bob => satisfied < graph.out_degree(u) as i64,
        };
        if violated {
            pending.push_back(u);
            queued[u] = true;
        }
        if graph.owner(u) == Player::Alice && !violated {
            count[u] = satisfied;
        }
    }

    loop {
        let next = match order {
            PendingOrder::Fifo => pending.pop_front(),
            PendingOrder::Lifo => pending.pop_back(),
        };
        let Some(u) = next else { break };
        queued[u] = false;
        let old = e[u];

        let candidates = graph.out_edges(u).map(|edge| e[edge.target].minus(edge.weight));
        let raw = match graph.owner(u) {
            Player::Alice => candidates.min(),
            Player::Bob => candidates.max(),
        }
        .expect("node without out-edges");
        let new = list.next_at_least(raw);
        if raw.is_finite() && !new.is_finite() {
            stats.truncations += 1;
        }
        assert!(new > old, "value iteration must strictly increase e({u}): {old} -> {new}");
        e[u] = new;
        stats.node_updates[u] += 1;
        stats.total_updates += 1;
        stats.edge_relaxations += (graph.out_degree(u) + graph.in_edge_ids(u).len()) as u64;

        if graph.owner(u) == Player::Alice {
            count[u] = satisfied_out_edges(graph, &e, u) as i64;
        }

        for edge in graph.in_edges(u) {
            let t = edge.source;
            if edge_satisfied(e[t], edge.weight, new) {
                continue;
            }
            match graph.owner(t) {
                Player::Alice => {
                    if edge_satisfied(e[t], edge.weight, old) {
                        count[t] -= 1;
                    }
                    if count[t] <= 0 && !queued[t] {
                        queued[t] = true;
                        pending.push_back(t);
                    }
                }
                Player::Bob => {
                    if !queued[t] {
                        queued[t] = true;
                        pending.push_back(t);
                    }
                }
            }
        }

        #[cfg(debug_assertions)]
        for t in core::iter::once(u).chain(graph.in_edges(u).map(|edge| edge.source)) {
            if graph.owner(t) == Player::Alice && !queued[t] {
                debug_assert_eq!(
                    count[t],
                    satisfied_out_edges(graph, &e, t) as i64,
                    "incremental counter drifted at node {t}"
                );
            }
        }

        observe(&e);
    }

    Solution { energies: e, stats }
}

fn satisfied_out_edges(graph: &GameGraph, e: &EnergyFunction, u: usize) -> usize {
    graph
        .out_edges(u)
        .filter(|edge| edge_satisfied(e[u], edge.weight, e[edge.target]))
        .count()
}

/// Plain value iteration with the full list `{0, ..., nW, inf}`.
pub fn solve_full(graph: &GameGraph) -> Solution {
    let list = AdmissibleList::full(graph.universal_bound()).expect("n*W is non-negative");
    solve_with_list(graph, &list)
}
