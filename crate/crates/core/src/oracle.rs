//! Exhaustive ground truth for small games: strategy-pair enumeration for
//! minimal energies and penalties, and a search for ergodic partitions.
//!
//! Strategies are enumerated lexicographically: the lowest-index node varies
//! slowest, and each node runs through its out-edges in edge order.

use alloc::vec::Vec;

use num_rational::Ratio;

use crate::energy::{Energy, EnergyFunction};
use crate::error::{Error, Result};
use crate::graph::{GameGraph, Player};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    /// Cap on strategy pairs (or search states, for the partition search).
    pub max_pairs: u64,
    pub max_nodes: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_pairs: 1_000_000, max_nodes: 10 }
    }
}

/// A positional strategy for both players: one chosen out-edge per node.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StrategyPair {
    choice: Vec<usize>,
}

impl StrategyPair {
    /// From one chosen successor per node (σ on Alice's nodes, τ on Bob's).
    pub fn from_successors(graph: &GameGraph, successors: &[usize]) -> Result<Self> {
        if successors.len() != graph.node_count() {
            return Err(Error::InvalidArgument("one successor per node is required"));
        }
        let choice = successors
            .iter()
            .enumerate()
            .map(|(u, &v)| {
                graph
                    .out_edge_ids(u)
                    .iter()
                    .copied()
                    .find(|&i| graph.edge(i).target == v)
                    .ok_or(Error::InvalidArgument("chosen successor is not an out-neighbour"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(StrategyPair { choice })
    }

    /// From one chosen edge index per node.
    pub fn from_edges(graph: &GameGraph, edges: Vec<usize>) -> Result<Self> {
        if edges.len() != graph.node_count()
            || edges.iter().enumerate().any(|(u, &i)| i >= graph.edge_count() || graph.edge(i).source != u)
        {
            return Err(Error::InvalidArgument("each node must choose one of its own out-edges"));
        }
        Ok(StrategyPair { choice: edges })
    }

    pub fn edge_of(&self, u: usize) -> usize {
        self.choice[u]
    }

    pub fn successor(&self, graph: &GameGraph, u: usize) -> usize {
        graph.edge(self.choice[u]).target
    }
}

/// The lasso from a start node in `G(σ, τ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lasso {
    /// Minimum prefix sum over the simple prefixes (the empty prefix included).
    pub min_prefix: i64,
    pub cycle_weight: i64,
    pub cycle_len: usize,
}

impl Lasso {
    pub fn energy(&self) -> Energy {
        if self.cycle_weight < 0 {
            Energy::Infinite
        } else {
            Energy::Finite(-self.min_prefix)
        }
    }
}

pub fn lasso(graph: &GameGraph, pair: &StrategyPair, start: usize) -> Lasso {
    lasso_by_choice(graph, &pair.choice, start, &mut alloc::vec![usize::MAX; graph.node_count()])
}

/// `position` is scratch space of length `n`, all `usize::MAX` on entry and on exit.
fn lasso_by_choice(graph: &GameGraph, choice: &[usize], start: usize, position: &mut [usize]) -> Lasso {
    let mut prefix = Vec::with_capacity(8);
    let mut path = Vec::with_capacity(8);
    let mut sum = 0i64;
    let mut min_prefix = 0i64;
    let mut v = start;
    while position[v] == usize::MAX {
        position[v] = path.len();
        path.push(v);
        prefix.push(sum);
        min_prefix = min_prefix.min(sum);
        sum += graph.edge(choice[v]).weight;
        v = graph.edge(choice[v]).target;
    }
    let entry = position[v];
    let cycle_weight = sum - prefix[entry];
    let cycle_len = path.len() - entry;
    for &u in &path {
        position[u] = usize::MAX;
    }
    Lasso { min_prefix, cycle_weight, cycle_len }
}

/// The minimal energy at `start` when both players follow `pair`: infinite
/// if the reached cycle is negative, otherwise `max(0, -min prefix sum)`.
pub fn eval_pair(graph: &GameGraph, pair: &StrategyPair, start: usize) -> Energy {
    lasso(graph, pair, start).energy()
}

/// Mixed-radix enumeration of one player's positional strategies.
struct StrategySpace {
    nodes: Vec<usize>,
    digits: Vec<usize>,
}

impl StrategySpace {
    fn new(graph: &GameGraph, player: Player) -> Self {
        let nodes: Vec<usize> = graph.nodes_of(player).collect();
        let digits = alloc::vec![0; nodes.len()];
        StrategySpace { nodes, digits }
    }

    fn size(&self, graph: &GameGraph) -> u128 {
        self.nodes.iter().map(|&v| graph.out_degree(v) as u128).product()
    }

    fn write(&self, graph: &GameGraph, choice: &mut [usize]) {
        for (&v, &d) in self.nodes.iter().zip(&self.digits) {
            choice[v] = graph.out_edge_ids(v)[d];
        }
    }

    fn reset(&mut self) {
        self.digits.iter_mut().for_each(|d| *d = 0);
    }

    /// Advances to the next strategy; false once all have been visited.
    fn advance(&mut self, graph: &GameGraph) -> bool {
        for i in (0..self.nodes.len()).rev() {
            self.digits[i] += 1;
            if self.digits[i] < graph.out_degree(self.nodes[i]) {
                return true;
            }
            self.digits[i] = 0;
        }
        false
    }
}

fn check_budget(graph: &GameGraph, budget: &OracleBudget) -> Result<(StrategySpace, StrategySpace)> {
    graph.validate().into_result()?;
    if graph.node_count() > budget.max_nodes {
        return Err(Error::BudgetExceeded {
            needed: graph.node_count() as u128,
            limit: budget.max_nodes as u128,
        });
    }
    let sigma = StrategySpace::new(graph, Player::Alice);
    let tau = StrategySpace::new(graph, Player::Bob);
    let pairs = sigma.size(graph).saturating_mul(tau.size(graph));
    if pairs > budget.max_pairs as u128 {
        return Err(Error::BudgetExceeded { needed: pairs, limit: budget.max_pairs as u128 });
    }
    Ok((sigma, tau))
}

/// Visits every strategy pair, handing over the lassos from every node.
fn for_each_pair<F>(graph: &GameGraph, budget: &OracleBudget, mut visit: F) -> Result<()>
where
    F: FnMut(&[usize], &[Lasso]),
{
    let (mut sigma, mut tau) = check_budget(graph, budget)?;
    let n = graph.node_count();
    let mut choice = alloc::vec![0usize; n];
    let mut scratch = alloc::vec![usize::MAX; n];
    let mut lassos = Vec::with_capacity(n);
    loop {
        sigma.write(graph, &mut choice);
        tau.reset();
        loop {
            tau.write(graph, &mut choice);
            lassos.clear();
            lassos.extend((0..n).map(|s| lasso_by_choice(graph, &choice, s, &mut scratch)));
            visit(&choice, &lassos);
            if !tau.advance(graph) {
                break;
            }
        }
        if !sigma.advance(graph) {
            break;
        }
    }
    Ok(())
}

/// `e*(s) = min over σ of max over τ of eval_pair`, by full enumeration.
pub fn brute_force_energies(graph: &GameGraph, budget: &OracleBudget) -> Result<EnergyFunction> {
    let n = graph.node_count();
    let mut best = EnergyFunction::constant(n, Energy::Infinite);
    let mut worst_for_sigma = alloc::vec![Energy::ZERO; n];
    let mut tau_count = 0u128;
    let tau_total = StrategySpace::new(graph, Player::Bob).size(graph);
    for_each_pair(graph, budget, |_, lassos| {
        for (s, l) in lassos.iter().enumerate() {
            worst_for_sigma[s] = worst_for_sigma[s].max(l.energy());
        }
        tau_count += 1;
        if tau_count == tau_total {
            for s in 0..n {
                best[s] = best[s].min(worst_for_sigma[s]);
                worst_for_sigma[s] = Energy::ZERO;
            }
            tau_count = 0;
        }
    })?;
    Ok(best)
}

/// A per-node penalty: an exact rational or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Penalty {
    Finite(Ratio<i64>),
    Infinite,
}

impl core::fmt::Display for Penalty {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Penalty::Finite(r) => write!(f, "{r}"),
            Penalty::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PenaltyReport {
    pub energies: EnergyFunction,
    /// Best over Bob strategies optimal at the node itself.
    pub per_node: Vec<Penalty>,
    /// Best over Bob strategies optimal at every node simultaneously.
    pub per_node_uniform: Vec<Penalty>,
}

impl PenaltyReport {
    /// `P(G, w)`, the minimum per-node penalty.
    pub fn graph_penalty(&self) -> Penalty {
        self.per_node.iter().copied().min().unwrap_or(Penalty::Infinite)
    }

    pub fn uniform_graph_penalty(&self) -> Penalty {
        self.per_node_uniform.iter().copied().min().unwrap_or(Penalty::Infinite)
    }
}

/// Per-node penalties by enumeration.
///
/// For a Bob strategy τ and a node `s`, `D(τ, s)` is the smallest
/// `-w(C)/|C|` over the negative cycles `C` reached from `s` under some σ
/// (infinite when no σ reaches one). The penalty of `s` is the largest
/// `D(τ, s)` over the τ that are optimal at `s`.
pub fn brute_force_penalty(graph: &GameGraph, budget: &OracleBudget) -> Result<PenaltyReport> {
    let energies = brute_force_energies(graph, budget)?;
    let n = graph.node_count();

    // For each τ: min over σ of the energy, and D(τ, s).
    let mut per_node = alloc::vec![Penalty::Finite(Ratio::from_integer(0)); n];
    let mut per_node_uniform = per_node.clone();
    let mut tau_best = alloc::vec![Energy::Infinite; n];
    let mut tau_depth = alloc::vec![Penalty::Infinite; n];

    // Enumerate with τ outermost so each τ's statistics complete together.
    let (mut sigma, mut tau) = check_budget(graph, budget)?;
    let mut choice = alloc::vec![0usize; n];
    let mut scratch = alloc::vec![usize::MAX; n];
    loop {
        tau.write(graph, &mut choice);
        sigma.reset();
        tau_best.iter_mut().for_each(|x| *x = Energy::Infinite);
        tau_depth.iter_mut().for_each(|x| *x = Penalty::Infinite);
        loop {
            sigma.write(graph, &mut choice);
            for s in 0..n {
                let l = lasso_by_choice(graph, &choice, s, &mut scratch);
                tau_best[s] = tau_best[s].min(l.energy());
                if l.cycle_weight < 0 {
                    let avg = Penalty::Finite(Ratio::new(-l.cycle_weight, l.cycle_len as i64));
                    tau_depth[s] = tau_depth[s].min(avg);
                }
            }
            if !sigma.advance(graph) {
                break;
            }
        }
        let uniformly_optimal = (0..n).all(|s| tau_best[s] == energies[s]);
        for s in 0..n {
            if tau_best[s] == energies[s] {
                per_node[s] = per_node[s].max(tau_depth[s]);
            }
            if uniformly_optimal {
                per_node_uniform[s] = per_node_uniform[s].max(tau_depth[s]);
            }
        }
        if !tau.advance(graph) {
            break;
        }
    }
    Ok(PenaltyReport { energies, per_node, per_node_uniform })
}

/// The four conditions of an ergodic partition, checked in full.
pub fn is_ergodic_partition(graph: &GameGraph, in_alice_block: &[bool]) -> bool {
    (0..graph.node_count()).all(|u| {
        let mine = in_alice_block[u];
        let stays = graph.out_edges(u).any(|e| in_alice_block[e.target] == mine);
        let leaves = graph.out_edges(u).any(|e| in_alice_block[e.target] != mine);
        match (graph.owner(u), mine) {
            (Player::Alice, true) => stays,
            (Player::Bob, true) => !leaves,
            (Player::Bob, false) => stays,
            (Player::Alice, false) => !leaves,
        }
    })
}

/// An ergodic partition `(S_A, S_B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErgodicPartition {
    pub alice_block: Vec<usize>,
    pub bob_block: Vec<usize>,
}

/// Exhaustive search for a non-trivial ergodic partition.
///
/// Each node gets a boolean (in `S_A` or not); the four conditions and
/// non-triviality become clauses, solved by backtracking with unit
/// propagation. `budget.max_pairs` caps the branching decisions and
/// `budget.max_nodes` the graph size.
pub fn find_ergodic_partition(graph: &GameGraph, budget: &OracleBudget) -> Result<Option<ErgodicPartition>> {
    let n = graph.node_count();
    if n > budget.max_nodes {
        return Err(Error::BudgetExceeded { needed: n as u128, limit: budget.max_nodes as u128 });
    }
    // literal (v, true) means v is in S_A
    let mut clauses: Vec<Vec<(usize, bool)>> = Vec::new();
    for u in 0..n {
        let targets: Vec<usize> = graph.out_edges(u).map(|e| e.target).collect();
        let mine = graph.owner(u) == Player::Alice;
        // Alice in S_A (Bob in S_B) can stay in her (his) block
        clauses.push(core::iter::once((u, !mine)).chain(targets.iter().map(|&t| (t, mine))).collect());
        // Bob in S_A (Alice in S_B) cannot leave it
        for t in targets {
            clauses.push(alloc::vec![(u, mine), (t, !mine)]);
        }
    }
    clauses.push((0..n).map(|v| (v, true)).collect());
    clauses.push((0..n).map(|v| (v, false)).collect());

    let mut search = PartitionSearch { clauses, decisions: 0, limit: budget.max_pairs };
    Ok(search.solve(alloc::vec![None; n])?.map(|block| ErgodicPartition {
        alice_block: (0..n).filter(|&v| block[v] == Some(true)).collect(),
        bob_block: (0..n).filter(|&v| block[v] != Some(true)).collect(),
    }))
}

struct PartitionSearch {
    clauses: Vec<Vec<(usize, bool)>>,
    decisions: u64,
    limit: u64,
}

impl PartitionSearch {
    /// Unit propagation to a fixpoint; false on a conflict.
    fn propagate(&self, value: &mut [Option<bool>]) -> bool {
        loop {
            let mut changed = false;
            for clause in &self.clauses {
                let mut open = None;
                let mut open_count = 0;
                let mut satisfied = false;
                for &(v, sign) in clause {
                    match value[v] {
                        Some(x) if x == sign => {
                            satisfied = true;
                            break;
                        }
                        Some(_) => {}
                        None => {
                            open_count += 1;
                            open = Some((v, sign));
                        }
                    }
                }
                if satisfied {
                    continue;
                }
                match (open_count, open) {
                    (0, _) => return false,
                    (1, Some((v, sign))) => {
                        value[v] = Some(sign);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn solve(&mut self, mut value: Vec<Option<bool>>) -> Result<Option<Vec<Option<bool>>>> {
        if !self.propagate(&mut value) {
            return Ok(None);
        }
        let Some(v) = value.iter().position(|x| x.is_none()) else {
            return Ok(Some(value));
        };
        for side in [true, false] {
            self.decisions += 1;
            if self.decisions > self.limit {
                return Err(Error::BudgetExceeded { needed: self.decisions as u128, limit: self.limit as u128 });
            }
            let mut next = value.clone();
            next[v] = Some(side);
            if let Some(found) = self.solve(next)? {
                return Ok(Some(found));
            }
        }
        Ok(None)
    }
}

/// Every simple cycle as a list of edge indices, each cycle starting at its
/// smallest node. Fails once more than `limit` cycles have been found.
pub fn simple_cycles(graph: &GameGraph, limit: usize) -> Result<Vec<Vec<usize>>> {
    fn extend(
        graph: &GameGraph,
        start: usize,
        at: usize,
        on_path: &mut [bool],
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) -> Result<()> {
        for &i in graph.out_edge_ids(at) {
            let t = graph.edge(i).target;
            if t == start {
                if out.len() == limit {
                    return Err(Error::BudgetExceeded { needed: limit as u128 + 1, limit: limit as u128 });
                }
                path.push(i);
                out.push(path.clone());
                path.pop();
            } else if t > start && !on_path[t] {
                on_path[t] = true;
                path.push(i);
                extend(graph, start, t, on_path, path, out, limit)?;
                path.pop();
                on_path[t] = false;
            }
        }
        Ok(())
    }
    let mut out = Vec::new();
    let mut on_path = alloc::vec![false; graph.node_count()];
    for start in 0..graph.node_count() {
        on_path[start] = true;
        extend(graph, start, start, &mut on_path, &mut Vec::new(), &mut out, limit)?;
        on_path[start] = false;
    }
    Ok(out)
}
