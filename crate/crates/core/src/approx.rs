//! Weight rounding and the additive approximation built on it.
//!
//! Rounding every weight up to a multiple of `B` only helps Alice, so the
//! rounded game's minimal energies never exceed the true ones. When every
//! node's penalty is at least `B` the error is at most `n * B`, and the
//! rounded game is cheap to solve because all its energies are multiples
//! of `B`.

use alloc::vec::Vec;

use crate::admissible::AdmissibleList;
use crate::energy::EnergyFunction;
use crate::error::{Error, Result};
use crate::graph::GameGraph;
use crate::viter::{self, IterationStats};

/// `graph` with every weight rounded up to a multiple of `granularity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundedGame {
    pub graph: GameGraph,
    pub granularity: i64,
}

/// `ceil(w / step) * step`.
pub fn round_up(weight: i64, step: i64) -> i64 {
    num_integer::Integer::div_ceil(&weight, &step) * step
}

pub fn round_weights(graph: &GameGraph, granularity: i64) -> Result<RoundedGame> {
    if granularity < 1 {
        return Err(Error::InvalidArgument("rounding granularity must be positive"));
    }
    let weights: Vec<i64> = graph.edges().iter().map(|e| round_up(e.weight, granularity)).collect();
    Ok(RoundedGame { graph: graph.with_weights(&weights)?, granularity })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Approximation {
    /// The rounded game's minimal energies: a pointwise lower bound on the
    /// true ones, within `n * granularity` of them on high-penalty nodes.
    pub energies: EnergyFunction,
    pub granularity: i64,
    pub stats: IterationStats,
}

/// Approximates the minimal energies of `graph` with additive error `error`.
///
/// Uses `B = floor(error / n)` and solves the `B`-rounded game over the
/// multiples of `B` up to `bound`, where `bound` must bound the finite
/// minimal energies of `graph` (it then bounds the rounded game's too).
/// `e <= e*` always holds; `e* <= e + error` with matching infinities holds
/// when every node has penalty at least `B`, which is not checked here.
pub fn approximate_energies(graph: &GameGraph, bound: i64, error: i64) -> Result<Approximation> {
    let n = graph.node_count() as i64;
    if n == 0 {
        return Ok(Approximation {
            energies: EnergyFunction::default(),
            granularity: 1,
            stats: IterationStats::default(),
        });
    }
    solve_rounded(graph, error, bound)
}

/// Solves the game rounded to granularity `floor(error / n)` over the
/// multiples of the granularity up to `list_top`.
///
/// With `list_top` at least the rounded game's `nW` the list is admissible
/// whatever the true energies are, and the result is exactly the rounded
/// game's minimal energy function.
pub fn solve_rounded(graph: &GameGraph, error: i64, list_top: i64) -> Result<Approximation> {
    let n = graph.node_count() as i64;
    if error < n.max(1) {
        return Err(Error::InvalidArgument("approximation error must be at least n"));
    }
    let granularity = error / n.max(1);
    let rounded = round_weights(graph, granularity)?;
    let list = AdmissibleList::multiples(granularity, list_top)?;
    let solution = viter::solve_with_list(&rounded.graph, &list);
    Ok(Approximation { energies: solution.energies, granularity, stats: solution.stats })
}
