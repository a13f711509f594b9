//! Exact minimal energies from repeated approximation.
//!
//! Given a lower bound `D` on the penalty, each level approximates the
//! energies with additive error `c <= nD`, shifts the weights by the
//! approximation (which keeps every cycle weight and the penalty) and
//! recurses on a game whose energies are bounded by `c`. The bound halves
//! from level to level until it drops to `n`, where plain value iteration
//! over `{0, ..., n}` finishes the job.
//!
//! The top level solves its rounded game over a list that is admissible
//! whatever the penalty, so its result never exceeds the true energies.
//! Deeper levels use the short lists above. If the penalty claim holds,
//! their value iteration never pushes a finite value past the end of the
//! list; if it does, the claim was false and the run is abandoned with
//! [`Error::AssumptionViolated`]. A run that finishes is therefore exact,
//! whatever `D` was.
//!
//! [`solve`] does not need the penalty: it guesses `D = c_k / n` with
//! `c_k = M / 2^k`, checks each result, and falls back to plain value
//! iteration once the guess drops below 1.

use alloc::vec::Vec;

use num_rational::Ratio;

use crate::admissible::AdmissibleList;
use crate::approx::{round_up, solve_rounded};
use crate::energy::EnergyFunction;
use crate::error::{Error, Result};
use crate::fixpoint::verify_minimal;
use crate::graph::GameGraph;
use crate::potential::apply_potential;
use crate::viter::{self, IterationStats};

/// Work done by one run of the recursion.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RecursionStats {
    /// Number of approximate-and-shift levels (the base case not counted).
    pub depth: usize,
    /// Value-iteration updates per level, base case last.
    pub level_updates: Vec<u64>,
    pub total_updates: u64,
    pub edge_relaxations: u64,
}

impl RecursionStats {
    fn record(&mut self, stats: &IterationStats) {
        self.level_updates.push(stats.total_updates);
        self.total_updates += stats.total_updates;
        self.edge_relaxations += stats.edge_relaxations;
    }
}

/// Minimal energies of `graph`, assuming its penalty is at least `penalty`
/// and its finite minimal energies are at most `bound`.
///
/// Requires `penalty >= 1`. When the penalty claim is false the run either
/// still returns the exact energies or fails with
/// [`Error::AssumptionViolated`].
pub fn minimal_energy_with_penalty_bound(
    graph: &GameGraph,
    bound: i64,
    penalty: Ratio<i64>,
) -> Result<EnergyFunction> {
    minimal_energy_with_stats(graph, bound, penalty).map(|(e, _)| e)
}

/// [`minimal_energy_with_penalty_bound`] together with its work counters.
pub fn minimal_energy_with_stats(
    graph: &GameGraph,
    bound: i64,
    penalty: Ratio<i64>,
) -> Result<(EnergyFunction, RecursionStats)> {
    graph.validate().into_result()?;
    if bound < 0 {
        return Err(Error::InvalidArgument("bound must be non-negative"));
    }
    if penalty < Ratio::from_integer(1) {
        return Err(Error::InvalidArgument("penalty bound must be at least 1"));
    }
    let mut stats = RecursionStats::default();
    let e = recurse(graph, bound, penalty, &mut stats)?;
    Ok((e, stats))
}

fn recurse(graph: &GameGraph, bound: i64, penalty: Ratio<i64>, stats: &mut RecursionStats) -> Result<EnergyFunction> {
    let n = graph.node_count() as i64;
    if n == 0 {
        return Ok(EnergyFunction::default());
    }
    let top = stats.level_updates.is_empty();
    // D >= M / (2n), compared exactly: 2n * num >= M * den.
    let large_penalty = (2 * n as i128) * (*penalty.numer() as i128) >= (bound as i128) * (*penalty.denom() as i128);
    let error = if large_penalty {
        if bound <= n {
            let list_top = if top { n.max(graph.universal_bound()) } else { n };
            let solution = viter::solve_with_list(graph, &AdmissibleList::full(list_top)?);
            stats.record(&solution.stats);
            if !top && solution.stats.truncations > 0 {
                return Err(Error::AssumptionViolated("residual energies exceed n"));
            }
            return Ok(solution.energies);
        }
        (bound / 2).max(n)
    } else {
        let c = (n as i128) * (*penalty.numer() as i128) / (*penalty.denom() as i128);
        i64::try_from(c).map_err(|_| Error::WeightOverflow)?
    };

    let list_top = if top {
        // the rounded game's own universal bound
        let step = error / n;
        let w = round_up(graph.max_abs_weight(), step);
        bound.max(n.checked_mul(w).ok_or(Error::WeightOverflow)?)
    } else {
        bound
    };
    let approx = solve_rounded(graph, error, list_top)?;
    stats.record(&approx.stats);
    stats.depth += 1;
    if !top && approx.stats.truncations > 0 {
        return Err(Error::AssumptionViolated("residual energies exceed the bound implied by the penalty"));
    }
    let shifted = apply_potential(graph, &approx.energies)?;
    let rest = recurse(&shifted.graph, error, penalty, stats)?;
    Ok(shifted.lift(&rest))
}

/// One guess of the driver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Guess {
    /// The error `c_k`; the guessed penalty is `c_k / n`.
    pub error: i64,
    pub penalty: Ratio<i64>,
    pub verified: bool,
    /// Set when the recursion itself rejected the guess.
    pub failure: Option<Error>,
    pub stats: RecursionStats,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveReport {
    pub energies: EnergyFunction,
    pub bound: i64,
    pub guesses: Vec<Guess>,
    /// Whether the final answer came from plain value iteration.
    pub fallback: bool,
    pub fallback_stats: Option<IterationStats>,
    /// Deepest recursion among the guesses.
    pub depth: usize,
    pub total_updates: u64,
    pub edge_relaxations: u64,
}

/// Minimal energies of `graph` without knowing its penalty.
///
/// `bound` defaults to `nW`; a smaller one only changes the guesses, not
/// the result. The returned energies always satisfy [`verify_minimal`].
pub fn solve(graph: &GameGraph, bound: Option<i64>) -> Result<SolveReport> {
    graph.validate().into_result()?;
    let n = graph.node_count() as i64;
    let bound = bound.unwrap_or_else(|| graph.universal_bound());
    if bound < 0 {
        return Err(Error::InvalidArgument("bound must be non-negative"));
    }
    let mut report = SolveReport {
        energies: EnergyFunction::default(),
        bound,
        guesses: Vec::new(),
        fallback: false,
        fallback_stats: None,
        depth: 0,
        total_updates: 0,
        edge_relaxations: 0,
    };
    if n == 0 {
        return Ok(report);
    }

    let mut k = 1u32;
    while k < 64 && (bound >> k) >= n {
        let error = bound >> k;
        let penalty = Ratio::new(error, n);
        let mut guess = Guess { error, penalty, verified: false, failure: None, stats: RecursionStats::default() };
        match minimal_energy_with_stats(graph, bound, penalty) {
            Ok((e, stats)) => {
                guess.stats = stats;
                report.edge_relaxations += graph.edge_count() as u64;
                if verify_minimal(graph, &e) {
                    guess.verified = true;
                    report.energies = e;
                }
            }
            Err(err) => guess.failure = Some(err),
        }
        report.depth = report.depth.max(guess.stats.depth);
        report.total_updates += guess.stats.total_updates;
        report.edge_relaxations += guess.stats.edge_relaxations;
        let verified = guess.verified;
        report.guesses.push(guess);
        if verified {
            return Ok(report);
        }
        k += 1;
    }

    // A caller-supplied bound might undershoot; nW never does.
    let top = bound.max(graph.universal_bound());
    let solution = viter::solve_with_list(graph, &AdmissibleList::full(top)?);
    report.total_updates += solution.stats.total_updates;
    report.edge_relaxations += solution.stats.edge_relaxations;
    report.energies = solution.energies;
    report.fallback = true;
    report.fallback_stats = Some(solution.stats);
    debug_assert!(verify_minimal(graph, &report.energies));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::approximate_energies;
    use crate::examples::{figure1, figure3};
    use crate::graph::{Edge, Player};

    fn ef(values: &[Option<i64>]) -> EnergyFunction {
        EnergyFunction::from_options(values.iter().copied())
    }

    #[test]
    fn figure3_with_penalty_three() {
        let g = figure3();
        let (e, stats) = minimal_energy_with_stats(&g, 18, Ratio::from_integer(3)).unwrap();
        assert_eq!(e, ef(&[Some(0), Some(4), Some(8)]));
        assert!(stats.depth >= 1);
    }

    #[test]
    fn figure3_one_level_by_hand() {
        let g = figure3();
        let approx = approximate_energies(&g, 18, 9).unwrap();
        assert_eq!(approx.energies, ef(&[Some(0), Some(0), Some(6)]));
        let shifted = apply_potential(&g, &approx.energies).unwrap();
        let rest = minimal_energy_with_penalty_bound(&shifted.graph, 9, Ratio::from_integer(3)).unwrap();
        assert_eq!(rest, ef(&[Some(0), Some(4), Some(2)]));
        assert_eq!(shifted.lift(&rest), ef(&[Some(0), Some(4), Some(8)]));
    }

    #[test]
    fn small_bound_is_a_single_call() {
        let g = GameGraph::new(
            alloc::vec![Player::Alice, Player::Bob, Player::Bob],
            alloc::vec![Edge::new(0, 1, 1), Edge::new(1, 2, -2), Edge::new(2, 0, 3)],
        )
        .unwrap();
        let (e, stats) = minimal_energy_with_stats(&g, 3, Ratio::from_integer(5)).unwrap();
        assert_eq!(stats.depth, 0);
        assert_eq!(stats.level_updates.len(), 1);
        assert_eq!(e, ef(&[Some(1), Some(2), Some(0)]));
    }

    #[test]
    fn overclaimed_penalty_is_caught() {
        // 2-cycle of weights -1, -1: penalty 1, everything loses
        let g = GameGraph::new(
            alloc::vec![Player::Alice, Player::Bob],
            alloc::vec![Edge::new(0, 1, -1), Edge::new(1, 0, -1)],
        )
        .unwrap();
        // rounding by 2 hides the cycle at the top level; the next level notices
        let top = solve_rounded(&g, 4, 8).unwrap();
        assert!(top.energies.iter().all(|x| x.is_finite()));
        assert!(!verify_minimal(&g, &top.energies));
        assert!(matches!(
            minimal_energy_with_penalty_bound(&g, 8, Ratio::from_integer(2)),
            Err(Error::AssumptionViolated(_))
        ));

        let report = solve(&g, None).unwrap();
        assert_eq!(report.energies, EnergyFunction::constant(2, crate::energy::Energy::Infinite));
        assert!(report.fallback);
    }

    #[test]
    fn driver_on_figures() {
        for g in [figure1(), figure3()] {
            let report = solve(&g, None).unwrap();
            assert_eq!(report.energies, ef(&[Some(0), Some(4), Some(8)]));
            assert!(verify_minimal(&g, &report.energies));
            assert_eq!(report.bound, 24);
        }
    }

    #[test]
    fn non_negative_graph_verifies_first_guess() {
        let g = GameGraph::new(
            alloc::vec![Player::Alice, Player::Bob, Player::Bob],
            alloc::vec![Edge::new(0, 1, 1), Edge::new(1, 2, 0), Edge::new(2, 0, 3), Edge::new(1, 0, 2)],
        )
        .unwrap();
        let report = solve(&g, None).unwrap();
        assert_eq!(report.energies, EnergyFunction::constant(3, crate::energy::Energy::ZERO));
        assert_eq!(report.guesses.len(), 1);
        assert!(report.guesses[0].verified);
        assert!(!report.fallback);
    }

    #[test]
    fn rejects_small_penalty() {
        assert!(matches!(
            minimal_energy_with_penalty_bound(&figure3(), 24, Ratio::new(1, 2)),
            Err(Error::InvalidArgument(_))
        ));
    }
}
