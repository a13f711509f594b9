//! Seeded instance generators.
//!
//! All randomness comes from SplitMix64 (state `s += 0x9e3779b97f4a7c15`,
//! output mixed with the usual 30/27/31 xor-shift-multiply finaliser),
//! seeded directly with the spec seed, and from `rand`'s portable integer
//! range sampling. No floating point is involved, so a spec produces the
//! same instance on every platform.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::error::{Error, Result};
use crate::graph::{Edge, GameGraph, Player};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Uniform weights in `[-W, W]`.
    Random,
    /// Weights are multiples of `step` within `[-W, W]`.
    Multiples { step: i64 },
    /// Weights within `delta` of one of `centers` centers drawn from `center_range`.
    Windowed { centers: usize, delta: i64, center_range: (i64, i64) },
    /// Hub-and-branch games whose cycles are positive or at most `-W|C|/2`;
    /// `n` and `m` are ignored.
    HighPenalty { choices: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenSpec {
    pub family: Family,
    pub n: usize,
    pub m: usize,
    pub max_weight: i64,
    /// Chance, in percent, that a node belongs to Alice.
    pub alice_percent: u32,
    pub seed: u64,
    pub max_out_degree: Option<usize>,
}

impl GenSpec {
    pub fn random(n: usize, m: usize, max_weight: i64, seed: u64) -> Self {
        GenSpec { family: Family::Random, n, m, max_weight, alice_percent: 50, seed, max_out_degree: None }
    }

    pub fn with_family(mut self, family: Family) -> Self {
        self.family = family;
        self
    }

    pub fn with_max_out_degree(mut self, d: usize) -> Self {
        self.max_out_degree = Some(d);
        self
    }
}

/// A generated game, plus the window centers for the windowed family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generated {
    pub graph: GameGraph,
    pub centers: Vec<i64>,
}

pub fn generate(spec: &GenSpec) -> Result<Generated> {
    match spec.family {
        Family::Random => Ok(Generated { graph: random_game(spec)?, centers: Vec::new() }),
        Family::Multiples { step } => {
            if step < 1 || step > spec.max_weight {
                return Err(Error::Infeasible("multiples step must lie in [1, W]"));
            }
            let k = spec.max_weight / step;
            let graph = build(spec, |rng| step * rng.gen_range(-k..=k))?;
            Ok(Generated { graph, centers: Vec::new() })
        }
        Family::Windowed { centers, delta, center_range } => {
            let (graph, centers) = windowed_game(spec, centers, delta, center_range)?;
            Ok(Generated { graph, centers })
        }
        Family::HighPenalty { choices } => {
            Ok(Generated { graph: high_penalty_family(choices, spec.max_weight, spec.seed)?, centers: Vec::new() })
        }
    }
}

/// Random owners, random edges without self-loops or duplicates, and
/// uniform weights in `[-W, W]`. Every node first gets one out-edge.
pub fn random_game(spec: &GenSpec) -> Result<GameGraph> {
    if spec.max_weight < 1 {
        return Err(Error::Infeasible("W must be at least 1"));
    }
    let w = spec.max_weight;
    build(spec, |rng| rng.gen_range(-w..=w))
}

/// Random graph whose weights lie in `[c - delta, c + delta]` for one of
/// `d` centers drawn from `center_range` (inclusive). Returns the centers.
pub fn windowed_game(
    spec: &GenSpec,
    d: usize,
    delta: i64,
    center_range: (i64, i64),
) -> Result<(GameGraph, Vec<i64>)> {
    if d < 1 || delta < 0 || center_range.0 > center_range.1 {
        return Err(Error::Infeasible("windowed family needs d >= 1, delta >= 0 and a non-empty center range"));
    }
    let mut rng = SplitMix64::seed_from_u64(spec.seed ^ 0x5bd1_e995);
    let centers: Vec<i64> = (0..d).map(|_| rng.gen_range(center_range.0..=center_range.1)).collect();
    let graph = build(spec, |rng| centers[rng.gen_range(0..d)] + rng.gen_range(-delta..=delta))?;
    Ok((graph, centers))
}

fn build<F>(spec: &GenSpec, mut weight: F) -> Result<GameGraph>
where
    F: FnMut(&mut SplitMix64) -> i64,
{
    let n = spec.n;
    if n < 2 {
        return Err(Error::Infeasible("at least two nodes are needed to avoid self-loops"));
    }
    let cap = spec.max_out_degree.unwrap_or(n - 1).min(n - 1);
    if cap == 0 {
        return Err(Error::Infeasible("out-degree cap must be positive"));
    }
    if spec.m < n || spec.m > n * cap {
        return Err(Error::Infeasible("need n <= m <= n * max out-degree"));
    }
    if spec.alice_percent > 100 {
        return Err(Error::Infeasible("alice percent must be at most 100"));
    }
    let mut rng = SplitMix64::seed_from_u64(spec.seed);
    let owners: Vec<Player> = (0..n)
        .map(|_| if rng.gen_range(0..100) < spec.alice_percent { Player::Alice } else { Player::Bob })
        .collect();

    let mut adjacent = alloc::vec![alloc::vec![false; n]; n];
    let mut degree = alloc::vec![0usize; n];
    let mut pairs = Vec::with_capacity(spec.m);
    for k in 0..spec.m {
        let u = if k < n {
            k
        } else {
            let open: Vec<usize> = (0..n).filter(|&u| degree[u] < cap).collect();
            open[rng.gen_range(0..open.len())]
        };
        let free: Vec<usize> = (0..n).filter(|&v| v != u && !adjacent[u][v]).collect();
        let v = free[rng.gen_range(0..free.len())];
        adjacent[u][v] = true;
        degree[u] += 1;
        pairs.push((u, v));
    }
    pairs.sort_unstable();
    let edges = pairs.into_iter().map(|(u, v)| Edge::new(u, v, weight(&mut rng))).collect();
    GameGraph::new(owners, edges)
}

/// Hub-and-branch games in the high-penalty class.
///
/// Node 0 is Alice's hub. Each of the `choices` branches is a cycle through
/// one or two fresh Bob nodes back to the hub; a two-node branch may also
/// get a shortcut from its first node straight back to the hub. Every cycle
/// goes through the hub once and stays inside one branch, and each cycle's
/// total is drawn from `[1, W|C|]` or `[-W|C|, -ceil(W|C|/2)]`, so every cycle
/// is positive or has average at most `-W/2`. Branch 0 is always positive
/// without a shortcut.
///
/// The topology depends only on `seed`. When 8 divides `W`, weights are drawn
/// for `W = 8` and scaled by `W / 8`, so a sweep over such `W` gives scaled
/// copies of one instance.
pub fn high_penalty_family(choices: usize, max_weight: i64, seed: u64) -> Result<GameGraph> {
    if choices < 1 {
        return Err(Error::Infeasible("at least one branch is needed"));
    }
    if max_weight < 2 {
        return Err(Error::Infeasible("W must be at least 2"));
    }
    let (w, scale) = if max_weight % 8 == 0 { (8, max_weight / 8) } else { (max_weight, 1) };
    let mut shape = SplitMix64::seed_from_u64(seed);
    let mut rng = SplitMix64::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);

    let mut owners = alloc::vec![Player::Alice];
    let mut edges = Vec::new();
    for branch in 0..choices {
        let len: i64 = if shape.gen_range(0..2) == 0 { 2 } else { 3 };
        let shortcut = branch > 0 && len == 3 && shape.gen_range(0..2) == 0;
        let positive = branch == 0 || rng.gen_range(0..2) == 0;
        let total = cycle_total(&mut rng, w, len, positive);
        let weights = split_total(&mut rng, w, total, len);

        let first = owners.len();
        let path: Vec<usize> = (0..len as usize - 1).map(|i| first + i).collect();
        owners.extend(path.iter().map(|_| Player::Bob));
        let mut at = 0usize;
        for (i, &wt) in weights.iter().enumerate() {
            let to = path.get(i).copied().unwrap_or(0);
            edges.push(Edge::new(at, to, wt * scale));
            at = to;
        }
        if shortcut {
            // hub -> first -> hub, sharing the first edge
            let w1 = weights[0];
            let lo = w1 - w;
            let hi = w1 + w;
            let neg_top = -w; // -ceil(2W / 2)
            let can_pos = hi >= 1;
            let can_neg = lo <= neg_top;
            let positive = match (can_pos, can_neg) {
                (true, true) => rng.gen_range(0..2) == 0,
                (p, _) => p,
            };
            let total = if positive {
                rng.gen_range(lo.max(1)..=hi.min(2 * w))
            } else {
                rng.gen_range(lo.max(-2 * w)..=neg_top.min(hi))
            };
            edges.push(Edge::new(first, 0, (total - w1) * scale));
        }
    }
    GameGraph::new(owners, edges)
}

fn cycle_total(rng: &mut SplitMix64, w: i64, len: i64, positive: bool) -> i64 {
    if positive {
        rng.gen_range(1..=w * len)
    } else {
        let reach = w * len;
        rng.gen_range(-reach..=-((reach + 1) / 2))
    }
}

/// Splits `total` into `len` weights in `[-w, w]`.
fn split_total(rng: &mut SplitMix64, w: i64, total: i64, len: i64) -> Vec<i64> {
    let mut rest = total;
    let mut out = Vec::with_capacity(len as usize);
    for i in 0..len {
        let left = len - 1 - i;
        if left == 0 {
            out.push(rest);
        } else {
            let lo = (-w).max(rest - w * left);
            let hi = w.min(rest + w * left);
            let x = rng.gen_range(lo..=hi);
            out.push(x);
            rest -= x;
        }
    }
    out
}
