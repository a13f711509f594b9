//! Admissible value lists: sorted supersets of every value the minimal
//! energy can take, with infinity as an implicit last element.

use alloc::vec::Vec;

use crate::energy::Energy;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleList {
    finite: Vec<i64>,
}

impl AdmissibleList {
    /// Wraps an explicit list; values must be non-negative and strictly increasing.
    pub fn from_values(finite: Vec<i64>) -> Result<Self> {
        if finite.first().is_some_and(|&x| x < 0) {
            return Err(Error::InvalidArgument("admissible values must be non-negative"));
        }
        if finite.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument("admissible values must be strictly increasing"));
        }
        Ok(AdmissibleList { finite })
    }

    /// `{0, 1, ..., bound, inf}`.
    pub fn full(bound: i64) -> Result<Self> {
        if bound < 0 {
            return Err(Error::InvalidArgument("bound must be non-negative"));
        }
        Ok(AdmissibleList { finite: (0..=bound).collect() })
    }

    /// `{i * step | 0 <= i <= ceil(bound / step)} ∪ {inf}`.
    pub fn multiples(step: i64, bound: i64) -> Result<Self> {
        if step < 1 {
            return Err(Error::InvalidArgument("step must be positive"));
        }
        if bound < 0 {
            return Err(Error::InvalidArgument("bound must be non-negative"));
        }
        let top = num_integer::Integer::div_ceil(&bound, &step);
        let finite = (0..=top)
            .map(|i| i.checked_mul(step).ok_or(Error::WeightOverflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(AdmissibleList { finite })
    }

    /// The fixed-window list for weights that all lie within `delta` of one
    /// of `centers`: every `-(k_1 c_1 + ... + k_d c_d) + x` with
    /// `k_1 + ... + k_d <= n` and `|x| <= n * delta`, clamped to `[0, bound]`.
    pub fn window(centers: &[i64], delta: i64, n: usize, bound: i64) -> Result<Self> {
        Self::window_with_stats(centers, delta, n, bound).map(|(list, _)| list)
    }

    /// [`AdmissibleList::window`] together with its construction sizes.
    pub fn window_with_stats(
        centers: &[i64],
        delta: i64,
        n: usize,
        bound: i64,
    ) -> Result<(Self, WindowStats)> {
        if centers.is_empty() {
            return Err(Error::InvalidArgument("window list needs at least one center"));
        }
        if delta < 0 || bound < 0 {
            return Err(Error::InvalidArgument("delta and bound must be non-negative"));
        }
        let mut sums = Vec::new();
        collect_center_sums(centers, n, 0, &mut sums)?;
        sums.sort_unstable();
        sums.dedup();

        let reach = i64::try_from(n)
            .ok()
            .and_then(|n| n.checked_mul(delta))
            .ok_or(Error::WeightOverflow)?;
        let mut finite: Vec<i64> = Vec::new();
        let mut generated = 0u64;
        for &y in &sums {
            let lo = y.saturating_sub(reach).max(0);
            let hi = y.saturating_add(reach).min(bound);
            if lo > hi {
                continue;
            }
            let start = finite.last().map_or(lo, |&last| lo.max(last + 1));
            generated += (hi - lo + 1) as u64;
            finite.extend(start..=hi);
        }
        let stats = WindowStats { center_sums: sums.len(), generated, list_len: finite.len() + 1 };
        Ok((AdmissibleList { finite }, stats))
    }

    /// Number of entries including the trailing infinity.
    pub fn len(&self) -> usize {
        self.finite.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn finite_values(&self) -> &[i64] {
        &self.finite
    }

    /// The smallest entry (infinity when there are no finite values).
    pub fn first(&self) -> Energy {
        self.finite.first().map_or(Energy::Infinite, |&x| Energy::Finite(x))
    }

    pub fn max_finite(&self) -> Option<i64> {
        self.finite.last().copied()
    }

    /// `min {r in list | r >= x}`; values past the last finite entry become infinity.
    pub fn next_at_least(&self, x: Energy) -> Energy {
        match x {
            Energy::Infinite => Energy::Infinite,
            Energy::Finite(x) => {
                let i = self.finite.partition_point(|&r| r < x);
                self.finite.get(i).map_or(Energy::Infinite, |&r| Energy::Finite(r))
            }
        }
    }

    pub fn contains(&self, x: Energy) -> bool {
        match x {
            Energy::Infinite => true,
            Energy::Finite(x) => self.finite.binary_search(&x).is_ok(),
        }
    }
}

/// Sizes observed while building a window list: `|S|` (the distinct center
/// sums, sorted in `O(|S| log |S|)`) and the number of interval values
/// generated before de-duplication (the `O(delta n^{d+1})` term).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WindowStats {
    pub center_sums: usize,
    pub generated: u64,
    pub list_len: usize,
}

/// Pushes `acc - sum k_i c_i` for every choice of multiplicities with total
/// at most `budget`.
fn collect_center_sums(centers: &[i64], budget: usize, acc: i64, out: &mut Vec<i64>) -> Result<()> {
    let Some((&c, rest)) = centers.split_first() else {
        out.push(acc);
        return Ok(());
    };
    let mut acc = acc;
    for k in 0..=budget {
        collect_center_sums(rest, budget - k, acc, out)?;
        if k < budget {
            acc = acc.checked_sub(c).ok_or(Error::WeightOverflow)?;
        }
    }
    Ok(())
}
