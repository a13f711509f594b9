//! Extended non-negative energies and energy functions.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut};

/// An energy level: a finite integer or `Infinite`.
///
/// `Finite < Infinite` for every payload, so the derived ordering treats
/// infinity as the maximum. Energy functions only ever hold non-negative
/// finite payloads; negative payloads show up transiently as `e(v) - w`
/// before being clamped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Energy {
    Finite(i64),
    Infinite,
}

impl Energy {
    pub const ZERO: Energy = Energy::Finite(0);

    #[inline]
    pub fn is_finite(self) -> bool {
        matches!(self, Energy::Finite(_))
    }

    #[inline]
    pub fn finite(self) -> Option<i64> {
        match self {
            Energy::Finite(x) => Some(x),
            Energy::Infinite => None,
        }
    }

    /// `self - weight`; infinity absorbs.
    #[inline]
    pub fn minus(self, weight: i64) -> Energy {
        match self {
            Energy::Finite(x) => {
                Energy::Finite(x.checked_sub(weight).expect("energy arithmetic overflow"))
            }
            Energy::Infinite => Energy::Infinite,
        }
    }

    /// `self + weight`; infinity absorbs.
    #[inline]
    pub fn plus(self, weight: i64) -> Energy {
        match self {
            Energy::Finite(x) => {
                Energy::Finite(x.checked_add(weight).expect("energy arithmetic overflow"))
            }
            Energy::Infinite => Energy::Infinite,
        }
    }

    /// `max(self, 0)`.
    #[inline]
    pub fn clamp_zero(self) -> Energy {
        match self {
            Energy::Finite(x) if x < 0 => Energy::ZERO,
            other => other,
        }
    }
}

impl From<i64> for Energy {
    fn from(x: i64) -> Self {
        Energy::Finite(x)
    }
}

impl fmt::Display for Energy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Energy::Finite(x) => write!(f, "{x}"),
            Energy::Infinite => f.write_str("inf"),
        }
    }
}

/// Does an energy of `at_source` survive the edge `weight` into a node that
/// needs `at_target`? This is the edge condition `e(u) + w(u,v) >= e(v)`.
#[inline]
pub fn edge_satisfied(at_source: Energy, weight: i64, at_target: Energy) -> bool {
    match (at_source, at_target) {
        (Energy::Infinite, _) => true,
        (_, Energy::Infinite) => false,
        (Energy::Finite(a), Energy::Finite(b)) => a + weight >= b,
    }
}

/// A map from node index to [`Energy`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct EnergyFunction(Vec<Energy>);

impl EnergyFunction {
    pub fn new(values: Vec<Energy>) -> Self {
        EnergyFunction(values)
    }

    pub fn constant(n: usize, value: Energy) -> Self {
        EnergyFunction(alloc::vec![value; n])
    }

    /// Builds a function from finite values, with `None` meaning infinity.
    pub fn from_options<I: IntoIterator<Item = Option<i64>>>(values: I) -> Self {
        EnergyFunction(
            values
                .into_iter()
                .map(|v| v.map_or(Energy::Infinite, Energy::Finite))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Energy] {
        &self.0
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Energy> {
        self.0.iter()
    }

    pub fn into_vec(self) -> Vec<Energy> {
        self.0
    }

    /// Pointwise `self <= other`. Functions of different length compare false.
    pub fn le_pointwise(&self, other: &EnergyFunction) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Every value is finite and non-negative, or infinite.
    pub fn is_well_formed(&self) -> bool {
        self.0.iter().all(|e| e.finite().map_or(true, |x| x >= 0))
    }
}

impl Index<usize> for EnergyFunction {
    type Output = Energy;

    fn index(&self, v: usize) -> &Energy {
        &self.0[v]
    }
}

impl IndexMut<usize> for EnergyFunction {
    fn index_mut(&mut self, v: usize) -> &mut Energy {
        &mut self.0[v]
    }
}

impl From<Vec<Energy>> for EnergyFunction {
    fn from(v: Vec<Energy>) -> Self {
        EnergyFunction(v)
    }
}

impl<'a> IntoIterator for &'a EnergyFunction {
    type Item = &'a Energy;
    type IntoIter = core::slice::Iter<'a, Energy>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}
