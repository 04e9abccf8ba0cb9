use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::Rational;

/// Strictly increasing sequence of positive odd integers: the index sets `T`
/// on which `F`, `G` and the δ sums are defined.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OddChain(Vec<u32>);

impl OddChain {
    pub fn new(elements: Vec<u32>) -> Result<Self> {
        if let Some(&bad) = elements.iter().find(|&&x| x % 2 == 0) {
            return Err(Error::input(format!("{bad} is not a positive odd integer")));
        }
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::input("odd chain must be strictly increasing"));
        }
        Ok(OddChain(elements))
    }

    /// Chain of the odd numbers `2i+1` for the set bits `i` of `mask`.
    pub fn from_mask(mask: u64) -> Self {
        OddChain(
            (0..64)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| 2 * i + 1)
                .collect(),
        )
    }

    /// Inverse of [`OddChain::from_mask`].
    pub fn mask(&self) -> u64 {
        self.0.iter().fold(0, |m, &x| m | 1 << ((x - 1) / 2))
    }

    pub fn elements(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn min(&self) -> Option<u32> {
        self.0.first().copied()
    }

    pub fn max(&self) -> Option<u32> {
        self.0.last().copied()
    }
}

impl fmt::Display for OddChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Exceptional divisor index: a single `Ẽ_i` or a pair divisor `Ẽ_{ij}` with
/// `i < j` both odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DivisorLabel {
    Single(u32),
    Pair(u32, u32),
}

impl DivisorLabel {
    pub fn single(i: u32) -> Result<Self> {
        if i == 0 {
            return Err(Error::input("divisor index must be at least 1"));
        }
        Ok(DivisorLabel::Single(i))
    }

    pub fn pair(i: u32, j: u32) -> Result<Self> {
        if i % 2 == 0 || j % 2 == 0 {
            return Err(Error::input(format!("pair divisor ({i},{j}) needs odd indices")));
        }
        if i >= j {
            return Err(Error::input(format!("pair divisor ({i},{j}) needs i < j")));
        }
        Ok(DivisorLabel::Pair(i, j))
    }

    fn validate(self) -> Result<Self> {
        match self {
            DivisorLabel::Single(i) => Self::single(i),
            DivisorLabel::Pair(i, j) => Self::pair(i, j),
        }
    }
}

impl fmt::Display for DivisorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DivisorLabel::Single(i) => write!(f, "{i}"),
            DivisorLabel::Pair(i, j) => write!(f, "{i},{j}"),
        }
    }
}

/// Which pair discrepancies feed the `F`/`G` recursions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairRule {
    /// `a_{ij} = (i²+j²)/2 - 1 + 3(j-i)/2`, the modified discrepancies.
    Modified,
    /// The actual discrepancies `d_{ij} = (i²+j²)/2 - 1` of the resolution.
    Batyrev,
    /// The modified rule except `a_{3,7} = 35`, the value printed in the
    /// original worked example; the formula gives 34.
    PrintedExample,
}

impl PairRule {
    /// Discrepancy attached to the pair divisor `(i, j)`.
    pub fn pair(self, i: u32, j: u32) -> Rational {
        let actual = Rational::frac(i64::from(i * i + j * j), 2) - Rational::one();
        match self {
            PairRule::Batyrev => actual,
            PairRule::PrintedExample if (i, j) == (3, 7) => Rational::from(35),
            PairRule::Modified | PairRule::PrintedExample => {
                actual + Rational::frac(3 * (i64::from(j) - i64::from(i)), 2)
            }
        }
    }
}

/// Discrepancy of a single divisor `Ẽ_i`; identical under every [`PairRule`].
pub fn single_discrepancy(i: u32) -> Rational {
    let sq = i64::from(i) * i64::from(i);
    if i % 2 == 1 {
        Rational::from(sq - 1)
    } else {
        Rational::frac(sq, 2) - Rational::one()
    }
}

pub fn discrepancy(label: DivisorLabel, rule: PairRule) -> Result<Rational> {
    Ok(match label.validate()? {
        DivisorLabel::Single(i) => single_discrepancy(i),
        DivisorLabel::Pair(i, j) => rule.pair(i, j),
    })
}

/// The modified discrepancy `a_⋄`.
pub fn modified_discrepancy(label: DivisorLabel) -> Result<Rational> {
    discrepancy(label, PairRule::Modified)
}
