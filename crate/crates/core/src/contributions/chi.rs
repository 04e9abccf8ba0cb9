//! The local contributions `χ_t` at `a = 0`.

use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{factorial, Rational};

use super::chains::h_at_zero_mask;
use super::delta::{delta_closed_at, odd_factorial};
use super::labels::PairRule;
use super::table::{SubsetTable, TableCache};

/// `F[T]` for every nonempty `T ⊆ {1,3,…,2·width-1}` under `rule`.
pub(crate) fn f_table(rule: PairRule, width: usize) -> Arc<SubsetTable<Rational>> {
    static CACHE: OnceLock<TableCache<PairRule, Rational>> = OnceLock::new();
    CACHE.get_or_init(TableCache::new).get_or_build(rule, width, |w| {
        SubsetTable::build(
            w,
            |i| Rational::frac(1, (2 * i as i64 + 1).pow(2)),
            |lo, hi, without_hi, without_lo| {
                let pair = rule.pair(2 * lo as u32 + 1, 2 * hi as u32 + 1);
                (without_hi + without_lo) * Rational::from(2) / (Rational::one() + pair)
            },
        )
    })
}

fn t_factorial(t: u32) -> Rational {
    Rational::from_integer(factorial(u64::from(t)))
}

fn check_t(t: u32) -> Result<()> {
    if t == 0 {
        return Err(Error::input("χ_t needs t ≥ 1"));
    }
    Ok(())
}

/// Two summands of the even-`t` formula: the stand-alone product term and
/// the sum over nonempty odd sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenParts {
    pub product_term: Rational,
    pub subset_sum: Rational,
}

fn sum_masks(masks: impl ParallelIterator<Item = u64>, term: impl Fn(u64) -> Rational + Sync + Send) -> Rational {
    masks.map(term).reduce(Rational::zero, |x, y| x + y)
}

fn chi_odd(t: u32, rule: PairRule) -> Rational {
    let width = (t as usize).div_ceil(2);
    let table = f_table(rule, width);
    let top = 1u64 << (width - 1);
    let sum = sum_masks((top..top << 1).into_par_iter(), |mask| {
        table.get(mask).expect("mask within table") * h_at_zero_mask(mask, 2, i64::from(t) - 1)
    });
    t_factorial(t) * sum
}

pub fn chi_even_parts(t: u32, rule: PairRule) -> Result<EvenParts> {
    check_t(t)?;
    if t % 2 == 1 {
        return Err(Error::input(format!("{t} is odd")));
    }
    let fact = t_factorial(t);
    let product: Rational = (2..=i64::from(t))
        .step_by(2)
        .map(|r| Rational::frac(1, r * r))
        .product();
    let width = t as usize / 2;
    let table = f_table(rule, width);
    let sum = sum_masks((1u64..1 << width).into_par_iter(), |mask| {
        table.get(mask).expect("mask within table") * h_at_zero_mask(mask, 2, i64::from(t) - 2)
    });
    let t_sq = Rational::from(i64::from(t) * i64::from(t));
    Ok(EvenParts {
        product_term: Rational::from(2) * &fact * product,
        subset_sum: Rational::from(2) * fact * sum / t_sq,
    })
}

/// `χ_t` with pair discrepancies from `rule`.
pub fn chi_t_with(t: u32, rule: PairRule) -> Result<Rational> {
    check_t(t)?;
    if t % 2 == 1 {
        return Ok(chi_odd(t, rule));
    }
    let parts = chi_even_parts(t, rule)?;
    Ok(parts.product_term + parts.subset_sum)
}

/// The local contribution `χ_t` from the subset formulas.
pub fn chi_t(t: u32) -> Result<Rational> {
    chi_t_with(t, PairRule::Modified)
}

/// `χ_t` through `δ`: `χ_{2j+1} = (2j+1)!·δ[j,0]` from the closed form and
/// `χ_{2j} = χ_{2j-1}/j + (2j-1)/(2j)·χ_{2j-2}` with the convention `χ₀ = 2`.
pub fn chi_t_via_delta(t: u32) -> Result<Rational> {
    check_t(t)?;
    let odd = |j: u32| -> Result<Rational> {
        Ok(odd_factorial(j) * delta_closed_at(j, &Rational::zero())?)
    };
    if t % 2 == 1 {
        return odd((t - 1) / 2);
    }
    let mut prev_even = Rational::from(2);
    for j in 1..=t / 2 {
        let j_r = Rational::from(j);
        prev_even = odd(j - 1)? / &j_r
            + Rational::from(2 * j - 1) / (Rational::from(2) * &j_r) * prev_even;
    }
    Ok(prev_even)
}
