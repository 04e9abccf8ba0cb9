//! The functions `F`, `G`, `H`, `δ[j,a]` and the local contributions `χ_t`.
//!
//! Chains `T` are sets of positive odd integers. Every recursion strips only
//! the minimum or maximum of a chain, so sums over all subsets of
//! `{1,3,…,2m-1}` are served from one bottom-up [`table::SubsetTable`] per
//! width, cached process-wide.

mod chains;
mod chi;
mod delta;
mod factored;
mod labels;
pub mod table;

pub(crate) use chi::f_table;
pub use chains::{g_with, h_at_zero, F_of, F_shifted, G_of, H_factor};
pub use chi::{chi_even_parts, chi_t, chi_t_via_delta, chi_t_with, EvenParts};
pub use delta::{
    delta_anchored_both, delta_anchored_min, delta_closed, delta_closed_at, delta_direct,
    delta_recursive, delta_step, DeltaFunction,
};
pub use labels::{
    discrepancy, modified_discrepancy, single_discrepancy, DivisorLabel, OddChain, PairRule,
};

/// `F[T]` under `rule` for a chain, through the shared subset table.
pub fn f_with(t: &OddChain, rule: PairRule) -> crate::Result<crate::exact::Rational> {
    let width = match t.max() {
        None => return Err(crate::Error::input("F is undefined on the empty chain")),
        Some(m) => (m as usize).div_ceil(2),
    };
    if width > 24 {
        return Err(crate::Error::input("chain too long for the subset table"));
    }
    Ok(chi::f_table(rule, width).get(t.mask()).expect("mask within table").clone())
}
