//! The sums `δ[j, a]` in ℚ(a): direct subset expansion, closed form and the
//! three-term recursion in `j`, plus the two anchored partial sums.

use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{factorial, int_mul, Polynomial, Rational, RationalFunction};

use super::factored::{sum_tree, Factor, Factored};
use super::table::{SubsetTable, TableCache};

/// `δ[j, a]` tagged with its index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaFunction {
    pub j: u32,
    pub value: RationalFunction,
}

impl DeltaFunction {
    /// Whether the reduced denominator divides `∏_{i=1}^{2j+1} (a+i)²`.
    pub fn denominator_divides_square_product(&self) -> bool {
        let q = linear_product(1, 2 * i64::from(self.j) + 1);
        (&q * &q).div_rem(self.value.denom()).is_ok_and(|(_, r)| r.is_zero())
    }
}

/// `F[T+a]` for every `T ⊆ {1,3,…,2·width-1}`, denominators kept factored.
fn shifted_table(width: usize) -> Arc<SubsetTable<Factored>> {
    static CACHE: OnceLock<TableCache<(), Factored>> = OnceLock::new();
    CACHE.get_or_init(TableCache::new).get_or_build((), width, |w| {
        SubsetTable::build(
            w,
            |i| {
                let r = 2 * i as i64 + 1;
                Factored::new(vec![BigInt::one()], BigInt::one(), &[(Factor::Linear(r), 2)])
            },
            |lo, hi, without_hi, without_lo| {
                let (lo, hi) = (2 * lo as i64 + 1, 2 * hi as i64 + 1);
                without_hi.add(without_lo).mul_over(2, Factor::Quadratic(lo, hi))
            },
        )
    })
}

/// `H[T,2,2j,a]` for the subset `mask`, in factored form.
fn h_factored(mask: u64, j: i64) -> Factored {
    let contains = |x: i64| (mask >> ((x - 1) / 2)) & 1 == 1;
    let mut num = vec![BigInt::one()];
    let mut scale = BigInt::one();
    let mut den = Vec::new();
    for r in (2..=2 * j).step_by(2) {
        if contains(r - 1) && contains(r + 1) {
            // ¼ + 1/(a+r)² = ((a+r)² + 4) / (4(a+r)²)
            num = int_mul(&num, &[BigInt::from(r * r + 4), BigInt::from(2 * r), BigInt::one()]);
            scale *= 4;
        }
        den.push((Factor::Linear(r), 2));
    }
    Factored::new(num, scale, &den)
}

/// `Σ F[T+a]·H[T,2,2j,a]` over `T ⊆ {1,3,…,2j+1}` whose mask contains `required`.
fn delta_sum(j: u32, required: u64) -> RationalFunction {
    let width = j as usize + 1;
    let table = shifted_table(width);
    let terms: Vec<Factored> = (1u64..1 << width)
        .into_par_iter()
        .filter(|m| m & required == required)
        .map(|mask| table.get(mask).expect("mask within table").mul(&h_factored(mask, j.into())))
        .collect();
    sum_tree(terms).reduce()
}

/// `δ[j,a] = Σ_{T ⊆ {1,3,…,2j+1}, 2j+1 ∈ T} F[T+a]·H[T,2,2j,a]`.
/// `j = 0` gives the single term `1/(a+1)²`.
pub fn delta_direct(j: u32) -> RationalFunction {
    delta_sum(j, 1 << j)
}

/// Terms of [`delta_direct`] with both `1` and `2j+1` in `T`.
pub fn delta_anchored_both(j: u32) -> Result<RationalFunction> {
    require_positive(j)?;
    Ok(delta_sum(j, 1 | 1 << j))
}

/// `Σ_{T ⊆ {1,3,…,2j+1}, 1 ∈ T} F[T+a]·H[T,2,2j,a]`.
pub fn delta_anchored_min(j: u32) -> Result<RationalFunction> {
    require_positive(j)?;
    Ok(delta_sum(j, 1))
}

fn require_positive(j: u32) -> Result<()> {
    if j == 0 {
        return Err(Error::input("anchored δ sums need j ≥ 1"));
    }
    Ok(())
}

/// `∏_{m=from}^{to} (a+m)`.
fn linear_product(from: i64, to: i64) -> Polynomial {
    (from..=to).fold(Polynomial::one(), |acc, m| &acc * &Polynomial::shifted_var(m))
}

fn inv_linear(m: i64) -> RationalFunction {
    RationalFunction::reciprocal_of(Polynomial::shifted_var(m)).expect("nonzero linear factor")
}

fn inv_linear_sq(m: i64) -> RationalFunction {
    RationalFunction::reciprocal_of(Polynomial::shifted_var(m).pow(2)).expect("nonzero")
}

/// `δ[j,a] = a·Σ_{i=0}^{j} 1/((a+2i)(a+2i+1)) / ∏_{i=1}^{2j+1} (a+i)`, reduced.
pub fn delta_closed(j: u32) -> RationalFunction {
    let j = i64::from(j);
    let sum = (0..=j)
        .map(|i| &inv_linear(2 * i) * &inv_linear(2 * i + 1))
        .fold(RationalFunction::zero(), |acc, term| &acc + &term);
    let a = RationalFunction::from_polynomial(Polynomial::var());
    let q = RationalFunction::reciprocal_of(linear_product(1, 2 * j + 1)).expect("nonzero");
    &(&a * &sum) * &q
}

/// The closed form evaluated at `x`, with the factor `a` cancelled against
/// the `i = 0` term so that `x = 0` is allowed.
pub fn delta_closed_at(j: u32, x: &Rational) -> Result<Rational> {
    let j = i64::from(j);
    let shifted = |m: i64| x + &Rational::from(m);
    let mut sum = shifted(1).recip()?;
    for i in 1..=j {
        sum += &(x * &(shifted(2 * i) * shifted(2 * i + 1)).recip()?);
    }
    let q: Rational = (1..=2 * j + 1).map(shifted).product();
    sum.checked_div(&q)
}

/// One step of the recursion in `j`: from `δ[j,a]` and `δ[j-1,a]` build
/// `δ[j+1,a]`, with `c = (a+1)² + (a+2j+3)² + 6j + 6`.
pub fn delta_step(
    j: u32,
    delta_j: &RationalFunction,
    delta_jm1: &RationalFunction,
) -> Result<RationalFunction> {
    if j < 2 {
        return Err(Error::input("the δ recursion is stated for j ≥ 2"));
    }
    Ok(delta_step_unchecked(i64::from(j), delta_j, delta_jm1))
}

pub(crate) fn delta_step_unchecked(
    j: i64,
    delta_j: &RationalFunction,
    delta_jm1: &RationalFunction,
) -> RationalFunction {
    let c = Polynomial::shifted_var(1).pow(2)
        + Polynomial::shifted_var(2 * j + 3).pow(2)
        + Polynomial::from_i64s(&[6 * j + 6]);
    let inv_c = RationalFunction::reciprocal_of(c).expect("nonzero quadratic");
    let four = RationalFunction::constant(Rational::from(4));
    let four_c = &four * &inv_c;

    let coeff_j_shift2 =
        &(&(&RationalFunction::one() + &four_c) * &inv_linear_sq(2)) + &inv_c;
    let terms = [
        &coeff_j_shift2 * &delta_j.shift(2),
        -(&(&inv_c * &inv_linear_sq(4)) * &delta_jm1.shift(4)),
        &inv_c * delta_j,
        -(&(&inv_c * &inv_linear_sq(2)) * &delta_jm1.shift(2)),
        &(&four_c * &inv_linear_sq(2 * j + 2)) * &delta_j.reflect(-2 * j - 2),
    ];
    terms.iter().fold(RationalFunction::zero(), |acc, t| &acc + t)
}

/// `δ[0..=j_max]` generated by the recursion from the seeds `δ[1]`, `δ[2]`
/// of the direct expansion (`δ[0]` is the direct single term).
pub fn delta_recursive(j_max: u32) -> Vec<RationalFunction> {
    let mut out: Vec<RationalFunction> = (0..=j_max.min(2)).map(delta_direct).collect();
    for j in 2..j_max {
        let next = delta_step_unchecked(i64::from(j), &out[j as usize], &out[j as usize - 1]);
        out.push(next);
    }
    out
}

/// `(2j+1)!` as a rational, the normaliser in `χ_{2j+1} = (2j+1)!·δ[j,0]`.
pub(crate) fn odd_factorial(j: u32) -> Rational {
    Rational::from_integer(factorial(2 * u64::from(j) + 1))
}
