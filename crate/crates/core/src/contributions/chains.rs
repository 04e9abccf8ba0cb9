//! The chain functions `G[T]`, `F[T]`, `F[T+a]` and the interlacing factor
//! `H[T, s₁, s₂, a]`.

use crate::error::{Error, Result};
use crate::exact::{Polynomial, Rational, RationalFunction};

use super::labels::{OddChain, PairRule};

/// Evaluates a min/max-stripping recursion on `elements` through its
/// contiguous sub-chains, `O(n²)` subproblems.
fn interval_dp<V: Clone>(
    elements: &[u32],
    base: impl Fn(u32) -> V,
    step: impl Fn(u32, u32, &V, &V) -> V,
) -> V {
    let n = elements.len();
    // row[l] holds the value on elements[l..l+len].
    let mut row: Vec<V> = elements.iter().map(|&x| base(x)).collect();
    for len in 2..=n {
        row = (0..=n - len)
            .map(|l| {
                let (lo, hi) = (elements[l], elements[l + len - 1]);
                step(lo, hi, &row[l], &row[l + 1])
            })
            .collect();
    }
    row.pop().expect("nonempty chain")
}

fn nonempty(t: &OddChain) -> Result<&[u32]> {
    if t.is_empty() {
        return Err(Error::input("F and G are undefined on the empty chain"));
    }
    Ok(t.elements())
}

fn inverse_square(r: i64) -> Rational {
    Rational::frac(1, r * r)
}

/// `G[T]` with pair discrepancies from `rule`.
pub fn g_with(t: &OddChain, rule: PairRule) -> Result<Rational> {
    let elements = nonempty(t)?;
    Ok(interval_dp(
        elements,
        |r| inverse_square(r.into()),
        |lo, hi, without_hi, without_lo| {
            (without_hi + without_lo) / (Rational::one() + rule.pair(lo, hi))
        },
    ))
}

/// `G[{r}] = 1/r²`, `G[T] = (G[T∖max] + G[T∖min]) / (1 + a_{min,max})`.
#[allow(non_snake_case)]
pub fn G_of(t: &OddChain) -> Result<Rational> {
    g_with(t, PairRule::Modified)
}

/// `F[T] = 2^{|T|-1} G[T]`, computed through its own recursion with factor
/// `4/(x₁² + xₙ² + 3(xₙ - x₁))`.
#[allow(non_snake_case)]
pub fn F_of(t: &OddChain) -> Result<Rational> {
    let elements = nonempty(t)?;
    Ok(interval_dp(
        elements,
        |r| inverse_square(r.into()),
        |lo, hi, without_hi, without_lo| {
            let (lo, hi) = (i64::from(lo), i64::from(hi));
            (without_hi + without_lo) * Rational::frac(4, lo * lo + hi * hi + 3 * (hi - lo))
        },
    ))
}

/// Factor `4 / ((x₁+a)² + (xₙ+a)² + 3(xₙ-x₁))` of the shifted recursion.
fn shifted_factor(lo: u32, hi: u32) -> RationalFunction {
    let (lo, hi) = (i64::from(lo), i64::from(hi));
    let quad = Polynomial::from_i64s(&[lo * lo + hi * hi + 3 * (hi - lo), 2 * (lo + hi), 2]);
    RationalFunction::new(Polynomial::from_i64s(&[4]), quad).expect("nonzero quadratic")
}

fn shifted_base(r: u32) -> RationalFunction {
    RationalFunction::reciprocal_of(Polynomial::shifted_var(r.into()).pow(2))
        .expect("nonzero linear factor")
}

/// `F[T+a]` as an element of ℚ(a).
#[allow(non_snake_case)]
pub fn F_shifted(t: &OddChain) -> Result<RationalFunction> {
    let elements = nonempty(t)?;
    Ok(interval_dp(elements, shifted_base, |lo, hi, without_hi, without_lo| {
        &(without_hi + without_lo) * &shifted_factor(lo, hi)
    }))
}

fn check_even_range(s1: i64, s2: i64) -> Result<()> {
    if s1 % 2 != 0 || s2 % 2 != 0 {
        return Err(Error::input(format!("H needs even endpoints, got {s1} and {s2}")));
    }
    Ok(())
}

/// Even `r` in `[s1, s2]` split by whether both `r-1` and `r+1` lie in `T`.
fn interlaced(contains: impl Fn(i64) -> bool, s1: i64, s2: i64) -> impl Iterator<Item = (i64, bool)> {
    (s1..=s2)
        .step_by(2)
        .map(move |r| (r, contains(r - 1) && contains(r + 1)))
}

fn chain_contains(t: &OddChain) -> impl Fn(i64) -> bool + '_ {
    |x| u32::try_from(x).is_ok_and(|x| t.contains(x))
}

/// `H[T, s₁, s₂, a] = ∏_{even r ∈ [s₁,s₂]} (¼ + 1/(r+a)²)` where both
/// neighbours `r±1` are in `T`, and `1/(r+a)²` otherwise.
#[allow(non_snake_case)]
pub fn H_factor(t: &OddChain, s1: i64, s2: i64) -> Result<RationalFunction> {
    check_even_range(s1, s2)?;
    let mut num = Polynomial::one();
    let mut den = Polynomial::one();
    let mut quarter = Rational::one();
    for (r, both) in interlaced(chain_contains(t), s1, s2) {
        let sq = Polynomial::shifted_var(r).pow(2);
        if both {
            // ¼ + 1/(a+r)² = ((a+r)² + 4) / (4(a+r)²)
            num = &num * &(&sq + &Polynomial::from_i64s(&[4]));
            quarter = quarter / Rational::from(4);
        }
        den = &den * &sq;
    }
    RationalFunction::new(num.scale(&quarter), den)
}

/// `H[T, s₁, s₂, 0]`.
pub fn h_at_zero(t: &OddChain, s1: i64, s2: i64) -> Result<Rational> {
    check_even_range(s1, s2)?;
    if s1 <= 0 && 0 <= s2 {
        return Err(Error::Pole(Rational::zero()));
    }
    Ok(h_at_zero_by(chain_contains(t), s1, s2))
}

/// `H` at `a = 0` for the subset encoded by `mask` (bit `i` ↔ `2i+1`).
pub(crate) fn h_at_zero_mask(mask: u64, s1: i64, s2: i64) -> Rational {
    let contains = |x: i64| x >= 1 && x % 2 == 1 && x < 128 && (mask >> ((x - 1) / 2)) & 1 == 1;
    h_at_zero_by(contains, s1, s2)
}

fn h_at_zero_by(contains: impl Fn(i64) -> bool, s1: i64, s2: i64) -> Rational {
    interlaced(contains, s1, s2)
        .map(|(r, both)| {
            let inv = inverse_square(r);
            if both {
                inv + Rational::frac(1, 4)
            } else {
                inv
            }
        })
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(v: &[u32]) -> OddChain {
        OddChain::new(v.to_vec()).unwrap()
    }

    #[test]
    fn worked_example_values() {
        assert_eq!(G_of(&chain(&[1, 3])).unwrap(), Rational::frac(5, 36));
        assert_eq!(F_of(&chain(&[1, 3])).unwrap(), Rational::frac(5, 18));
        assert_eq!(G_of(&chain(&[5])).unwrap(), Rational::frac(1, 25));
        assert_eq!(F_of(&chain(&[1])).unwrap(), Rational::one());
        assert_eq!(G_of(&chain(&[3, 5, 7])).unwrap(), Rational::frac(1999, 7_717_500));
        assert_eq!(F_of(&chain(&[3, 5, 7])).unwrap(), Rational::frac(1999, 1_929_375));
    }

    #[test]
    fn printed_example_variant() {
        let g = g_with(&chain(&[3, 5, 7]), PairRule::PrintedExample).unwrap();
        assert_eq!(g, Rational::frac(1999, 7_938_000));
    }

    #[test]
    fn empty_chain_rejected() {
        let empty = chain(&[]);
        assert!(G_of(&empty).is_err());
        assert!(F_of(&empty).is_err());
        assert!(F_shifted(&empty).is_err());
    }

    #[test]
    fn shifted_two_element_chain() {
        let f = F_shifted(&chain(&[1, 3])).unwrap();
        let inv_sq = |r| RationalFunction::reciprocal_of(Polynomial::shifted_var(r).pow(2)).unwrap();
        let quad = Polynomial::shifted_var(1).pow(2) + Polynomial::shifted_var(3).pow(2)
            + Polynomial::from_i64s(&[6]);
        let factor = RationalFunction::new(Polynomial::from_i64s(&[4]), quad).unwrap();
        assert_eq!(f, (inv_sq(1) + inv_sq(3)) * factor);
        assert_eq!(f.eval(&Rational::zero()).unwrap(), Rational::frac(5, 18));
        assert_eq!(F_shifted(&chain(&[1])).unwrap().to_string(), "1 / (a²+2a+1)");
    }

    #[test]
    fn h_examples() {
        let quarter_plus = RationalFunction::constant(Rational::frac(1, 4))
            + RationalFunction::reciprocal_of(Polynomial::shifted_var(2).pow(2)).unwrap();
        assert_eq!(H_factor(&chain(&[1, 3]), 2, 2).unwrap(), quarter_plus);
        assert_eq!(
            H_factor(&chain(&[3]), 2, 2).unwrap(),
            RationalFunction::reciprocal_of(Polynomial::shifted_var(2).pow(2)).unwrap()
        );
        assert!(H_factor(&chain(&[1, 3]), 4, 2).unwrap().is_one());
        assert!(H_factor(&chain(&[1]), 1, 2).is_err());
        assert_eq!(h_at_zero(&chain(&[1, 3]), 2, 2).unwrap(), Rational::frac(1, 2));
        assert_eq!(h_at_zero_mask(0b11, 2, 4), Rational::frac(1, 32));
    }
}
