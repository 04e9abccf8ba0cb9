//! Sums of rational functions whose denominators are products of a known
//! finite set of factors. Addition takes the maximum exponent of each factor,
//! so no polynomial gcd is needed until the single reduction at the end.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exact::{int_mul, Polynomial, Rational, RationalFunction};

/// Monic integer factors: `a + r`, and `a² + (x+y)a + (x²+y²+3(y-x))/2`,
/// half the denominator of the shifted `F` recursion for the chain ends `x < y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum Factor {
    Linear(i64),
    Quadratic(i64, i64),
}

impl Factor {
    fn coeffs(self) -> Vec<BigInt> {
        match self {
            Factor::Linear(r) => vec![BigInt::from(r), BigInt::one()],
            Factor::Quadratic(x, y) => vec![
                BigInt::from((x * x + y * y + 3 * (y - x)) / 2),
                BigInt::from(x + y),
                BigInt::one(),
            ],
        }
    }
}

/// `num / (scale · ∏ factor^exp)` with integer `num` coefficients and a
/// positive integer `scale`.
#[derive(Clone, Debug)]
pub(crate) struct Factored {
    num: Vec<BigInt>,
    scale: BigInt,
    den: BTreeMap<Factor, u32>,
}

fn mul_by_factor(num: &[BigInt], f: Factor, times: u32) -> Vec<BigInt> {
    let c = f.coeffs();
    (0..times).fold(num.to_vec(), |acc, _| int_mul(&acc, &c))
}

fn add_polys(mut a: Vec<BigInt>, b: &[BigInt]) -> Vec<BigInt> {
    if a.len() < b.len() {
        a.resize(b.len(), BigInt::zero());
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

impl Factored {
    pub(crate) fn zero() -> Self {
        Factored { num: Vec::new(), scale: BigInt::one(), den: BTreeMap::new() }
    }

    /// `numer / (scale · f^exp)`.
    pub(crate) fn new(numer: Vec<BigInt>, scale: BigInt, den: &[(Factor, u32)]) -> Self {
        let mut out = Factored { num: numer, scale, den: BTreeMap::new() };
        for &(f, e) in den {
            *out.den.entry(f).or_default() += e;
        }
        out
    }

    fn raised_to(&self, den: &BTreeMap<Factor, u32>, scale: &BigInt) -> Vec<BigInt> {
        let mut num: Vec<BigInt> = {
            let k = scale / &self.scale;
            self.num.iter().map(|c| c * &k).collect()
        };
        for (&f, &e) in den {
            let have = self.den.get(&f).copied().unwrap_or(0);
            if e > have {
                num = mul_by_factor(&num, f, e - have);
            }
        }
        num
    }

    pub(crate) fn add(&self, other: &Factored) -> Factored {
        if self.num.is_empty() {
            return other.clone();
        }
        if other.num.is_empty() {
            return self.clone();
        }
        let mut den = self.den.clone();
        for (&f, &e) in &other.den {
            let slot = den.entry(f).or_default();
            *slot = (*slot).max(e);
        }
        let scale = self.scale.lcm(&other.scale);
        let num = add_polys(self.raised_to(&den, &scale), &other.raised_to(&den, &scale));
        Factored { num, scale, den }
    }

    pub(crate) fn mul(&self, other: &Factored) -> Factored {
        let mut den = self.den.clone();
        for (&f, &e) in &other.den {
            *den.entry(f).or_default() += e;
        }
        Factored {
            num: int_mul(&self.num, &other.num),
            scale: &self.scale * &other.scale,
            den,
        }
    }

    /// Multiplies by `c / f`.
    pub(crate) fn mul_over(&self, c: i64, f: Factor) -> Factored {
        let mut out = self.clone();
        for x in out.num.iter_mut() {
            *x *= c;
        }
        *out.den.entry(f).or_default() += 1;
        out
    }

    /// Canonical rational function, cancelling common factors by trial division.
    pub(crate) fn reduce(mut self) -> RationalFunction {
        while self.num.last().is_some_and(Zero::is_zero) {
            self.num.pop();
        }
        if self.num.is_empty() {
            return RationalFunction::zero();
        }
        let mut den_poly = vec![BigInt::one()];
        for (&f, &e) in &self.den {
            let mut left = e;
            while left > 0 {
                match divide_monic(&self.num, &f.coeffs()) {
                    Some(q) => {
                        self.num = q;
                        left -= 1;
                    }
                    None => break,
                }
            }
            den_poly = mul_by_factor(&den_poly, f, left);
        }
        let scale = Rational::from_integer(self.scale).recip().expect("positive scale");
        let num = Polynomial::from_integer_coeffs(&self.num, &scale);
        let den = Polynomial::from_integer_coeffs(&den_poly, &Rational::one());
        RationalFunction::new(num, den).expect("nonzero denominator")
    }
}

/// `num / d` over ℤ for monic `d`, if the remainder vanishes.
fn divide_monic(num: &[BigInt], d: &[BigInt]) -> Option<Vec<BigInt>> {
    let dd = d.len() - 1;
    if num.len() <= dd {
        return None;
    }
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for k in (0..quot.len()).rev() {
        let factor = rem[k + dd].clone();
        if factor.is_zero() {
            continue;
        }
        for (i, c) in d.iter().enumerate() {
            rem[k + i] -= &factor * c;
        }
        quot[k] = factor;
    }
    rem[..dd].iter().all(Zero::is_zero).then_some(quot)
}

/// Balanced pairwise sum.
pub(crate) fn sum_tree(mut terms: Vec<Factored>) -> Factored {
    use rayon::prelude::*;
    while terms.len() > 1 {
        terms = terms
            .par_chunks(2)
            .map(|pair| match pair {
                [x, y] => x.add(y),
                [x] => x.clone(),
                _ => unreachable!(),
            })
            .collect();
    }
    terms.pop().unwrap_or_else(Factored::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lin(r: i64, e: u32) -> Factored {
        Factored::new(vec![BigInt::one()], BigInt::one(), &[(Factor::Linear(r), e)])
    }

    #[test]
    fn partial_fractions_recombine() {
        // 1/(a+1) - 1/(a+2) = 1/((a+1)(a+2))
        let neg = Factored::new(vec![BigInt::from(-1)], BigInt::one(), &[(Factor::Linear(2), 1)]);
        let got = lin(1, 1).add(&neg).reduce();
        let expected = RationalFunction::reciprocal_of(&Polynomial::shifted_var(1) * &Polynomial::shifted_var(2)).unwrap();
        assert_eq!(got, expected);
    }

    #[test]
    fn cancellation_by_trial_division() {
        // (a+1)/(a+1)² = 1/(a+1)
        let f = Factored::new(vec![BigInt::one(), BigInt::one()], BigInt::from(3), &[(Factor::Linear(1), 2)]);
        let expected = RationalFunction::reciprocal_of(Polynomial::shifted_var(1)).unwrap().scale(&Rational::frac(1, 3));
        assert_eq!(f.reduce(), expected);
    }

    #[test]
    fn quadratic_factor_is_half_the_recursion_denominator() {
        let q = Polynomial::from_integer_coeffs(&Factor::Quadratic(1, 3).coeffs(), &Rational::one());
        let full = Polynomial::shifted_var(1).pow(2) + Polynomial::shifted_var(3).pow(2) + Polynomial::from_i64s(&[6]);
        assert_eq!(q.scale(&Rational::from(2)), full);
    }
}
