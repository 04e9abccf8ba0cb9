use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::modular::gcd_degree_bound;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Univariate polynomial over ℚ in the formal variable `a`.
///
/// Coefficients are stored in ascending powers with no trailing zeros, so the
/// zero polynomial is the empty vector and structural equality is equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The variable `a`.
    pub fn var() -> Self {
        Self::from_i64s(&[0, 1])
    }

    /// `a + c`.
    pub fn shifted_var(c: i64) -> Self {
        Self::from_i64s(&[c, 1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> Rational {
        self.coeffs.first().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Divides through by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.recip().expect("nonzero leading coefficient")),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let Some((content, prim)) = self.primitive_form() else {
            return Rational::zero();
        };
        // Σ p_i n^i d^(deg-i) / d^deg, all in ℤ.
        let (n, d) = (x.numer(), x.denom());
        let deg = prim.len() - 1;
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        for c in prim.iter().rev() {
            acc = acc * n + c * &dpow;
            dpow *= d;
        }
        let denom = num_traits::pow(d.clone(), deg);
        content * Rational::from_inner(BigRational::new(acc, denom))
    }

    /// `p(scale·a + offset)`.
    pub fn compose_affine(&self, scale: &Rational, offset: &Rational) -> Self {
        let Some((content, prim)) = self.primitive_form() else {
            return Self::zero();
        };
        // With scale = α/D and offset = β/D, Horner on D^deg·p((αa+β)/D).
        let denom = scale.denom().lcm(offset.denom());
        let alpha = scale.numer() * (&denom / scale.denom());
        let beta = offset.numer() * (&denom / offset.denom());
        let deg = prim.len() - 1;
        let mut acc: Vec<BigInt> = vec![prim[deg].clone()];
        let mut dpow = BigInt::one();
        for c in prim[..deg].iter().rev() {
            dpow *= &denom;
            let mut next = vec![BigInt::zero(); acc.len() + 1];
            for (i, x) in acc.iter().enumerate() {
                next[i] += x * &beta;
                next[i + 1] += x * &alpha;
            }
            next[0] += c * &dpow;
            acc = next;
        }
        let scale_back = content / Rational::from_integer(dpow);
        Self::from_integer_coeffs(&acc, &scale_back)
    }

    /// Euclidean division over ℚ: `self = q·divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        let Some(dd) = divisor.degree() else {
            return Err(Error::DivisionByZero);
        };
        let lead_inv = divisor.coeffs[dd].recip()?;
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if sd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let factor = &rem[k + dd] * &lead_inv;
            if factor.is_zero() {
                continue;
            }
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &(&factor * c);
            }
            quot[k] = factor;
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Division known to be exact; errors if a remainder is left.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Polynomial> {
        let Some((cd, pd)) = divisor.primitive_form() else {
            return Err(Error::DivisionByZero);
        };
        let Some((cs, ps)) = self.primitive_form() else {
            return Ok(Self::zero());
        };
        // Gauss: a primitive divisor over ℚ divides over ℤ.
        let q = int_exact_div(&ps, &pd)
            .ok_or_else(|| Error::structural("polynomial division is not exact"))?;
        Ok(Self::from_integer_coeffs(&q, &(cs / cd)))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        match (self.primitive_form(), other.primitive_form()) {
            (None, None) => Self::zero(),
            (Some(_), None) => self.monic(),
            (None, Some(_)) => other.monic(),
            (Some((_, a)), Some((_, b))) => {
                if a.len() == 1 || b.len() == 1 {
                    return Self::one();
                }
                Self::from_integer_coeffs(&int_gcd(&a, &b), &Rational::one()).monic()
            }
        }
    }

    /// `(content, primitive)` with `self = content · primitive`, the primitive
    /// part integral with coprime coefficients and positive leading term.
    pub(crate) fn primitive_form(&self) -> Option<(Rational, Vec<BigInt>)> {
        if self.is_zero() {
            return None;
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut g = content(&ints);
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim = ints.iter().map(|c| c / &g).collect();
        Some((Rational::from_inner(BigRational::new(g, lcm)), prim))
    }

    pub(crate) fn from_integer_coeffs(coeffs: &[BigInt], scale: &Rational) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|c| Rational::from_integer(c.clone()) * scale)
                .collect(),
        )
    }

    fn add_impl(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Rational::zero();
        let coeffs = (0..n)
            .map(|i| {
                let x = self.coeffs.get(i).unwrap_or(&zero);
                let y = other.coeffs.get(i).unwrap_or(&zero);
                if negate {
                    x - y
                } else {
                    x + y
                }
            })
            .collect();
        Self::from_coeffs(coeffs)
    }

    fn mul_impl(&self, other: &Polynomial) -> Polynomial {
        let (Some((ca, pa)), Some((cb, pb))) = (self.primitive_form(), other.primitive_form())
        else {
            return Self::zero();
        };
        Self::from_integer_coeffs(&int_mul(&pa, &pb), &(ca * cb))
    }
}

fn content(coeffs: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in coeffs {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn make_primitive(mut coeffs: Vec<BigInt>) -> Vec<BigInt> {
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    if coeffs.is_empty() {
        return coeffs;
    }
    let mut g = content(&coeffs);
    if coeffs.last().unwrap().is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for c in coeffs.iter_mut() {
            *c = &*c / &g;
        }
    }
    coeffs
}

pub(crate) fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact quotient in ℤ[a], or `None` if `b` does not divide `a`.
fn int_exact_div(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    if a.len() < b.len() {
        return None;
    }
    let lb = b.last().unwrap();
    let mut rem = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len() - b.len() + 1];
    for k in (0..quot.len()).rev() {
        let top = &rem[k + b.len() - 1];
        let (q, r) = top.div_rem(lb);
        if !r.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for (i, bi) in b.iter().enumerate() {
                rem[k + i] -= &q * bi;
            }
        }
        quot[k] = q;
    }
    rem.iter().all(Zero::is_zero).then_some(quot)
}

/// Pseudo-remainder of `a` by `b`, scaled to be primitive.
fn prem_primitive(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let lb = b.last().unwrap();
    let mut r = a.to_vec();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let lr = r.last().unwrap().clone();
        let g = lr.gcd(lb);
        let (mr, mb) = (lb / &g, &lr / &g);
        for c in r.iter_mut() {
            *c *= &mr;
        }
        for (i, bi) in b.iter().enumerate() {
            r[i + shift] -= &mb * bi;
        }
        r.pop();
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    make_primitive(r)
}

/// Primitive gcd of two nonzero primitive integer polynomials.
fn int_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (mut x, mut y) = if a.len() >= b.len() { (a.to_vec(), b.to_vec()) } else { (b.to_vec(), a.to_vec()) };
    let bound = gcd_degree_bound(&x, &y);
    if bound == 0 {
        return vec![BigInt::one()];
    }
    // The bound is attained by the smaller operand exactly when it divides the larger.
    if bound == y.len() - 1 && int_exact_div(&x, &y).is_some() {
        return y;
    }
    while !y.is_empty() {
        let r = prem_primitive(&x, &y);
        x = y;
        y = r;
        if y.len() == 1 {
            return vec![BigInt::one()];
        }
    }
    make_primitive(x)
}

fn superscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap() as usize])
        .collect()
}

pub(crate) fn power_suffix(n: usize) -> String {
    if n == 1 {
        String::new()
    } else {
        superscript(n)
    }
}

impl fmt::Display for Polynomial {
    /// Descending powers, compact: `2a²+6a+6`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                if mag.is_integer() {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            write!(f, "a{}", power_suffix(k))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.add_impl(rhs, false)
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.add_impl(rhs, true)
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.mul_impl(rhs)
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
