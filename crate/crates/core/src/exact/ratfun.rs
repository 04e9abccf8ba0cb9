use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::polynomial::{power_suffix, Polynomial};
use super::rational::{ArithOp, Rational};
use crate::error::{Error, Result};

/// Element of ℚ(a) in canonical form: `num / den` with `gcd(num, den) = 1`
/// and `den` monic. Zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let g = num.gcd(&den);
        if g.is_one() {
            return Ok(Self::normalize_coprime(num, den));
        }
        Ok(Self::normalize_coprime(num.exact_div(&g)?, den.exact_div(&g)?))
    }

    /// Moves the leading coefficient of `den` into `num`; inputs must be coprime.
    fn normalize_coprime(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let lead = den.leading().expect("nonzero denominator").clone();
        if lead.is_one() {
            return RationalFunction { num, den };
        }
        let inv = lead.recip().expect("nonzero leading coefficient");
        RationalFunction { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn zero() -> Self {
        RationalFunction { num: Polynomial::zero(), den: Polynomial::one() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunction { num: Polynomial::constant(c), den: Polynomial::one() }
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        RationalFunction { num: p, den: Polynomial::one() }
    }

    /// `1 / p` for a nonzero polynomial `p`.
    pub fn reciprocal_of(p: Polynomial) -> Result<Self> {
        Self::new(Polynomial::one(), p)
    }

    pub fn numer(&self) -> &Polynomial {
        &self.num
    }

    pub fn denom(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn checked_div(&self, other: &RationalFunction) -> Result<Self> {
        Ok(self * &other.recip()?)
    }

    pub fn arith(op: ArithOp, f: &RationalFunction, g: &RationalFunction) -> Result<Self> {
        Ok(match op {
            ArithOp::Add => f + g,
            ArithOp::Sub => f - g,
            ArithOp::Mul => f * g,
            ArithOp::Div => f.checked_div(g)?,
        })
    }

    pub fn pow(&self, exp: u32) -> Self {
        // Powers of coprime polynomials stay coprime.
        RationalFunction { num: self.num.pow(exp), den: self.den.pow(exp) }
    }

    /// Value at `x`, defined whenever the reduced denominator does not vanish there.
    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::Pole(x.clone()));
        }
        Ok(self.num.eval(x) / d)
    }

    /// `f(scale·a + offset)`. The substitution is a field automorphism of ℚ(a)
    /// for nonzero `scale`, so only the monic normalization needs redoing.
    pub fn compose_affine(&self, scale: &Rational, offset: &Rational) -> Result<Self> {
        if scale.is_zero() {
            return Err(Error::input("affine substitution needs a nonzero scale"));
        }
        let num = self.num.compose_affine(scale, offset);
        let den = self.den.compose_affine(scale, offset);
        Ok(Self::normalize_coprime(num, den))
    }

    /// Shorthand for the translation `a ↦ a + offset`.
    pub fn shift(&self, offset: i64) -> Self {
        self.compose_affine(&Rational::one(), &Rational::from(offset))
            .expect("unit scale")
    }

    /// Shorthand for the reflection `a ↦ -a + offset`.
    pub fn reflect(&self, offset: i64) -> Self {
        self.compose_affine(&Rational::from(-1), &Rational::from(offset))
            .expect("unit scale")
    }

    /// Human-readable form with integer-root linear factors pulled out, e.g.
    /// `2(a²+3a+3) / ((a+1)²(a+2)²(a+3)²)`.
    pub fn factored_string(&self) -> String {
        let num = factored_polynomial(&self.num);
        if self.den.is_one() {
            return num;
        }
        let den = factored_polynomial(&self.den);
        let den_needs_parens = den.contains(['+', '-', '(']) && !is_single_power(&den);
        if den_needs_parens {
            format!("{num} / ({den})")
        } else {
            format!("{num} / {den}")
        }
    }

    fn add_impl(&self, other: &RationalFunction, negate: bool) -> RationalFunction {
        let other_num = if negate { -&other.num } else { other.num.clone() };
        if self.is_zero() {
            return RationalFunction { num: other_num, den: other.den.clone() };
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let num = &self.num + &other_num;
            return Self::new(num, self.den.clone()).expect("nonzero denominator");
        }
        let g = self.den.gcd(&other.den);
        if g.is_one() {
            let num = &(&self.num * &other.den) + &(&other_num * &self.den);
            let den = &self.den * &other.den;
            return Self::normalize_coprime(num, den);
        }
        let b = self.den.exact_div(&g).expect("gcd divides");
        let d = other.den.exact_div(&g).expect("gcd divides");
        let num = &(&self.num * &d) + &(&other_num * &b);
        // Any common factor of the new numerator and b·d·g lies in g.
        let h = num.gcd(&g);
        let (num, g) = if h.is_one() {
            (num, g)
        } else {
            (num.exact_div(&h).expect("gcd divides"), g.exact_div(&h).expect("gcd divides"))
        };
        let den = &(&b * &d) * &g;
        Self::normalize_coprime(num, den)
    }

    fn mul_impl(&self, other: &RationalFunction) -> RationalFunction {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let cross = |n: &Polynomial, d: &Polynomial| {
            let g = n.gcd(d);
            if g.is_one() {
                (n.clone(), d.clone())
            } else {
                (n.exact_div(&g).expect("gcd divides"), d.exact_div(&g).expect("gcd divides"))
            }
        };
        let (n1, d2) = cross(&self.num, &other.den);
        let (n2, d1) = cross(&other.num, &self.den);
        Self::normalize_coprime(&n1 * &n2, &d1 * &d2)
    }
}

fn is_single_power(s: &str) -> bool {
    // "(a+1)²" style: one parenthesized group followed only by superscripts.
    s.starts_with('(')
        && s.find(')') == Some(s.rfind(')').unwrap())
        && s[s.find(')').unwrap() + 1..].chars().all(|c| "⁰¹²³⁴⁵⁶⁷⁸⁹".contains(c))
}

/// Splits off linear factors `a + r` with integer roots `-r`, in increasing `r`.
fn integer_root_factors(p: &Polynomial) -> (Vec<(i64, usize)>, Polynomial) {
    let mut rest = p.clone();
    let mut factors = Vec::new();
    let mut a_power = 0;
    while rest.degree().unwrap_or(0) > 0 && rest.constant_term().is_zero() {
        rest = rest.exact_div(&Polynomial::var()).expect("a divides");
        a_power += 1;
    }
    if a_power > 0 {
        factors.push((0, a_power));
    }
    let Some((_, prim)) = rest.primitive_form() else {
        return (factors, rest);
    };
    if prim.len() <= 1 {
        return (factors, rest);
    }
    // Integer roots divide the constant term and are bounded by the Cauchy
    // bound; cap the scan so formatting never dominates a computation.
    let c0 = prim[0].clone();
    let lead = prim.last().unwrap().clone();
    let cauchy = prim[..prim.len() - 1]
        .iter()
        .map(|c| num_integer::Integer::div_ceil(&num_traits::Signed::abs(c), &lead))
        .max()
        .unwrap();
    let limit: i64 = num_traits::ToPrimitive::to_i64(&cauchy)
        .unwrap_or(i64::MAX)
        .saturating_add(1)
        .min(4096);
    let mut candidates = Vec::new();
    for m in 1..=limit {
        if (&c0 % m) == num_bigint::BigInt::from(0) {
            candidates.push(m);
            candidates.push(-m);
        }
    }
    candidates.sort_by_key(|&r| (r.abs(), r < 0));
    for r in candidates {
        let factor = Polynomial::shifted_var(r);
        let mut mult = 0;
        while rest.degree().unwrap_or(0) > 0 && rest.eval(&Rational::from(-r)).is_zero() {
            rest = rest.exact_div(&factor).expect("root gives a factor");
            mult += 1;
        }
        if mult > 0 {
            factors.push((r, mult));
        }
    }
    (factors, rest)
}

fn factored_polynomial(p: &Polynomial) -> String {
    if p.is_constant() {
        return p.to_string();
    }
    let (mut factors, rest) = integer_root_factors(p);
    factors.sort_by_key(|&(r, _)| (r != 0, r));
    let (scalar, rest_str) = if rest.is_constant() {
        (rest.constant_term(), None)
    } else {
        let (content, _) = rest.primitive_form().unwrap();
        let prim = rest.scale(&content.recip().unwrap());
        (content, Some(prim.to_string()))
    };
    let mut parts = String::new();
    for (r, mult) in &factors {
        let sup = power_suffix(*mult);
        match r {
            0 => parts.push_str(&format!("a{sup}")),
            r if *r > 0 => parts.push_str(&format!("(a+{r}){sup}")),
            r => parts.push_str(&format!("(a{r}){sup}")),
        }
    }
    if let Some(s) = rest_str {
        if factors.is_empty() && scalar.is_one() {
            parts.push_str(&s);
        } else {
            parts.push_str(&format!("({s})"));
        }
    }
    if scalar.is_one() {
        parts
    } else if scalar == -Rational::one() {
        format!("-{parts}")
    } else if scalar.is_integer() {
        format!("{scalar}{parts}")
    } else {
        format!("({scalar}){parts}")
    }
}

impl fmt::Display for RationalFunction {
    /// `num / den` with expanded polynomials in descending powers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &Polynomial| {
            let s = p.to_string();
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{} / {}", wrap(&self.num), wrap(&self.den))
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Coefficient-array wire form: ascending powers, each coefficient a `p/q` string.
#[derive(Serialize, Deserialize)]
struct CoefficientForm {
    num: Vec<Rational>,
    den: Vec<Rational>,
}

impl Serialize for RationalFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CoefficientForm { num: self.num.coeffs().to_vec(), den: self.den.coeffs().to_vec() }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RationalFunction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let form = CoefficientForm::deserialize(deserializer)?;
        RationalFunction::new(Polynomial::from_coeffs(form.num), Polynomial::from_coeffs(form.den))
            .map_err(serde::de::Error::custom)
    }
}

impl Add<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        self.add_impl(rhs, false)
    }
}

impl Sub<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self.add_impl(rhs, true)
    }
}

impl Mul<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        self.mul_impl(rhs)
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: RationalFunction) -> RationalFunction {
        &self + &rhs
    }
}

impl Sub for RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: RationalFunction) -> RationalFunction {
        &self - &rhs
    }
}

impl Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: RationalFunction) -> RationalFunction {
        &self * &rhs
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl From<Rational> for RationalFunction {
    fn from(c: Rational) -> Self {
        RationalFunction::constant(c)
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        RationalFunction::from_polynomial(p)
    }
}
