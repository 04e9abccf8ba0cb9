//! `χ_cst(Z) = χ(Y)` as an identity of linear forms in the stratum classes
//! `c_t = χ(φ°_t)`, plus an independent Chern-class value of `χ(Y)`.

use std::fmt;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::contributions::{chi_t_with, PairRule};
use crate::error::{Error, Result};
use crate::exact::{binomial, Rational};
use crate::strata::chi_corank_quadric;

/// The `k` with `k(k+1)/2 ≤ n-1 < (k+1)(k+2)/2`.
pub fn k_of_n(n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::input(format!("n = {n}: need n ≥ 2")));
    }
    let mut k = 0;
    while (k + 1) * (k + 2) / 2 < n {
        k += 1;
    }
    Ok(k)
}

/// `constant + Σ_{t=0}^{k} coeffs[t]·c_t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearStratumExpression {
    pub constant: Rational,
    pub coeffs: Vec<Rational>,
}

impl LinearStratumExpression {
    pub fn zero(k: usize) -> Self {
        LinearStratumExpression { constant: Rational::zero(), coeffs: vec![Rational::zero(); k + 1] }
    }

    pub fn k(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Eliminates `c₀` through `Σ_t c_t = n`.
    pub fn normal_form(&self, n: u64) -> Self {
        let c0 = self.coeffs[0].clone();
        let mut out = self.clone();
        out.constant += &(&c0 * &Rational::from(n));
        out.coeffs[0] = Rational::zero();
        for c in out.coeffs.iter_mut().skip(1) {
            *c -= &c0;
        }
        out
    }
}

impl fmt::Display for LinearStratumExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const SUB: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (t, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sub: String = t.to_string().chars().map(|d| SUB[d as usize - '0' as usize]).collect();
            let mag = c.abs();
            let coeff = if mag.is_one() { String::new() } else if mag.is_integer() { mag.to_string() } else { format!("({mag})") };
            parts.push((c.is_negative(), format!("{coeff}c{sub}")));
        }
        if !self.constant.is_zero() || parts.is_empty() {
            parts.push((self.constant.is_negative(), self.constant.abs().to_string()));
        }
        for (i, (neg, body)) in parts.iter().enumerate() {
            match (i, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

/// `(1, χ₁, …, χ_k)`: the local contributions over the corank strata, `1`
/// over the smooth stratum.
pub fn local_contribution_vector_with(n: u64, rule: PairRule) -> Result<Vec<Rational>> {
    let k = k_of_n(n)?;
    std::iter::once(Ok(Rational::one()))
        .chain((1..=k as u32).map(|t| chi_t_with(t, rule)))
        .collect()
}

pub fn local_contribution_vector(n: u64) -> Result<Vec<Rational>> {
    local_contribution_vector_with(n, PairRule::Modified)
}

/// `2c₀ + Σ_{t≥1} χ_t c_t`: the double cover has two points over each smooth
/// point and one over each degenerate one.
pub fn chi_cst_symbolic_with(n: u64, rule: PairRule) -> Result<LinearStratumExpression> {
    let chi = local_contribution_vector_with(n, rule)?;
    let mut e = LinearStratumExpression::zero(chi.len() - 1);
    e.coeffs[0] = Rational::from(2) * &chi[0];
    for (t, x) in chi.into_iter().enumerate().skip(1) {
        e.coeffs[t] = x;
    }
    Ok(e)
}

pub fn chi_cst_symbolic(n: u64) -> Result<LinearStratumExpression> {
    chi_cst_symbolic_with(n, PairRule::Modified)
}

/// `Σ_t χ(Q_t) c_t`: the universal quadric counted over the base.
pub fn universal_quadric(n: u64) -> Result<LinearStratumExpression> {
    let k = k_of_n(n)? as usize;
    let mut e = LinearStratumExpression::zero(k);
    for t in 0..=k {
        e.coeffs[t] = Rational::from(chi_corank_quadric(n, t as u64)?);
    }
    Ok(e)
}

fn fiber_correction(n: u64) -> Rational {
    Rational::from(2 * n * (n - 1))
}

/// `χ(Y) = χ(ℍ) - 2n(n-1)` with the common `(2n-2)c_t` part of every
/// `χ(Q_t)` summed through `Σ c_t = n`: `2c₀ + Σ_{even} 2c_t + Σ_{odd} c_t`.
#[allow(non_snake_case)]
pub fn chi_Y_symbolic(n: u64) -> Result<LinearStratumExpression> {
    let mut e = universal_quadric(n)?;
    let common = Rational::from(2 * n - 2);
    for c in e.coeffs.iter_mut() {
        *c -= &common;
    }
    e.constant = &common * &Rational::from(n) - fiber_correction(n);
    Ok(e)
}

/// Second path: `Σ χ(Q_t) c_t - 2n(n-1)` brought into normal form directly.
#[allow(non_snake_case)]
pub fn chi_Y_hpv_normal_form(n: u64) -> Result<LinearStratumExpression> {
    let mut e = universal_quadric(n)?;
    e.constant = -fiber_correction(n);
    Ok(e.normal_form(n))
}

/// `χ(Y) = 2ⁿ·[h^{n-1}] (1+h)^{2n} (1+2h)^{-n}` for the intersection of `n`
/// quadrics in `ℙ^{2n-1}`.
#[allow(non_snake_case)]
pub fn chi_Y_chern(n: u64) -> Result<BigInt> {
    if n < 2 {
        return Err(Error::input(format!("n = {n}: need n ≥ 2")));
    }
    let d = n - 1;
    let coeff: BigInt = (0..=d)
        .map(|m| {
            // [h^m] (1+2h)^{-n} = C(n+m-1, m)·(-2)^m
            let inv = binomial(n + m - 1, m) * BigInt::from(-2).pow(m as u32);
            binomial(2 * n, d - m) * inv
        })
        .sum();
    Ok(coeff * BigInt::from(2).pow(n as u32))
}

fn serialize_bigint<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

#[allow(non_snake_case)]
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub n: u64,
    pub k: u64,
    pub rule: PairRule,
    pub chi_cst_expr: LinearStratumExpression,
    pub chi_Y_expr: LinearStratumExpression,
    pub symbolic_equal: bool,
    pub normal_forms_agree: bool,
    pub constant_zero: bool,
    #[serde(serialize_with = "serialize_bigint")]
    pub oracle_chi_Y: BigInt,
    pub pattern_used: Vec<Rational>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.symbolic_equal && self.normal_forms_agree && self.constant_zero
    }
}

pub fn verify_main_with(n: u64, rule: PairRule) -> Result<VerificationReport> {
    let k = k_of_n(n)?;
    let pattern = local_contribution_vector_with(n, rule)?;
    let cst = chi_cst_symbolic_with(n, rule)?;
    let y = chi_Y_symbolic(n)?;
    let hpv = chi_Y_hpv_normal_form(n)?;
    Ok(VerificationReport {
        n,
        k,
        rule,
        symbolic_equal: cst == y,
        normal_forms_agree: hpv == y.normal_form(n) && hpv == cst.normal_form(n),
        constant_zero: y.constant.is_zero(),
        chi_cst_expr: cst,
        chi_Y_expr: y,
        oracle_chi_Y: chi_Y_chern(n)?,
        pattern_used: pattern,
    })
}

/// Theorem check for one `n` with the modified discrepancies.
pub fn verify_main(n: u64) -> Result<VerificationReport> {
    verify_main_with(n, PairRule::Modified)
}
