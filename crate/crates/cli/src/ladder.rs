//! The invariant ladder run by `verify` next to the theorem sweep.

use clifford_stringy::contributions::{
    chi_t, delta_anchored_both, delta_anchored_min, delta_closed, delta_direct, delta_recursive,
};
use clifford_stringy::exact::{Polynomial, Rational, RationalFunction};
use clifford_stringy::strata::chi_t_strata;
use clifford_stringy::toric::{check_local_convexity, cone_multiplicity, enumerate_max_cones, remark_a_holds};

use crate::commands::bridge_mismatches;

pub struct Check {
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
}

type Step = std::result::Result<String, String>;
type NamedStep = (&'static str, fn() -> Step);

fn lib<T>(r: clifford_stringy::Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn inv_sq(m: i64) -> RationalFunction {
    RationalFunction::reciprocal_of(Polynomial::shifted_var(m).pow(2)).expect("nonzero")
}

fn pattern(t: u32) -> Rational {
    Rational::from(if t % 2 == 1 { 1 } else { 2 })
}

fn delta_agreement() -> Step {
    let recursive = delta_recursive(10);
    for j in 0..=10u32 {
        let direct = delta_direct(j);
        if direct != delta_closed(j) || direct != recursive[j as usize] {
            return Err(format!("δ methods disagree at j = {j}"));
        }
    }
    Ok("direct = closed = recursive, j ≤ 10".into())
}

fn anchored_identities() -> Step {
    for j in 1..=8u32 {
        let d = delta_direct(j);
        let both = d.clone() - inv_sq(2) * delta_direct(j - 1).shift(2);
        if lib(delta_anchored_both(j))? != both {
            return Err(format!("sum over sets containing 1 and 2j+1 fails at j = {j}"));
        }
        if lib(delta_anchored_min(j))? != d.reflect(-2 - 2 * i64::from(j)) {
            return Err(format!("sum over sets containing 1 fails at j = {j}"));
        }
    }
    Ok("both anchored sums, j ≤ 8".into())
}

fn pattern_and_recursion() -> Step {
    let mut prev_even = Rational::from(2);
    for t in 1..=30u32 {
        let x = lib(chi_t(t))?;
        if x != pattern(t) {
            return Err(format!("χ_{t} = {x}"));
        }
        if t % 2 == 0 {
            let j = i64::from(t / 2);
            let rhs = lib(chi_t(t - 1))? / Rational::from(j) + Rational::frac(2 * j - 1, 2 * j) * &prev_even;
            if x != rhs {
                return Err(format!("even-from-odd recursion fails at t = {t}"));
            }
            prev_even = x;
        }
    }
    Ok("χ_t alternates 1, 2 and satisfies the even-from-odd recursion, t ≤ 30".into())
}

fn fan_checks() -> Step {
    for l in 1..=10 {
        let cones = lib(enumerate_max_cones(l))?;
        for c in &cones {
            if lib(cone_multiplicity(c))? != 1 {
                return Err(format!("l = {l}: cone {:?} is not smooth", c.chain()));
            }
        }
        if l >= 2 && !lib(check_local_convexity(l))?.violations().is_empty() {
            return Err(format!("l = {l}: convexity violated"));
        }
        if !lib(remark_a_holds(l))? {
            return Err(format!("l = {l}: φ not determined by the point segment"));
        }
    }
    let (count, bad) = bridge_mismatches(8).map_err(|e| format!("{e:?}"))?;
    if let Some(t) = bad.first() {
        return Err(format!("G_φ ≠ G at T = {t}"));
    }
    Ok(format!("smooth, locally convex fans for l ≤ 10; bridge on {count} subsets"))
}

fn strata_checks() -> Step {
    for t in 1..=15u32 {
        let (a, b) = (lib(chi_t_strata(t))?, lib(chi_t(t))?);
        if a != b {
            return Err(format!("t = {t}: strata {a} vs direct {b}"));
        }
    }
    Ok("stratum sums reproduce χ_t, t ≤ 15".into())
}

pub fn run() -> Vec<Check> {
    let steps: [NamedStep; 5] = [
        ("delta-agreement", delta_agreement),
        ("delta-anchored-sums", anchored_identities),
        ("chi-pattern", pattern_and_recursion),
        ("fan", fan_checks),
        ("strata", strata_checks),
    ];
    steps
        .into_iter()
        .map(|(name, f)| {
            let (ok, detail) = match f() {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            Check { name, ok, detail }
        })
        .collect()
}
