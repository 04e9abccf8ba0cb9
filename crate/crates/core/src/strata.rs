//! Euler characteristics of the strata over a point of corank `t`: quadrics,
//! flag varieties, spaces of nondegenerate quadrics and the fibers of the
//! resolution, together with the discrepancy bookkeeping that feeds `χ_t`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::contributions::{
    discrepancy, f_table, g_with, single_discrepancy, DivisorLabel, OddChain, PairRule,
};
use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, Rational};

/// `χ` of a smooth quadric of dimension `d`.
pub fn chi_smooth_quadric(d: u64) -> u64 {
    if d % 2 == 1 {
        d + 1
    } else {
        d + 2
    }
}

/// `χ` of a quadric of corank `t` in `ℙ^{2n-1}`: a cone over a smooth
/// quadric of dimension `2n-2-t` with vertex `ℙ^{t-1}`.
pub fn chi_corank_quadric(n: u64, t: u64) -> Result<u64> {
    if n == 0 || t > 2 * n - 2 {
        return Err(Error::input(format!("corank {t} outside 0..={} for n = {n}", 2 * n - 2)));
    }
    if t == 0 {
        return Ok(chi_smooth_quadric(2 * n - 2));
    }
    Ok(t + chi_smooth_quadric(2 * n - 2 - t))
}

/// `χ` of the space of nondegenerate quadrics in `s` variables, solved from
/// `s(s+1)/2 = Σ_{0 ≤ i < s} C(s,i) r_{s-i}`.
pub fn chi_nondeg(s: u64) -> Result<BigInt> {
    if s == 0 {
        return Err(Error::input("chi_nondeg needs s ≥ 1"));
    }
    Ok(nondeg_sequence(s).pop().expect("s ≥ 1"))
}

/// `r_1, …, r_s`.
pub fn nondeg_sequence(s: u64) -> Vec<BigInt> {
    let mut r: Vec<BigInt> = Vec::with_capacity(s as usize);
    for m in 1..=s {
        let mut value = BigInt::from(m * (m + 1) / 2);
        for i in 1..m {
            value -= binomial(m, i) * &r[(m - i - 1) as usize];
        }
        r.push(value);
    }
    r
}

/// `χ` of the partial flag variety with step sizes `parts`: the multinomial
/// `t! / ∏ parts!`.
pub fn chi_flag(t: u64, parts: &[u64]) -> Result<BigInt> {
    if parts.contains(&0) || parts.iter().sum::<u64>() != t {
        return Err(Error::input(format!("{parts:?} is not a composition of {t}")));
    }
    let den: BigInt = parts.iter().map(|&p| factorial(p)).product();
    Ok(factorial(t) / den)
}

/// Indices `i₁ < … < i_s` of a stratum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StratumIndex(Vec<u32>);

impl StratumIndex {
    pub fn new(elements: Vec<u32>) -> Result<Self> {
        if elements.first() == Some(&0) || elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::input(format!("{elements:?} is not strictly increasing in 1..")));
        }
        Ok(StratumIndex(elements))
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

    pub fn max(&self) -> Option<u32> {
        self.0.last().copied()
    }

    /// Successive differences with `i₀ = 0`.
    pub fn gaps(&self) -> Vec<u64> {
        std::iter::once(0)
            .chain(self.0.iter().copied())
            .collect::<Vec<u32>>()
            .windows(2)
            .map(|w| u64::from(w[1] - w[0]))
            .collect()
    }

    pub fn has_odd(&self) -> bool {
        self.0.iter().any(|i| i % 2 == 1)
    }

    pub fn odd_part(&self) -> Vec<u32> {
        self.0.iter().copied().filter(|i| i % 2 == 1).collect()
    }

    pub fn even_part(&self) -> Vec<u32> {
        self.0.iter().copied().filter(|i| i % 2 == 0).collect()
    }
}

/// Condition `(*)`: every gap, starting from `i₀ = 0`, is at most 2.
pub fn satisfies_star(i: &StratumIndex) -> bool {
    i.gaps().iter().all(|&g| g <= 2)
}

fn check_top(i: &StratumIndex, t: u32) -> Result<()> {
    if i.max() != Some(t) {
        return Err(Error::input(format!("stratum {:?} must end at t = {t}", i.elements())));
    }
    Ok(())
}

/// `χ(Fl(t; gaps)) · ∏ χ(nondegenerate quadrics in gap variables)`.
pub fn chi_fiber_product(i: &StratumIndex, t: u32) -> Result<Rational> {
    check_top(i, t)?;
    let gaps = i.gaps();
    let flag = chi_flag(u64::from(t), &gaps)?;
    let r = nondeg_sequence(gaps.iter().copied().max().unwrap_or(1));
    let nondeg: BigInt = gaps.iter().map(|&g| r[g as usize - 1].clone()).product();
    Ok(Rational::from_integer(flag * nondeg))
}

/// `χ` of the fiber of the resolution of the quadric space over the stratum:
/// `t!·(1/2)^{t-|I|}` under `(*)`, zero otherwise. Cross-checked against the
/// flag-times-nondegenerate product.
#[allow(non_snake_case)]
pub fn chi_fiber_T(i: &StratumIndex, t: u32) -> Result<Rational> {
    check_top(i, t)?;
    let closed = if satisfies_star(i) {
        Rational::from_integer(factorial(u64::from(t)))
            * Rational::frac(1, 2).pow((t as usize - i.len()) as i32)
    } else {
        Rational::zero()
    };
    if closed != chi_fiber_product(i, t)? {
        return Err(Error::structural(format!("fiber formulas disagree on {:?}", i.elements())));
    }
    Ok(closed)
}

/// The same fiber on the double cover: doubled when no odd index occurs,
/// since the cover is then unramified over the stratum.
#[allow(non_snake_case)]
pub fn chi_fiber_E(i: &StratumIndex, t: u32) -> Result<Rational> {
    let base = chi_fiber_T(i, t)?;
    Ok(if i.has_odd() { base } else { Rational::from(2) * base })
}

/// `I ⊆ {1..t}` with `t ∈ I` and condition `(*)`, i.e. compositions of `t`
/// into parts 1 and 2, in lexicographic order.
pub fn star_strata(t: u32) -> Vec<StratumIndex> {
    fn extend(t: u32, cur: &mut Vec<u32>, out: &mut Vec<StratumIndex>) {
        let last = cur.last().copied().unwrap_or(0);
        if last == t {
            out.push(StratumIndex(cur.clone()));
            return;
        }
        for step in [1, 2] {
            if last + step <= t {
                cur.push(last + step);
                extend(t, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(t, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Contribution of one stratum to `χ_t`.
pub fn stratum_term(i: &StratumIndex, t: u32) -> Result<Rational> {
    let fiber = chi_fiber_E(i, t)?;
    if fiber.is_zero() {
        return Ok(fiber);
    }
    let evens: Rational = i
        .even_part()
        .into_iter()
        .map(|r| (Rational::one() + single_discrepancy(r)).recip().expect("positive"))
        .product();
    let odd = i.odd_part();
    let gamma = if odd.is_empty() {
        Rational::one()
    } else {
        g_with(&OddChain::new(odd)?, PairRule::Modified)?
    };
    Ok(fiber * evens * gamma)
}

/// `χ_t` reassembled stratum by stratum. The `(*)` strata are walked as
/// compositions of `t` into parts 1 and 2, merging partial index sets with the
/// same odd part; the summands are those of [`stratum_term`].
pub fn chi_t_strata(t: u32) -> Result<Rational> {
    if t == 0 {
        return Err(Error::input("χ_t needs t ≥ 1"));
    }
    let width = t.div_ceil(2) as usize;
    // weights[q][odd mask] = Σ 2^{|I|} ∏_{even r ∈ I} 1/(1+a_r) over I ending at q.
    let mut weights: Vec<HashMap<u64, Rational>> = vec![HashMap::new(); t as usize + 1];
    weights[0].insert(0, Rational::one());
    for q in 0..t {
        let here = std::mem::take(&mut weights[q as usize]);
        for next in [q + 1, q + 2].into_iter().filter(|&r| r <= t) {
            let (factor, bit) = if next % 2 == 0 {
                let inv = (Rational::one() + single_discrepancy(next)).recip().expect("positive");
                (Rational::from(2) * inv, 0)
            } else {
                (Rational::from(2), 1u64 << (next / 2))
            };
            let slot = &mut weights[next as usize];
            for (mask, w) in &here {
                *slot.entry(mask | bit).or_insert_with(Rational::zero) += &(w * &factor);
            }
        }
    }
    let table = f_table(PairRule::Modified, width);
    let fiber = Rational::from_integer(factorial(u64::from(t))) * Rational::frac(1, 2).pow(t as i32);
    let mut masks: Vec<(u64, Rational)> = weights.pop().expect("t ≥ 1").into_iter().collect();
    masks.sort_unstable_by_key(|(m, _)| *m);
    let sum: Rational = masks
        .into_iter()
        .map(|(mask, w)| {
            let gamma = if mask == 0 {
                // Unramified cover: fiber counted twice, Γ(∅) = 1.
                Rational::from(2)
            } else {
                let f = table.get(mask).expect("mask within table");
                f * &Rational::frac(1, 2).pow(mask.count_ones() as i32 - 1)
            };
            w * gamma
        })
        .sum();
    Ok(fiber * sum)
}

/// All discrepancies used up to corank `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscrepancyTable {
    pub k: u32,
    pub classical: BTreeMap<u32, Rational>,
    pub beta: BTreeMap<u32, Rational>,
    pub gamma: BTreeMap<u32, Rational>,
    pub tilde_pair: BTreeMap<(u32, u32), Rational>,
    pub modified: BTreeMap<DivisorLabel, Rational>,
}

fn odd_pairs(k: u32) -> impl Iterator<Item = (u32, u32)> {
    (1..=k).step_by(2).flat_map(move |s| (s + 2..=k).step_by(2).map(move |t| (s, t)))
}

pub fn beta(i: u32) -> Rational {
    if i % 2 == 1 {
        Rational::from(i)
    } else {
        Rational::frac(i64::from(i), 2)
    }
}

pub fn gamma(i: u32) -> Rational {
    single_discrepancy(i)
}

/// Discrepancy of `D_i` on the resolved space of quadrics.
pub fn classical(i: u32) -> Rational {
    Rational::from(i64::from(i) * (i64::from(i) + 1) / 2 - 1)
}

pub fn discrepancy_table(k: u32) -> Result<DiscrepancyTable> {
    if k == 0 {
        return Err(Error::input("discrepancy table needs k ≥ 1"));
    }
    let singles = || 1..=k;
    let mut modified = BTreeMap::new();
    for i in singles() {
        modified.insert(DivisorLabel::Single(i), discrepancy(DivisorLabel::Single(i), PairRule::Modified)?);
    }
    for (s, t) in odd_pairs(k) {
        modified.insert(DivisorLabel::Pair(s, t), discrepancy(DivisorLabel::Pair(s, t), PairRule::Modified)?);
    }
    Ok(DiscrepancyTable {
        k,
        classical: singles().map(|i| (i, classical(i))).collect(),
        beta: singles().map(|i| (i, beta(i))).collect(),
        gamma: singles().map(|i| (i, gamma(i))).collect(),
        tilde_pair: odd_pairs(k).map(|(s, t)| ((s, t), PairRule::Batyrev.pair(s, t))).collect(),
        modified,
    })
}

fn serialize_keyed<S: SerializeMap, K: ToString>(
    map: &mut S,
    name: &str,
    entries: impl Iterator<Item = (K, Rational)>,
) -> std::result::Result<(), S::Error> {
    let inner: BTreeMap<String, Rational> = entries.map(|(k, v)| (k.to_string(), v)).collect();
    map.serialize_entry(name, &inner)
}

impl Serialize for DiscrepancyTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(6))?;
        map.serialize_entry("k", &self.k)?;
        serialize_keyed(&mut map, "classical", self.classical.iter().map(|(k, v)| (k, v.clone())))?;
        serialize_keyed(&mut map, "beta", self.beta.iter().map(|(k, v)| (k, v.clone())))?;
        serialize_keyed(&mut map, "gamma", self.gamma.iter().map(|(k, v)| (k, v.clone())))?;
        serialize_keyed(
            &mut map,
            "tilde_pair",
            self.tilde_pair.iter().map(|((s, t), v)| (format!("{s},{t}"), v.clone())),
        )?;
        serialize_keyed(&mut map, "modified", self.modified.iter().map(|(k, v)| (k, v.clone())))?;
        map.end()
    }
}

/// `γ_i` re-derived by comparing `θ*σ*K` with `ρ*π*K`: the classical
/// discrepancy, doubled-and-shifted over the ramified (odd) divisors, minus
/// `β_i` from the ramification divisor.
pub fn derive_gamma(i: u32) -> Rational {
    let pulled_back = if i % 2 == 1 {
        // ρ*T_i = 2E_i and ρ ramifies along E_i.
        Rational::from(2) * classical(i) + Rational::one()
    } else {
        classical(i)
    };
    pulled_back - beta(i)
}

/// Coefficients of `Ẽ_{st}` in `K_Z̃ - μ*θ*K_Z`, obtained by pulling
/// `Σ γ_i E_i` back along `μ` with `μ*E_s = Ẽ_s + ½ Σ_{t ≠ s odd} Ẽ_{st}` for
/// odd `s` and `μ*E_s = Ẽ_s` for even `s`.
pub fn derive_tilde_discrepancies(k: u32) -> BTreeMap<(u32, u32), Rational> {
    let mut coeffs: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
    let half = Rational::frac(1, 2);
    for s in (1..=k).step_by(2) {
        let g = &half * &derive_gamma(s);
        for t in (1..=k).step_by(2).filter(|&t| t != s) {
            *coeffs.entry((s.min(t), s.max(t))).or_insert_with(Rational::zero) += &g;
        }
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(v: &[u32]) -> StratumIndex {
        StratumIndex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn quadrics() {
        assert_eq!(chi_smooth_quadric(2), 4);
        assert_eq!(chi_smooth_quadric(1), 2);
        assert_eq!(chi_smooth_quadric(0), 2);
        assert_eq!(chi_corank_quadric(4, 1).unwrap(), 7);
        assert_eq!(chi_corank_quadric(4, 0).unwrap(), 8);
        assert_eq!(chi_corank_quadric(3, 3).unwrap(), 5);
        assert!(chi_corank_quadric(3, 5).is_err());
    }

    #[test]
    fn nondegenerate_quadrics() {
        assert_eq!(chi_nondeg(1).unwrap(), BigInt::from(1));
        assert_eq!(chi_nondeg(2).unwrap(), BigInt::from(1));
        assert_eq!(chi_nondeg(7).unwrap(), BigInt::from(0));
    }

    #[test]
    fn flags() {
        assert_eq!(chi_flag(3, &[1, 2]).unwrap(), BigInt::from(3));
        assert_eq!(chi_flag(2, &[2]).unwrap(), BigInt::from(1));
        assert_eq!(chi_flag(5, &[1, 2, 2]).unwrap(), BigInt::from(30));
        assert!(chi_flag(5, &[1, 2]).is_err());
    }

    #[test]
    fn star_condition() {
        assert!(satisfies_star(&idx(&[1, 3])));
        assert!(!satisfies_star(&idx(&[3])));
        assert!(!satisfies_star(&idx(&[2, 5])));
    }

    #[test]
    fn fibers() {
        assert_eq!(chi_fiber_T(&idx(&[1, 3]), 3).unwrap(), Rational::from(3));
        assert_eq!(chi_fiber_T(&idx(&[3]), 3).unwrap(), Rational::zero());
        assert_eq!(chi_fiber_T(&idx(&[2]), 2).unwrap(), Rational::one());
        assert!(chi_fiber_T(&idx(&[2]), 3).is_err());
        assert_eq!(chi_fiber_E(&idx(&[2]), 2).unwrap(), Rational::from(2));
        assert_eq!(chi_fiber_E(&idx(&[1, 2]), 2).unwrap(), Rational::from(2));
        assert_eq!(chi_fiber_E(&idx(&[1, 4]), 4).unwrap(), Rational::zero());
    }

    #[test]
    fn table_entries() {
        let table = discrepancy_table(5).unwrap();
        assert_eq!(table.classical[&2], Rational::from(2));
        assert_eq!(table.gamma[&3], Rational::from(8));
        assert_eq!(table.gamma[&4], Rational::from(7));
        assert_eq!(table.tilde_pair[&(1, 3)], Rational::from(4));
        assert_eq!(table.modified[&DivisorLabel::Pair(1, 3)], Rational::from(7));
        let json = serde_json::to_value(&table).unwrap();
        assert_eq!(json["modified"]["1,3"], "7");
        assert_eq!(json["modified"]["4"], "7");
    }

    #[test]
    fn tilde_examples() {
        let d = derive_tilde_discrepancies(5);
        assert_eq!(d[&(1, 3)], Rational::from(4));
        assert_eq!(d[&(3, 5)], Rational::from(16));
        assert_eq!(d[&(1, 5)], Rational::from(12));
    }

    #[test]
    fn small_strata_sums() {
        assert_eq!(chi_t_strata(1).unwrap(), Rational::one());
        assert_eq!(chi_t_strata(3).unwrap(), Rational::one());
        assert_eq!(chi_t_strata(4).unwrap(), Rational::from(2));
        let three: Vec<Vec<u32>> = star_strata(3).iter().map(|i| i.elements().to_vec()).collect();
        assert_eq!(three, vec![vec![1, 2, 3], vec![1, 3], vec![2, 3]]);
    }
}
