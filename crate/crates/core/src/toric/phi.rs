use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{enumerate_max_cones, LatticeVector, MaxCone, NestedCollection, Segment};
use crate::error::{Error, Result};
use crate::exact::Rational;

/// Value of `φ` on the generator `e_{[s,t]}`.
pub fn phi_vertex(seg: Segment) -> Rational {
    let (s, t) = (seg.s() as i64, seg.t() as i64);
    let (x, y) = (2 * s - 1, 2 * t - 1);
    if s == t {
        Rational::from(x * x - 1)
    } else {
        Rational::frac(x * x + y * y, 2) + Rational::from(3 * (t - s) - 1)
    }
}

/// Solves `rows · y = rhs` exactly; `None` if singular.
fn solve(rows: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let n = rows.len();
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| r.iter().cloned().chain(std::iter::once(b.clone())).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].recip().ok()?;
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= &(&f * p);
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

fn rational_rows(vs: &[LatticeVector]) -> Vec<Vec<Rational>> {
    vs.iter().map(|v| v.0.iter().map(|&c| Rational::from(c)).collect()).collect()
}

fn dot(y: &[Rational], x: &[i64]) -> Rational {
    y.iter().zip(x).map(|(a, &b)| a * &Rational::from(b)).sum()
}

/// Coefficients of the linear function agreeing with `φ` on the cone.
pub fn phi_linear(cone: &MaxCone) -> Result<Vec<Rational>> {
    let rhs: Vec<Rational> = cone.chain().into_iter().map(phi_vertex).collect();
    solve(&rational_rows(&cone.generators()), &rhs)
        .ok_or_else(|| Error::structural("singular generator system"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConvexityCase {
    /// The swapped generator has positive length: `φ_τ = φ_τ'` is expected.
    Equality,
    /// The swapped generator is a point `[u,u]`: strict inequality expected.
    Strict,
}

/// One ordered comparison `φ_τ(x) ≤ φ_τ'(x)` at the generator `x` of `τ`
/// that `τ'` lacks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairCheck {
    pub tau: usize,
    pub tau_prime: usize,
    pub x: Segment,
    pub case: ConvexityCase,
    pub lhs: Rational,
    pub rhs: Rational,
    /// For strict pairs, `(2u-1)² + 3`: the value the original proof prints
    /// for `φ_τ'(x)`. The correct value from the vertex formula is `(2u-1)² + 5`.
    pub printed_rhs: Option<Rational>,
}

impl PairCheck {
    pub fn holds(&self) -> bool {
        match self.case {
            ConvexityCase::Equality => self.lhs == self.rhs,
            ConvexityCase::Strict => self.lhs < self.rhs,
        }
    }

    pub fn margin(&self) -> Rational {
        &self.rhs - &self.lhs
    }

    pub fn printed_margin(&self) -> Option<Rational> {
        self.printed_rhs.as_ref().map(|p| p - &self.lhs)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvexityReport {
    pub l: usize,
    pub checks: Vec<PairCheck>,
}

impl ConvexityReport {
    pub fn violations(&self) -> Vec<&PairCheck> {
        self.checks.iter().filter(|c| !c.holds()).collect()
    }

    pub fn count(&self, case: ConvexityCase) -> usize {
        self.checks.iter().filter(|c| c.case == case).count()
    }
}

/// Every ordered pair of maximal cones sharing `l-1` generators, compared at
/// the swapped generator.
pub fn check_local_convexity(l: usize) -> Result<ConvexityReport> {
    if l < 2 {
        return Err(Error::input("convexity needs at least two cones (l ≥ 2)"));
    }
    let cones = enumerate_max_cones(l)?;
    let sets: Vec<u128> = cones.iter().map(MaxCone::generator_set).collect();
    let linear: Vec<Vec<Rational>> = cones.par_iter().map(phi_linear).collect::<Result<_>>()?;
    let checks = (0..cones.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let (cones, sets, linear) = (&cones, &sets, &linear);
            (0..cones.len()).filter_map(move |j| {
                if i == j || (sets[i] & sets[j]).count_ones() as usize != l - 1 {
                    return None;
                }
                let x = cones[i]
                    .chain()
                    .into_iter()
                    .find(|seg| sets[j] >> seg.bit() & 1 == 0)
                    .expect("one generator differs");
                let gen = super::ray_generator(x, l).expect("segment fits");
                let (case, printed_rhs) = if x.is_point() {
                    let u = 2 * x.s() as i64 - 1;
                    (ConvexityCase::Strict, Some(Rational::from(u * u + 3)))
                } else {
                    (ConvexityCase::Equality, None)
                };
                Some(PairCheck {
                    tau: i,
                    tau_prime: j,
                    x,
                    case,
                    lhs: phi_vertex(x),
                    rhs: dot(&linear[j], gen.coords()),
                    printed_rhs,
                })
            })
        })
        .collect();
    Ok(ConvexityReport { l, checks })
}

/// Cones with the same point segment `[u,u]` carry the same linear function.
pub fn remark_a_holds(l: usize) -> Result<bool> {
    let cones = enumerate_max_cones(l)?;
    let mut by_point: std::collections::BTreeMap<Segment, Vec<Rational>> = Default::default();
    for cone in &cones {
        let y = phi_linear(cone)?;
        match by_point.get(&cone.point()) {
            Some(prev) if *prev != y => return Ok(false),
            Some(_) => {}
            None => {
                by_point.insert(cone.point(), y);
            }
        }
    }
    Ok(true)
}

/// Random points of the positive orthant: `φ` at `x`, taken on a cone
/// containing `x`, must be the minimum of all the cone-wise linear functions.
/// Returns the number of failing samples.
pub fn probe_convexity(l: usize, samples: usize, seed: u64) -> Result<usize> {
    let cones = enumerate_max_cones(l)?;
    let linear: Vec<Vec<Rational>> = cones.iter().map(phi_linear).collect::<Result<_>>()?;
    // Columns of the transpose give x in generator coordinates.
    let transposed: Vec<Vec<Vec<Rational>>> = cones
        .iter()
        .map(|c| {
            let rows = rational_rows(&c.generators());
            (0..l).map(|i| rows.iter().map(|r| r[i].clone()).collect()).collect()
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for _ in 0..samples {
        let x: Vec<i64> = (0..l).map(|_| rng.gen_range(0..=20)).collect();
        let xr: Vec<Rational> = x.iter().map(|&c| Rational::from(c)).collect();
        let home = (0..cones.len()).find(|&k| {
            solve(&transposed[k], &xr).is_some_and(|coef| coef.iter().all(|c| !c.is_negative()))
        });
        let Some(home) = home else {
            failures += 1;
            continue;
        };
        let value = dot(&linear[home], &x);
        if linear.iter().any(|y| dot(y, &x) < value) {
            failures += 1;
        }
    }
    Ok(failures)
}

fn sorted_subset(t: &[usize]) -> Result<Vec<usize>> {
    if t.is_empty() {
        return Err(Error::input("T must be nonempty"));
    }
    let mut v = t.to_vec();
    v.sort_unstable();
    v.dedup();
    if v[0] == 0 {
        return Err(Error::input("T must lie in 1..l"));
    }
    Ok(v)
}

/// Maximal nested collections of segments with both ends in `T`.
pub fn restricted_max_cones(t: &[usize], l: usize) -> Result<Vec<NestedCollection>> {
    let v = sorted_subset(t)?;
    if *v.last().unwrap() > l {
        return Err(Error::input(format!("T must lie in 1..{l}")));
    }
    let n = v.len();
    Ok((0..1u64 << (n - 1))
        .map(|choices| {
            let (mut lo, mut hi) = (0, n - 1);
            let mut segs = vec![Segment { s: v[lo], t: v[hi] }];
            for step in 0..n - 1 {
                if choices >> (n - 2 - step) & 1 == 1 {
                    lo += 1;
                } else {
                    hi -= 1;
                }
                segs.push(Segment { s: v[lo], t: v[hi] });
            }
            NestedCollection(segs)
        })
        .collect())
}

/// `Σ_C ∏_{e ∈ C} 1/(1+φ(e))` over the maximal cones with ends in `T`,
/// enumerated chain by chain with shared prefix products.
#[allow(non_snake_case)]
pub fn G_phi(t: &[usize]) -> Result<Rational> {
    let v = sorted_subset(t)?;
    let n = v.len();
    let weight: Vec<Vec<Rational>> = (0..n)
        .map(|lo| {
            (0..n)
                .map(|hi| {
                    if hi < lo {
                        return Rational::zero();
                    }
                    let seg = Segment { s: v[lo], t: v[hi] };
                    (Rational::one() + phi_vertex(seg)).recip().expect("positive")
                })
                .collect()
        })
        .collect();
    fn walk(weight: &[Vec<Rational>], lo: usize, hi: usize, prefix: Rational, acc: &mut Rational) {
        let here = prefix * &weight[lo][hi];
        if lo == hi {
            *acc += &here;
            return;
        }
        walk(weight, lo, hi - 1, here.clone(), acc);
        walk(weight, lo + 1, hi, here, acc);
    }
    let mut acc = Rational::zero();
    walk(&weight, 0, n - 1, Rational::one(), &mut acc);
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(s: usize, t: usize) -> Segment {
        Segment { s, t }
    }

    #[test]
    fn vertex_values() {
        assert_eq!(phi_vertex(seg(1, 1)), Rational::zero());
        assert_eq!(phi_vertex(seg(1, 2)), Rational::from(7));
        assert_eq!(phi_vertex(seg(2, 4)), Rational::from(34));
    }

    #[test]
    fn small_linear_functions() {
        let one = MaxCone::new(1, 0).unwrap();
        assert_eq!(phi_linear(&one).unwrap(), vec![Rational::zero()]);
        let c = MaxCone::new(2, 0).unwrap();
        assert_eq!(phi_linear(&c).unwrap(), vec![Rational::zero(), Rational::from(7)]);
    }

    #[test]
    fn two_dimensional_report() {
        let report = check_local_convexity(2).unwrap();
        assert_eq!(report.checks.len(), 2);
        let first = &report.checks[0];
        assert_eq!(first.x, seg(1, 1));
        assert_eq!(first.lhs, Rational::zero());
        assert_eq!(first.rhs, Rational::from(6));
        assert_eq!(first.case, ConvexityCase::Strict);
        assert_eq!(first.margin(), Rational::from(6));
        assert_eq!(first.printed_margin(), Some(Rational::from(4)));
        assert!(report.violations().is_empty());
    }

    #[test]
    fn restricted_collections() {
        assert_eq!(restricted_max_cones(&[2], 3).unwrap(), vec![NestedCollection(vec![seg(2, 2)])]);
        assert_eq!(
            restricted_max_cones(&[1, 3], 3).unwrap(),
            vec![
                NestedCollection(vec![seg(1, 3), seg(1, 1)]),
                NestedCollection(vec![seg(1, 3), seg(3, 3)]),
            ]
        );
        assert_eq!(restricted_max_cones(&[1, 2, 4, 5, 7], 7).unwrap().len(), 16);
        assert!(restricted_max_cones(&[], 3).is_err());
    }

    #[test]
    fn g_phi_examples() {
        assert_eq!(G_phi(&[1]).unwrap(), Rational::one());
        assert_eq!(G_phi(&[1, 2]).unwrap(), Rational::frac(5, 36));
        assert_eq!(G_phi(&[2, 3, 4]).unwrap(), Rational::frac(1999, 7_717_500));
    }
}
