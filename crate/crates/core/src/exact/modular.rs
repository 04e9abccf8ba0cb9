//! Polynomial arithmetic modulo a word-sized prime, used only to bound the
//! degree of an integer gcd before doing the expensive exact computation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

/// Primes just below 2^62; any one dividing neither leading coefficient
/// yields a valid degree bound.
const PRIMES: [u64; 4] = [
    4_611_686_018_427_387_847,
    4_611_686_018_427_387_817,
    4_611_686_018_427_387_787,
    4_611_686_018_427_387_761,
];

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn reduce(coeffs: &[BigInt], p: u64) -> Vec<u64> {
    let modulus = BigInt::from(p);
    let mut out: Vec<u64> = coeffs
        .iter()
        .map(|c| c.mod_floor(&modulus).to_u64().expect("residue fits in u64"))
        .collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

fn rem_mod(a: &mut Vec<u64>, b: &[u64], p: u64) {
    let lead_inv = inv_mod(*b.last().unwrap(), p);
    while a.len() >= b.len() {
        let shift = a.len() - b.len();
        let factor = mul_mod(*a.last().unwrap(), lead_inv, p);
        for (i, &bi) in b.iter().enumerate() {
            let sub = mul_mod(factor, bi, p);
            let slot = &mut a[i + shift];
            *slot = if *slot >= sub { *slot - sub } else { *slot + p - sub };
        }
        while a.last() == Some(&0) {
            a.pop();
        }
    }
}

fn gcd_degree_mod(a: &[BigInt], b: &[BigInt], p: u64) -> usize {
    let mut x = reduce(a, p);
    let mut y = reduce(b, p);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        rem_mod(&mut x, &y, p);
        std::mem::swap(&mut x, &mut y);
    }
    x.len() - 1
}

/// Upper bound on `deg gcd(a, b)` over ℚ for nonzero integer polynomials.
pub(crate) fn gcd_degree_bound(a: &[BigInt], b: &[BigInt]) -> usize {
    let la = a.last().expect("nonzero polynomial");
    let lb = b.last().expect("nonzero polynomial");
    for &p in &PRIMES {
        let modulus = BigInt::from(p);
        if (la % &modulus).is_zero() || (lb % &modulus).is_zero() {
            continue;
        }
        return gcd_degree_mod(a, b, p);
    }
    // Every prime divides a leading coefficient: no information.
    (a.len() - 1).min(b.len() - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn coprime_linear_factors() {
        // a+2 and a+3
        assert_eq!(gcd_degree_bound(&ints(&[2, 1]), &ints(&[3, 1])), 0);
    }

    #[test]
    fn shared_factor_detected() {
        // (a-1)(a+1) and (a-1)
        assert_eq!(gcd_degree_bound(&ints(&[-1, 0, 1]), &ints(&[-1, 1])), 1);
    }
}
