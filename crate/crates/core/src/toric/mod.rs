//! The toric resolution of `z² = x₁⋯x_l`: segments `[s,t]` of `{1..l}`,
//! nested collections, the smooth fan of `2^{l-1}` maximal cones, the
//! piecewise-linear function `φ` and the cone sum `G_φ`.

mod phi;

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub use phi::{
    check_local_convexity, phi_linear, phi_vertex, probe_convexity, remark_a_holds,
    restricted_max_cones, ConvexityCase, ConvexityReport, PairCheck, G_phi,
};

/// Index of the lattice `N = {x ∈ ℤ^l : Σxᵢ even}` in `ℤ^l`.
pub const LATTICE_INDEX: i128 = 2;

/// Largest `l` the fan routines accept; segments must fit a 128-bit set.
pub const MAX_L: usize = 15;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    s: usize,
    t: usize,
}

impl Segment {
    pub fn new(s: usize, t: usize, l: usize) -> Result<Self> {
        if s < 1 || s > t || t > l {
            return Err(Error::input(format!("[{s},{t}] is not a segment of 1..{l}")));
        }
        Ok(Segment { s, t })
    }

    pub fn s(self) -> usize {
        self.s
    }

    pub fn t(self) -> usize {
        self.t
    }

    /// `t - s`.
    pub fn len(self) -> usize {
        self.t - self.s
    }

    pub fn is_point(self) -> bool {
        self.s == self.t
    }

    pub fn contains(self, other: Segment) -> bool {
        self.s <= other.s && other.t <= self.t
    }

    /// Position in the flat enumeration of all segments, for bitsets.
    fn bit(self) -> u32 {
        // Segments with t < self.t come first: t(t-1)/2 of them.
        (self.t * (self.t - 1) / 2 + self.s - 1) as u32
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.s, self.t)
    }
}

impl Serialize for Segment {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LatticeVector(pub Vec<i64>);

impl LatticeVector {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// Membership in `N`: even coordinate sum.
    pub fn in_lattice(&self) -> bool {
        self.0.iter().sum::<i64>() % 2 == 0
    }
}

/// `e_{[s,t]} = (e_s + e_t)/2` with `e_i = 2·unit_i`.
pub fn ray_generator(seg: Segment, l: usize) -> Result<LatticeVector> {
    if seg.t > l {
        return Err(Error::input(format!("segment {seg} does not fit l = {l}")));
    }
    let mut v = vec![0; l];
    v[seg.s - 1] += 1;
    v[seg.t - 1] += 1;
    Ok(LatticeVector(v))
}

/// Pairwise nested under inclusion.
pub fn is_nested(segments: &[Segment]) -> bool {
    segments.iter().enumerate().all(|(i, &a)| {
        segments[i + 1..].iter().all(|&b| a.contains(b) || b.contains(a))
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct NestedCollection(pub Vec<Segment>);

/// A maximal cone: the chain `[1,l] ⊃ … ⊃ [u,u]` obtained by removing one
/// end at a time. Bit `l-2-λ` of `choices` is set when step `λ` removes the
/// left end, so increasing `choices` is lexicographic in the choice string
/// with "drop the right end" first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MaxCone {
    l: usize,
    choices: u64,
}

impl MaxCone {
    pub fn new(l: usize, choices: u64) -> Result<Self> {
        if l == 0 || l > MAX_L {
            return Err(Error::input(format!("l = {l} outside 1..={MAX_L}")));
        }
        if choices >> (l - 1) != 0 {
            return Err(Error::input("choice string longer than l-1"));
        }
        Ok(MaxCone { l, choices })
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn choices(&self) -> u64 {
        self.choices
    }

    /// Segments of lengths `l-1, l-2, …, 0`.
    pub fn chain(&self) -> Vec<Segment> {
        let (mut s, mut t) = (1, self.l);
        let mut out = Vec::with_capacity(self.l);
        out.push(Segment { s, t });
        for step in 0..self.l - 1 {
            if self.choices >> (self.l - 2 - step) & 1 == 1 {
                s += 1;
            } else {
                t -= 1;
            }
            out.push(Segment { s, t });
        }
        out
    }

    pub fn point(&self) -> Segment {
        *self.chain().last().expect("nonempty chain")
    }

    pub fn generators(&self) -> Vec<LatticeVector> {
        self.chain()
            .into_iter()
            .map(|seg| ray_generator(seg, self.l).expect("segment fits"))
            .collect()
    }

    pub(crate) fn generator_set(&self) -> u128 {
        self.chain().iter().fold(0, |m, seg| m | 1 << seg.bit())
    }
}

impl Serialize for MaxCone {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.chain().serialize(serializer)
    }
}

pub fn enumerate_max_cones(l: usize) -> Result<Vec<MaxCone>> {
    if l == 0 || l > MAX_L {
        return Err(Error::input(format!("l = {l} outside 1..={MAX_L}")));
    }
    (0..1u64 << (l - 1)).map(|c| MaxCone::new(l, c)).collect()
}

/// Fraction-free elimination; exact for the small integer matrices here.
pub(crate) fn bareiss_det(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// `|det| / [ℤ^l : N]` of the generator matrix.
pub fn cone_multiplicity(cone: &MaxCone) -> Result<u64> {
    let rows = cone
        .generators()
        .into_iter()
        .map(|v| v.0.into_iter().map(i128::from).collect())
        .collect();
    let det = bareiss_det(rows).abs();
    if det == 0 {
        return Err(Error::structural(format!("cone {:?} is degenerate", cone.chain())));
    }
    if det % LATTICE_INDEX != 0 {
        return Err(Error::structural("generator determinant not a multiple of the lattice index"));
    }
    Ok((det / LATTICE_INDEX) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(s: usize, t: usize) -> Segment {
        Segment { s, t }
    }

    #[test]
    fn generators() {
        assert_eq!(ray_generator(seg(1, 1), 2).unwrap().0, vec![2, 0]);
        assert_eq!(ray_generator(seg(1, 2), 2).unwrap().0, vec![1, 1]);
        assert_eq!(ray_generator(seg(2, 3), 4).unwrap().0, vec![0, 1, 1, 0]);
        assert!(Segment::new(2, 1, 3).is_err());
        assert!(Segment::new(1, 4, 3).is_err());
    }

    #[test]
    fn nestedness() {
        assert!(is_nested(&[seg(1, 3), seg(2, 3), seg(2, 2)]));
        assert!(!is_nested(&[seg(1, 2), seg(2, 3)]));
        assert!(is_nested(&[]));
    }

    #[test]
    fn three_cones_in_order() {
        let cones = enumerate_max_cones(3).unwrap();
        let chains: Vec<Vec<Segment>> = cones.iter().map(MaxCone::chain).collect();
        assert_eq!(
            chains,
            vec![
                vec![seg(1, 3), seg(1, 2), seg(1, 1)],
                vec![seg(1, 3), seg(1, 2), seg(2, 2)],
                vec![seg(1, 3), seg(2, 3), seg(2, 2)],
                vec![seg(1, 3), seg(2, 3), seg(3, 3)],
            ]
        );
        assert_eq!(enumerate_max_cones(1).unwrap()[0].chain(), vec![seg(1, 1)]);
    }

    #[test]
    fn lattice_has_index_two() {
        // Basis of N: 2·u₁ and u₁ + uᵢ for i ≥ 2.
        for l in 1..=6 {
            let rows = (0..l)
                .map(|i| {
                    let mut r = vec![0i128; l];
                    r[0] += 1;
                    r[i] += 1;
                    r
                })
                .collect();
            assert_eq!(bareiss_det(rows), LATTICE_INDEX);
        }
    }

    #[test]
    fn small_multiplicities() {
        let c = MaxCone::new(2, 0).unwrap();
        assert_eq!(c.chain(), vec![seg(1, 2), seg(1, 1)]);
        assert_eq!(cone_multiplicity(&c).unwrap(), 1);
        assert_eq!(cone_multiplicity(&MaxCone::new(3, 0).unwrap()).unwrap(), 1);
    }

    #[test]
    fn segment_bits_are_distinct() {
        let mut seen = std::collections::HashSet::new();
        for t in 1..=MAX_L {
            for s in 1..=t {
                let b = seg(s, t).bit();
                assert!(b < 128 && seen.insert(b));
            }
        }
    }
}
