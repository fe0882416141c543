//! Lattice points of weighted degree slices.
//!
//! A monomial `x0^n0 x1^n1 x2^n2 x3^n3` is stored as its exponent vector. The
//! slice of weighted degree `d` is the monomial basis of `H^0(O(d))`; for
//! `d = s` it indexes the coordinates `y_0, ..., y_{g+1}` of the
//! anticanonical embedding.
//!
//! Slices are listed in the canonical monomial order: lexicographic on
//! exponents with `x0 > x1 > x2 > x3`, largest first. All downstream indices
//! (generators, syzygy terms, section presets) refer to this order.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::wps::WeightedSpace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LatticePoint(pub [u32; 4]);

impl LatticePoint {
    pub fn weighted_degree(&self, weights: &[u32; 4]) -> u64 {
        self.0.iter().zip(weights).map(|(&n, &a)| n as u64 * a as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0; 4]
    }

    pub fn add(&self, other: &LatticePoint) -> LatticePoint {
        LatticePoint(std::array::from_fn(|i| self.0[i] + other.0[i]))
    }

    pub fn checked_sub(&self, other: &LatticePoint) -> Option<LatticePoint> {
        let mut out = [0; 4];
        for (o, (a, b)) in out.iter_mut().zip(self.0.iter().zip(other.0)) {
            *o = a.checked_sub(b)?;
        }
        Some(LatticePoint(out))
    }

    /// `self + shift`, if it stays in the positive orthant.
    pub fn offset(&self, shift: &Shift) -> Option<LatticePoint> {
        let mut out = [0; 4];
        for (o, (a, b)) in out.iter_mut().zip(self.0.iter().zip(shift.0)) {
            let v = *a as i64 + b;
            if v < 0 {
                return None;
            }
            *o = v as u32;
        }
        Some(LatticePoint(out))
    }

    pub fn diff(&self, other: &LatticePoint) -> Shift {
        Shift(std::array::from_fn(|i| self.0[i] as i64 - other.0[i] as i64))
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a},{b},{c},{d})")
    }
}

/// A difference of lattice points; indexes torus-graded pieces of
/// homomorphism spaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Shift(pub [i64; 4]);

impl Shift {
    pub fn weighted_degree(&self, weights: &[u32; 4]) -> i64 {
        self.0.iter().zip(weights).map(|(&n, &a)| n * a as i64).sum()
    }

    pub fn neg(&self) -> Shift {
        Shift(self.0.map(|x| -x))
    }
}

impl fmt::Display for Shift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a},{b},{c},{d})")
    }
}

/// Monomial basis of a weighted degree, in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSlice {
    degree: u32,
    points: Vec<LatticePoint>,
    index: HashMap<LatticePoint, usize>,
}

impl DegreeSlice {
    pub fn from_points(degree: u32, mut points: Vec<LatticePoint>) -> Self {
        points.sort_unstable_by(|a, b| b.cmp(a));
        points.dedup();
        let index = points.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        Self { degree, points, index }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, p: &LatticePoint) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.index.contains_key(p)
    }
}

impl std::ops::Index<usize> for DegreeSlice {
    type Output = LatticePoint;

    fn index(&self, i: usize) -> &LatticePoint {
        &self.points[i]
    }
}

/// Number of non-negative solutions of `sum a_i n_i = d`.
pub fn count_points(space: &WeightedSpace, d: i64) -> u64 {
    if d < 0 {
        return 0;
    }
    let d = d as usize;
    let mut ways = vec![0u128; d + 1];
    ways[0] = 1;
    for &a in &space.weights() {
        let a = a as usize;
        for t in a..=d {
            ways[t] = ways[t].checked_add(ways[t - a]).expect("lattice point count overflows u128");
        }
    }
    u64::try_from(ways[d]).expect("lattice point count exceeds u64")
}

pub fn slice(space: &WeightedSpace, d: u32) -> DegreeSlice {
    let [a0, a1, a2, a3] = space.weights();
    let mut points = Vec::new();
    for n0 in 0..=d / a0 {
        let r0 = d - a0 * n0;
        for n1 in 0..=r0 / a1 {
            let r1 = r0 - a1 * n1;
            for n2 in 0..=r1 / a2 {
                let r2 = r1 - a2 * n2;
                if r2.is_multiple_of(a3) {
                    points.push(LatticePoint([n0, n1, n2, r2 / a3]));
                }
            }
        }
    }
    DegreeSlice::from_points(d, points)
}

/// Result of the decomposability check at one multiple `d * s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalityCheck {
    pub degree: u32,
    pub holds: bool,
    /// A point of weighted degree `d * s` that is not a sum of `d` points of
    /// degree `s`.
    pub witness: Option<LatticePoint>,
}

/// Checks, for `2 <= d <= d_max`, that every lattice point of weighted degree
/// `d * s` is a sum of `d` points of the degree-`s` slice.
pub fn verify_projective_normality(space: &WeightedSpace, d_max: u32) -> Vec<NormalityCheck> {
    let s = space.sum();
    let base = slice(space, s);
    let mut memo: HashMap<LatticePoint, bool> = HashMap::new();
    for u in base.points() {
        memo.insert(*u, true);
    }
    memo.insert(LatticePoint::default(), true);

    fn decomposable(p: LatticePoint, base: &DegreeSlice, memo: &mut HashMap<LatticePoint, bool>) -> bool {
        if let Some(&known) = memo.get(&p) {
            return known;
        }
        let ok = base
            .points()
            .iter()
            .any(|u| p.checked_sub(u).is_some_and(|rest| decomposable(rest, base, memo)));
        memo.insert(p, ok);
        ok
    }

    (2..=d_max)
        .map(|d| {
            let witness = slice(space, d * s)
                .points()
                .iter()
                .copied()
                .find(|p| !decomposable(*p, &base, &mut memo));
            NormalityCheck { degree: d, holds: witness.is_none(), witness }
        })
        .collect()
}

/// All distinct sums of `d` points of the degree-`s` slice.
pub fn sumset(space: &WeightedSpace, d: u32) -> HashSet<LatticePoint> {
    let base = slice(space, space.sum());
    let mut current: HashSet<LatticePoint> = HashSet::from([LatticePoint::default()]);
    for _ in 0..d {
        current = current.iter().flat_map(|p| base.points().iter().map(move |u| p.add(u))).collect();
    }
    current
}

/// The `h`-vector `(h0, h1, h2, h3)` of the anticanonical coordinate ring:
/// fourth finite differences of `d -> count_points(d * s)`.
pub fn h_vector(space: &WeightedSpace) -> [i64; 4] {
    let s = space.sum() as i64;
    const BINOM4: [i64; 5] = [1, 4, 6, 4, 1];
    std::array::from_fn(|k| {
        (0..=k)
            .map(|j| {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * BINOM4[j] * count_points(space, (k - j) as i64 * s) as i64
            })
            .sum()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ws(w: [u32; 4]) -> WeightedSpace {
        WeightedSpace::new(w).unwrap()
    }

    /// Brute-force count, independent of the DP.
    fn brute(space: &WeightedSpace, d: u32) -> u64 {
        let w = space.weights();
        let mut n = 0;
        for n0 in 0..=d {
            for n1 in 0..=d {
                for n2 in 0..=d {
                    for n3 in 0..=d {
                        if LatticePoint([n0, n1, n2, n3]).weighted_degree(&w) == d as u64 {
                            n += 1;
                        }
                    }
                }
            }
        }
        n
    }

    #[test]
    fn count_examples() {
        // frozen from `brute`
        assert_eq!(brute(&ws([1, 1, 1, 3]), 6), 39);
        assert_eq!(brute(&ws([2, 3, 3, 4]), 24), 65);
        assert_eq!(count_points(&ws([1, 1, 1, 3]), 6), 39);
        assert_eq!(count_points(&ws([2, 3, 3, 4]), 24), 65);
        assert_eq!(count_points(&ws([2, 3, 10, 15]), 0), 1);
        assert_eq!(count_points(&ws([2, 3, 10, 15]), -3), 0);
    }

    #[test]
    fn slice_examples() {
        let s = slice(&ws([1, 1, 1, 3]), 3);
        assert_eq!(s.len(), 11);
        assert!(s.contains(&LatticePoint([0, 0, 0, 1])));
        assert_eq!(slice(&ws([1, 1, 1, 1]), 1).len(), 4);
        assert_eq!(slice(&ws([2, 3, 3, 4]), 12).len(), 15);
    }

    #[test]
    fn slice_order_is_descending_lex() {
        let s = slice(&ws([1, 1, 1, 1]), 1);
        let expected = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];
        assert_eq!(s.points(), expected.map(LatticePoint).as_slice());
        for (i, p) in s.points().iter().enumerate() {
            assert_eq!(s.index_of(p), Some(i));
        }
    }

    #[test]
    fn normality_small() {
        let checks = verify_projective_normality(&ws([2, 3, 3, 4]), 4);
        assert_eq!(checks.len(), 3);
        assert!(checks.iter().all(|c| c.holds));
        assert!(verify_projective_normality(&ws([1, 1, 1, 1]), 1).is_empty());
    }

    #[test]
    fn normality_fails_off_the_anticanonical_degree() {
        // (1,1,2,3) is not Gorenstein: x2^7 has degree 14 but no power of x2
        // has degree 7.
        let space = ws([1, 1, 2, 3]);
        let checks = verify_projective_normality(&space, 2);
        assert!(!checks[0].holds);
        let w = checks[0].witness.unwrap();
        assert_eq!(space.degree(&w), 2 * space.sum() as u64);
        assert!(!sumset(&space, 2).contains(&w));
    }

    #[test]
    fn h_vector_examples() {
        assert_eq!(h_vector(&ws([2, 3, 3, 4])), [1, 11, 11, 1]);
        assert_eq!(h_vector(&ws([1, 1, 1, 1])), [1, 31, 31, 1]);
    }
}
