//! Weighted projective 3-spaces: validation, numerical invariants, the
//! Gorenstein classification and Veronese subring presentations.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lattice::{self, LatticePoint};

/// Sorted, coprime, well-formed weights `a0 <= a1 <= a2 <= a3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightedSpace {
    weights: [u32; 4],
}

impl WeightedSpace {
    /// Validates and canonicalizes a weight tuple (permutations are identified).
    pub fn new(weights: [u32; 4]) -> Result<Self> {
        let mut w = weights;
        w.sort_unstable();
        let invalid = |reason: &str| Error::InvalidWeights { weights: weights.to_vec(), reason: reason.into() };
        if w[0] == 0 {
            return Err(invalid("weights must be positive"));
        }
        if w.iter().fold(0, |acc, &a| gcd(acc, a as u64)) != 1 {
            return Err(invalid("weights are not coprime"));
        }
        for skip in 0..4 {
            let g = (0..4).filter(|&i| i != skip).fold(0, |acc, i| gcd(acc, w[i] as u64));
            if g != 1 {
                return Err(invalid("not well formed: some three weights share a common factor"));
            }
        }
        Ok(Self { weights: w })
    }

    pub fn weights(&self) -> [u32; 4] {
        self.weights
    }

    /// Sum of the weights; `O(-s)` is the dualizing sheaf.
    pub fn sum(&self) -> u32 {
        self.weights.iter().sum()
    }

    pub fn lcm(&self) -> u64 {
        self.weights.iter().fold(1, |acc, &a| lcm(acc, a as u64))
    }

    pub fn is_gorenstein(&self) -> bool {
        (self.sum() as u64).is_multiple_of(self.lcm())
    }

    /// `lcm` over pairs `i != j` of `gcd(a_i, a_j)`.
    pub fn pairwise_gcd_lcm(&self) -> u64 {
        let w = self.weights;
        let mut e = 1;
        for i in 0..4 {
            for j in i + 1..4 {
                e = lcm(e, gcd(w[i] as u64, w[j] as u64));
            }
        }
        e
    }

    pub fn degree(&self, p: &LatticePoint) -> u64 {
        p.weighted_degree(&self.weights)
    }
}

impl fmt::Display for WeightedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.weights;
        write!(f, "({a},{b},{c},{d})")
    }
}

impl FromStr for WeightedSpace {
    type Err = Error;

    /// Parses `"2,3,3,4"`, `"(2, 3, 3, 4)"` or `"2 3 3 4"`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s
            .trim_matches(|c: char| c == '(' || c == ')' || c.is_whitespace())
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .collect();
        let bad = || Error::InvalidWeights { weights: vec![], reason: format!("cannot parse {s:?} as four weights") };
        if parts.len() != 4 {
            return Err(bad());
        }
        let mut w = [0u32; 4];
        for (slot, p) in w.iter_mut().zip(parts) {
            *slot = p.parse().map_err(|_| bad())?;
        }
        WeightedSpace::new(w)
    }
}

/// The anticanonical degree `-K^3 = s^3 / (a0 a1 a2 a3)` as a reduced fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rational {
    pub num: u64,
    pub den: u64,
}

impl Rational {
    fn new(num: u64, den: u64) -> Self {
        let g = gcd(num, den);
        Self { num: num / g, den: den / g }
    }

    pub fn as_integer(&self) -> Option<u64> {
        (self.den == 1).then_some(self.num)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WpsInvariants {
    pub m: u64,
    pub s: u64,
    pub gorenstein: bool,
    pub anti_k_cubed: Rational,
    /// Genus, `2g - 2 = -K^3`; only for Gorenstein spaces.
    pub g: Option<u64>,
    /// `lcm` of pairwise gcds of the weights.
    pub e: u64,
    /// Divisibility of the anticanonical class on a general anticanonical
    /// surface, `s / e`; only for Gorenstein spaces.
    pub i_s: Option<u64>,
    /// Genus of the primitive polarization, `1 + (g - 1) / i_S^2`.
    pub g1: Option<u64>,
}

pub fn invariants(space: &WeightedSpace) -> WpsInvariants {
    let s = space.sum() as u64;
    let m = space.lcm();
    let gorenstein = s.is_multiple_of(m);
    let product: u64 = space.weights().iter().map(|&a| a as u64).product();
    let anti_k_cubed = Rational::new(s * s * s, product);
    let e = space.pairwise_gcd_lcm();
    let (g, i_s, g1) = if gorenstein {
        let k3 = anti_k_cubed.as_integer().expect("-K^3 is an integer on a Gorenstein space");
        debug_assert!(k3.is_multiple_of(2));
        let g = k3 / 2 + 1;
        debug_assert!(s.is_multiple_of(e));
        let i_s = s / e;
        debug_assert!((g - 1).is_multiple_of(i_s * i_s));
        (Some(g), Some(i_s), Some(1 + (g - 1) / (i_s * i_s)))
    } else {
        (None, None, None)
    };
    WpsInvariants { m, s, gorenstein, anti_k_cubed, g, e, i_s, g1 }
}

/// Validates `weights` and computes invariants in one step.
pub fn invariants_of(weights: [u32; 4]) -> Result<WpsInvariants> {
    WeightedSpace::new(weights).map(|w| invariants(&w))
}

/// All well-formed Gorenstein weight systems with `a3 <= max_weight`, in
/// lexicographic order.
pub fn enumerate_gorenstein(max_weight: u32) -> Vec<WeightedSpace> {
    let mut out = Vec::new();
    for a0 in 1..=max_weight {
        for a1 in a0..=max_weight {
            for a2 in a1..=max_weight {
                for a3 in a2..=max_weight {
                    let s = (a0 + a1 + a2 + a3) as u64;
                    let m = lcm(lcm(a0 as u64, a1 as u64), lcm(a2 as u64, a3 as u64));
                    if !s.is_multiple_of(m) {
                        continue;
                    }
                    if let Ok(space) = WeightedSpace::new([a0, a1, a2, a3]) {
                        out.push(space);
                    }
                }
            }
        }
    }
    out
}

/// Whether `O(k)` restricts to a line bundle on a general anticanonical
/// surface: every pairwise `gcd(a_i, a_j)` must divide `k`.
pub fn restriction_invertible(space: &WeightedSpace, k: i64) -> bool {
    k.rem_euclid(space.pairwise_gcd_lcm() as i64) == 0
}

/// Minimal presentation data of the Veronese subring `R^(d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VeronesePresentation {
    pub d: u32,
    /// Degrees in `R^(d)` of the minimal algebra generators, ascending.
    pub generator_degrees: Vec<u32>,
    /// The generating monomials, aligned with `generator_degrees`.
    pub generators: Vec<LatticePoint>,
    /// Degrees of minimal relations found up to `cutoff`, ascending.
    pub relation_degrees: Vec<u32>,
    /// `dim J_k` for `k = 1..=cutoff`, where `J` is the relation ideal:
    /// monomials of degree `k` in the generators minus `dim R_{kd}`.
    pub relation_space_dims: Vec<u64>,
    pub cutoff: u32,
}

/// Computes generators and relations of `R^(d) = sum_n R_{nd}`.
///
/// Generators are the monomials of degree divisible by `d` that are not
/// products of two such monomials. Relations are read off the toric fibers:
/// at a multidegree of `R^(d)`-degree `k`, two factorizations sharing a
/// generator are already related by relations of lower degree, so the number
/// of new minimal relations there is (connected components) - 1.
pub fn veronese_presentation(space: &WeightedSpace, d: u32, cutoff: u32) -> Result<VeronesePresentation> {
    assert!(d >= 1 && cutoff >= 1);
    let w = space.weights();

    // A non-pure-power generator has n_i < d / gcd(a_i, d) in every coordinate.
    let orders: Vec<u32> = w.iter().map(|&a| d / gcd(a as u64, d as u64) as u32).collect();
    let pure = w.iter().zip(&orders).map(|(&a, &o)| a * o).max().unwrap();
    let mixed: u32 = w.iter().zip(&orders).map(|(&a, &o)| a * (o - 1)).sum();
    let needed = pure.max(mixed);
    if needed > cutoff * d {
        return Err(Error::IncompletePresentation { needed, covered: cutoff * d });
    }

    let mut generators: Vec<LatticePoint> = Vec::new();
    let mut generator_degrees = Vec::new();
    for k in 1..=cutoff {
        let slice = lattice::slice(space, k * d);
        for p in slice.points() {
            let decomposable = generators.iter().any(|g| p.checked_sub(g).is_some());
            if !decomposable {
                generators.push(*p);
                generator_degrees.push(k);
            }
        }
    }

    let mut relation_degrees = Vec::new();
    let mut relation_space_dims = Vec::new();
    for k in 1..=cutoff {
        let slice = lattice::slice(space, k * d);
        let mut monomials = 0u64;
        for target in slice.points() {
            let fiber = factorizations(target, &generators);
            monomials += fiber.len() as u64;
            let components = count_components(&fiber, generators.len());
            relation_degrees.extend(std::iter::repeat_n(k, components.saturating_sub(1)));
        }
        relation_space_dims.push(monomials - slice.len() as u64);
    }

    Ok(VeronesePresentation {
        d,
        generator_degrees,
        generators,
        relation_degrees,
        relation_space_dims,
        cutoff,
    })
}

/// All multisets of generators (as exponent vectors over the generator list)
/// summing to `target`.
fn factorizations(target: &LatticePoint, generators: &[LatticePoint]) -> Vec<Vec<u32>> {
    fn rec(rest: LatticePoint, start: usize, gens: &[LatticePoint], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest.is_zero() {
            out.push(cur.clone());
            return;
        }
        for i in start..gens.len() {
            if let Some(next) = rest.checked_sub(&gens[i]) {
                cur[i] += 1;
                rec(next, i, gens, cur, out);
                cur[i] -= 1;
            }
        }
    }
    let mut out = Vec::new();
    let mut cur = vec![0; generators.len()];
    rec(*target, 0, generators, &mut cur, &mut out);
    out
}

/// Components of the graph joining factorizations that share a generator.
fn count_components(fiber: &[Vec<u32>], n_generators: usize) -> usize {
    if fiber.is_empty() {
        return 0;
    }
    let mut parent: Vec<usize> = (0..fiber.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut owner: HashMap<usize, usize> = HashMap::new();
    for (idx, f) in fiber.iter().enumerate() {
        for g in (0..n_generators).filter(|&g| f[g] > 0) {
            if let Some(&other) = owner.get(&g) {
                let (a, b) = (find(&mut parent, idx), find(&mut parent, other));
                parent[a] = b;
            } else {
                owner.insert(g, idx);
            }
        }
    }
    (0..fiber.len()).filter(|&i| find(&mut parent, i) == i).count()
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ws(w: [u32; 4]) -> WeightedSpace {
        WeightedSpace::new(w).unwrap()
    }

    #[test]
    fn invariants_of_table_rows() {
        let inv = invariants(&ws([1, 1, 4, 6]));
        assert_eq!((inv.m, inv.s, inv.gorenstein), (12, 12, true));
        assert_eq!(inv.anti_k_cubed.as_integer(), Some(72));
        assert_eq!((inv.g, inv.i_s, inv.g1), (Some(37), Some(6), Some(2)));

        let inv = invariants(&ws([2, 3, 3, 4]));
        assert_eq!((inv.m, inv.s, inv.gorenstein), (12, 12, true));
        assert_eq!(inv.anti_k_cubed.as_integer(), Some(24));
        assert_eq!((inv.g, inv.i_s, inv.g1), (Some(13), Some(2), Some(4)));
    }

    #[test]
    fn non_gorenstein_has_no_genus() {
        let inv = invariants(&ws([1, 1, 1, 2]));
        assert_eq!((inv.m, inv.s, inv.gorenstein), (2, 5, false));
        assert_eq!(inv.anti_k_cubed, Rational { num: 125, den: 2 });
        assert_eq!((inv.g, inv.i_s, inv.g1), (None, None, None));
    }

    #[test]
    fn validation_names_the_condition() {
        let err = WeightedSpace::new([2, 4, 6, 8]).unwrap_err();
        assert!(err.to_string().contains("not coprime"), "{err}");
        let err = WeightedSpace::new([1, 2, 4, 6]).unwrap_err();
        assert!(err.to_string().contains("well formed"), "{err}");
        let err = WeightedSpace::new([0, 1, 1, 1]).unwrap_err();
        assert!(err.to_string().contains("positive"), "{err}");
    }

    #[test]
    fn permutations_are_identified() {
        assert_eq!(ws([4, 3, 2, 3]), ws([2, 3, 3, 4]));
        assert_eq!("(6, 1, 4, 1)".parse::<WeightedSpace>().unwrap(), ws([1, 1, 4, 6]));
        assert_eq!("2 3 3 4".parse::<WeightedSpace>().unwrap(), ws([2, 3, 3, 4]));
        assert!("1,2,3".parse::<WeightedSpace>().is_err());
    }

    #[test]
    fn small_enumerations() {
        assert!(enumerate_gorenstein(0).is_empty());
        let three: Vec<_> = enumerate_gorenstein(3).iter().map(|s| s.weights()).collect();
        assert_eq!(three, vec![[1, 1, 1, 1], [1, 1, 1, 3], [1, 1, 2, 2]]);
    }

    #[test]
    fn restriction_examples() {
        let p = ws([1, 1, 4, 6]);
        assert!(!restriction_invertible(&p, 1));
        assert!(restriction_invertible(&p, 2));
        let p = ws([2, 3, 10, 15]);
        assert!(!restriction_invertible(&p, 15));
        assert!(restriction_invertible(&p, 30));
        let p = ws([1, 1, 1, 1]);
        assert!((-5..20).all(|k| restriction_invertible(&p, k)));
    }

    fn sorted(mut v: Vec<u32>) -> Vec<u32> {
        v.sort_unstable();
        v
    }

    #[test]
    fn veronese_worked_cases() {
        let v = veronese_presentation(&ws([1, 1, 4, 6]), 2, 4).unwrap();
        assert_eq!(v.generator_degrees, vec![1, 1, 1, 2, 3]);
        assert_eq!(v.relation_degrees, vec![2]);

        let v = veronese_presentation(&ws([1, 2, 2, 5]), 2, 8).unwrap();
        assert_eq!(v.generator_degrees, vec![1, 1, 1, 3, 5]);
        assert_eq!(v.relation_degrees, vec![6]);

        let v = veronese_presentation(&ws([2, 3, 3, 4]), 6, 4).unwrap();
        assert_eq!(sorted(v.generator_degrees.clone()), vec![1, 1, 1, 1, 1, 2]);
        assert_eq!(sorted(v.relation_degrees.clone()), vec![2, 3]);

        let v = veronese_presentation(&ws([1, 1, 1, 1]), 1, 3).unwrap();
        assert_eq!(v.generator_degrees, vec![1, 1, 1, 1]);
        assert!(v.relation_degrees.is_empty());
    }

    #[test]
    fn veronese_generators_respect_degrees() {
        let space = ws([1, 3, 4, 4]);
        let v = veronese_presentation(&space, 4, 6).unwrap();
        for (g, &k) in v.generators.iter().zip(&v.generator_degrees) {
            assert_eq!(space.degree(g), (k * 4) as u64);
        }
        assert_eq!(v.relation_degrees, vec![4]);
    }

    #[test]
    fn veronese_reports_incompleteness() {
        let err = veronese_presentation(&ws([1, 2, 2, 5]), 2, 3).unwrap_err();
        assert_eq!(err, Error::IncompletePresentation { needed: 10, covered: 6 });
    }
}
