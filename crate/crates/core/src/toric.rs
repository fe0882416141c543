//! Quadric binomial generators of the anticanonical ideal.
//!
//! The ideal `I` of the anticanonical embedding is the kernel of
//! `k[y_0..y_{g+1}] -> k[x]`, `y_i -> x^{u_i}`. It is graded by the exponent
//! lattice: the degree-2 part at a multidegree `D` is spanned by differences
//! of the monomials `y_a y_b` with `u_a + u_b = D`. A fiber with `r`
//! decompositions contributes `r - 1` independent binomials, one per edge of a
//! spanning tree.

use std::collections::{BTreeMap, HashMap};
use std::ops::Range;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactla::{self, FieldSpec, SparseMatrix};
use crate::lattice::{self, DegreeSlice, LatticePoint};
use crate::wps::{self, WeightedSpace};

/// `y_lhs.0 y_lhs.1 - y_rhs.0 y_rhs.1`, with `u` summing to `multidegree` on
/// both sides. Pairs are sorted slice indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BinomialGenerator {
    pub lhs: (usize, usize),
    pub rhs: (usize, usize),
    pub multidegree: LatticePoint,
}

impl BinomialGenerator {
    /// Multiplicity of `y_j` in the leading and trailing monomial.
    pub fn multiplicities(&self, j: usize) -> (i64, i64) {
        let count = |(a, b): (usize, usize)| (a == j) as i64 + (b == j) as i64;
        (count(self.lhs), count(self.rhs))
    }
}

/// Which spanning tree of each fiber supplies the generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SpanningTree {
    /// Every decomposition joined to the smallest one.
    #[default]
    Star,
    /// Consecutive decompositions joined in order.
    Path,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricIdeal {
    space: WeightedSpace,
    slice: DegreeSlice,
    generators: Vec<BinomialGenerator>,
    /// Decompositions `(a, b)`, `a <= b`, of every degree-`2s` point hit by
    /// the slice, sorted.
    fibers: BTreeMap<LatticePoint, Vec<(usize, usize)>>,
    /// Generator index range per multidegree.
    ranges: BTreeMap<LatticePoint, Range<usize>>,
}

impl ToricIdeal {
    pub fn space(&self) -> &WeightedSpace {
        &self.space
    }

    pub fn slice(&self) -> &DegreeSlice {
        &self.slice
    }

    pub fn generators(&self) -> &[BinomialGenerator] {
        &self.generators
    }

    pub fn fibers(&self) -> &BTreeMap<LatticePoint, Vec<(usize, usize)>> {
        &self.fibers
    }

    /// Generator indices whose multidegree is `c`.
    pub fn generators_at(&self, c: &LatticePoint) -> Range<usize> {
        self.ranges.get(c).cloned().unwrap_or(0..0)
    }

    /// Multidegrees carrying at least one generator, with their index ranges.
    pub fn generator_multidegrees(&self) -> impl Iterator<Item = (&LatticePoint, &Range<usize>)> {
        self.ranges.iter()
    }

    /// Number of coordinates `g + 2`.
    pub fn n_vars(&self) -> usize {
        self.slice.len()
    }

    /// Reassembles an ideal from a slice and an explicit generator list (e.g.
    /// read from the cache). Generators must be grouped by multidegree.
    pub fn from_parts(space: WeightedSpace, slice: DegreeSlice, generators: Vec<BinomialGenerator>) -> Result<Self> {
        let fibers = fibers_of(&slice);
        let mut ranges: BTreeMap<LatticePoint, Range<usize>> = BTreeMap::new();
        for (k, gen) in generators.iter().enumerate() {
            let sum_l = slice[gen.lhs.0].add(&slice[gen.lhs.1]);
            let sum_r = slice[gen.rhs.0].add(&slice[gen.rhs.1]);
            if sum_l != gen.multidegree || sum_r != gen.multidegree || gen.lhs == gen.rhs {
                return Err(Error::Inconsistent(format!("generator {k} is not a homogeneous binomial")));
            }
            let r = ranges.entry(gen.multidegree).or_insert(k..k);
            if r.end != k {
                return Err(Error::Inconsistent("generators are not grouped by multidegree".into()));
            }
            r.end = k + 1;
        }
        Ok(Self { space, slice, generators, fibers, ranges })
    }
}

fn fibers_of(slice: &DegreeSlice) -> BTreeMap<LatticePoint, Vec<(usize, usize)>> {
    let n = slice.len();
    let mut fibers: BTreeMap<LatticePoint, Vec<(usize, usize)>> = BTreeMap::new();
    for a in 0..n {
        for b in a..n {
            fibers.entry(slice[a].add(&slice[b])).or_default().push((a, b));
        }
    }
    fibers
}

fn require_gorenstein(space: &WeightedSpace) -> Result<()> {
    if space.is_gorenstein() {
        Ok(())
    } else {
        Err(Error::NotGorenstein(space.weights()))
    }
}

pub fn quadric_generators(space: &WeightedSpace) -> Result<ToricIdeal> {
    quadric_generators_with(space, SpanningTree::Star)
}

/// Builds the ideal with generators from the chosen spanning tree of every
/// fiber. Multidegrees are visited in canonical (descending) order.
pub fn quadric_generators_with(space: &WeightedSpace, tree: SpanningTree) -> Result<ToricIdeal> {
    require_gorenstein(space)?;
    let slice = lattice::slice(space, space.sum());
    let fibers = fibers_of(&slice);
    let mut generators = Vec::new();
    let mut ranges = BTreeMap::new();
    for (multidegree, decomps) in fibers.iter().rev() {
        if decomps.len() < 2 {
            continue;
        }
        let start = generators.len();
        for (i, &rhs) in decomps.iter().enumerate().skip(1) {
            let lhs = match tree {
                SpanningTree::Star => decomps[0],
                SpanningTree::Path => decomps[i - 1],
            };
            generators.push(BinomialGenerator { lhs, rhs, multidegree: *multidegree });
        }
        ranges.insert(*multidegree, start..generators.len());
    }
    Ok(ToricIdeal { space: *space, slice, generators, fibers, ranges })
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128) as u64
}

/// Number of quadric generators, `C(g+3, 2) - N(2s)`, cross-checked against
/// `C(g-2, 2)` and the explicit generator count.
pub fn beta1(space: &WeightedSpace) -> Result<u64> {
    let ideal = quadric_generators(space)?;
    beta1_of(&ideal)
}

pub fn beta1_of(ideal: &ToricIdeal) -> Result<u64> {
    let space = ideal.space();
    let g = wps::invariants(space).g.ok_or(Error::NotGorenstein(space.weights()))?;
    let n2 = lattice::count_points(space, 2 * space.sum() as i64);
    let by_count = binomial(g + 3, 2) - n2;
    let by_genus = binomial(g - 2, 2);
    let explicit = ideal.generators().len() as u64;
    if by_count != by_genus || by_count != explicit {
        return Err(Error::Inconsistent(format!(
            "beta1 mismatch for {space}: C(g+3,2)-N(2s) = {by_count}, C(g-2,2) = {by_genus}, generators = {explicit}"
        )));
    }
    Ok(by_count)
}

/// The degree-3 piece at one multidegree `D` of weighted degree `3s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Degree3Block {
    pub multidegree: LatticePoint,
    /// Pairs `(i, k)` with `u_i + c_k = D`, sorted.
    pub pairs: Vec<(usize, usize)>,
    /// Sorted index triples `(a, b, c)` with `u_a + u_b + u_c = D`.
    pub triples: Vec<[usize; 3]>,
}

impl Degree3Block {
    /// Matrix of `y_i q_k` in the monomial basis: rows are triples, columns
    /// are pairs.
    pub fn multiplication_matrix(&self, ideal: &ToricIdeal) -> SparseMatrix {
        let index: HashMap<[usize; 3], usize> = self.triples.iter().enumerate().map(|(r, t)| (*t, r)).collect();
        let mut triplets = Vec::with_capacity(2 * self.pairs.len());
        for (col, &(i, k)) in self.pairs.iter().enumerate() {
            let gen = &ideal.generators()[k];
            triplets.push((index[&sorted3(i, gen.lhs)], col, 1));
            triplets.push((index[&sorted3(i, gen.rhs)], col, -1));
        }
        SparseMatrix::from_triplets(self.triples.len(), self.pairs.len(), triplets)
    }
}

pub(crate) fn sorted3(i: usize, (a, b): (usize, usize)) -> [usize; 3] {
    let mut t = [i, a, b];
    t.sort_unstable();
    t
}

/// All degree-`3s` multidegrees carrying at least one triple, in ascending
/// multidegree order.
pub fn degree3_blocks(ideal: &ToricIdeal) -> Vec<Degree3Block> {
    let slice = ideal.slice();
    let n = slice.len();
    let mut blocks: BTreeMap<LatticePoint, Degree3Block> = BTreeMap::new();
    for a in 0..n {
        for b in a..n {
            let ab = slice[a].add(&slice[b]);
            for c in b..n {
                let d = ab.add(&slice[c]);
                blocks
                    .entry(d)
                    .or_insert_with(|| Degree3Block { multidegree: d, pairs: Vec::new(), triples: Vec::new() })
                    .triples
                    .push([a, b, c]);
            }
        }
    }
    for i in 0..n {
        for (c, range) in ideal.generator_multidegrees() {
            let d = slice[i].add(c);
            let block = blocks.get_mut(&d).expect("u_i + c_k is a sum of three slice points");
            block.pairs.extend(range.clone().map(|k| (i, k)));
        }
    }
    for block in blocks.values_mut() {
        block.pairs.sort_unstable();
    }
    blocks.into_values().collect()
}

/// Outcome of the fiber-graph test at weighted degree `3s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Degree3Report {
    pub multidegrees: usize,
    pub connected: bool,
    /// First multidegree whose fiber graph is disconnected.
    pub witness: Option<LatticePoint>,
}

/// Checks that `I_3 = R_1 I_2`: at every degree-`3s` multidegree the graph on
/// index triples, with edges for quadric moves, must be connected.
///
/// Two triples summing to the same `D` and sharing an index `r` differ by a
/// move on the remaining pair (both pairs sum to `D - u_r`), and a move always
/// keeps one index. So the fiber graph is connected iff the triples are
/// connected through shared indices, which a union-find over slice indices
/// decides.
pub fn check_degree3_generation(ideal: &ToricIdeal) -> Degree3Report {
    let blocks = degree3_blocks(ideal);
    let n = ideal.n_vars();
    let verdicts: Vec<bool> = blocks.par_iter().map(|b| triples_connected(&b.triples, n)).collect();
    let witness = blocks.iter().zip(&verdicts).find(|(_, &ok)| !ok).map(|(b, _)| b.multidegree);
    Degree3Report { multidegrees: blocks.len(), connected: witness.is_none(), witness }
}

pub(crate) fn triples_connected(triples: &[[usize; 3]], n: usize) -> bool {
    if triples.len() <= 1 {
        return true;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for t in triples {
        for &other in &t[1..] {
            let (a, b) = (find(&mut parent, t[0]), find(&mut parent, other));
            parent[a] = b;
        }
    }
    let root = find(&mut parent, triples[0][0]);
    triples.iter().all(|t| find(&mut parent, t[0]) == root)
}

/// `dim R_1 I_2`, computed as the sum of ranks of the multiplication maps,
/// under two primes. Equals `C(g+4, 3) - N(3s)` exactly when the ideal has no
/// cubic minimal generators.
pub fn degree3_span_dimension(ideal: &ToricIdeal, f1: &FieldSpec, f2: &FieldSpec) -> Result<u64> {
    let ranks: Result<Vec<usize>> = degree3_blocks(ideal)
        .par_iter()
        .map(|b| exactla::rank_two_primes(&b.multiplication_matrix(ideal), f1, f2))
        .collect();
    Ok(ranks?.into_iter().sum::<usize>() as u64)
}

/// Rank of the generators in the monomial basis of degree 2, i.e. the
/// dimension of their span.
pub fn degree2_span_dimension(ideal: &ToricIdeal, field: &FieldSpec) -> Result<usize> {
    let n = ideal.n_vars();
    let col = |(a, b): (usize, usize)| a * n + b;
    let triplets = ideal
        .generators()
        .iter()
        .enumerate()
        .flat_map(|(k, g)| [(k, col(g.lhs), 1), (k, col(g.rhs), -1)])
        .collect();
    let m = SparseMatrix::from_triplets(ideal.generators().len(), n * n, triplets);
    exactla::rank_mod_p(&m, field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::DEFAULT_PRIMES;

    fn ideal(w: [u32; 4]) -> ToricIdeal {
        quadric_generators(&WeightedSpace::new(w).unwrap()).unwrap()
    }

    #[test]
    fn generator_counts() {
        assert_eq!(ideal([2, 3, 3, 4]).generators().len(), 55);
        assert_eq!(ideal([1, 1, 4, 6]).generators().len(), 595);
    }

    #[test]
    fn beta1_examples() {
        let b = |w| beta1(&WeightedSpace::new(w).unwrap()).unwrap();
        assert_eq!(b([1, 2, 2, 5]), 276);
        assert_eq!(b([2, 3, 10, 15]), 91);
        assert_eq!(b([1, 1, 1, 3]), 595);
    }

    #[test]
    fn rejects_non_gorenstein() {
        let space = WeightedSpace::new([1, 1, 1, 2]).unwrap();
        assert_eq!(quadric_generators(&space).unwrap_err(), Error::NotGorenstein([1, 1, 1, 2]));
    }

    #[test]
    fn singleton_fibers_contribute_nothing() {
        let id = ideal([2, 3, 3, 4]);
        for (d, decomps) in id.fibers() {
            assert_eq!(id.generators_at(d).len(), decomps.len().saturating_sub(1));
        }
        let singles = id.fibers().values().filter(|v| v.len() == 1).count();
        assert!(singles > 0);
    }

    #[test]
    fn generators_are_homogeneous() {
        let id = ideal([1, 3, 4, 4]);
        let s = id.slice();
        for g in id.generators() {
            assert_eq!(s[g.lhs.0].add(&s[g.lhs.1]), g.multidegree);
            assert_eq!(s[g.rhs.0].add(&s[g.rhs.1]), g.multidegree);
            assert_ne!(g.lhs, g.rhs);
        }
    }

    #[test]
    fn spanning_tree_choice_keeps_span() {
        let f = FieldSpec::new(DEFAULT_PRIMES.0).unwrap();
        let space = WeightedSpace::new([2, 3, 3, 4]).unwrap();
        for tree in [SpanningTree::Star, SpanningTree::Path] {
            let id = quadric_generators_with(&space, tree).unwrap();
            assert_eq!(degree2_span_dimension(&id, &f).unwrap(), 55);
        }
    }

    #[test]
    fn veronese_of_p3_is_generated_by_quadrics() {
        let report = check_degree3_generation(&ideal([1, 1, 1, 1]));
        assert!(report.connected);
        assert!(report.witness.is_none());
    }

    #[test]
    fn single_triple_is_connected() {
        assert!(triples_connected(&[[0, 1, 2]], 3));
        assert!(!triples_connected(&[[0, 0, 1], [2, 3, 3]], 4));
    }

    #[test]
    fn connectivity_agrees_with_rank() {
        let (f1, f2) = (FieldSpec::new(DEFAULT_PRIMES.0).unwrap(), FieldSpec::new(DEFAULT_PRIMES.1).unwrap());
        let id = ideal([2, 3, 3, 4]);
        assert!(check_degree3_generation(&id).connected);
        let space = id.space();
        let g = 13;
        let expected = binomial(g + 4, 3) - lattice::count_points(space, 3 * 12);
        assert_eq!(degree3_span_dimension(&id, &f1, &f2).unwrap(), expected);
    }
}
