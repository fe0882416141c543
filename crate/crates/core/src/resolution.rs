//! Linear first syzygies of the quadric generators and the `N_2` checks.
//!
//! Everything is graded by the exponent lattice, so the computations split
//! into independent blocks, one per multidegree. At a multidegree `D` of
//! weighted degree `3s` the linear syzygies are the kernel of
//! `(i, k) -> y_i q_k` from incident pairs to cubic monomials; at weighted
//! degree `4s` the quartic syzygies are compared with the span of
//! `y_i * (linear syzygies)`.

use std::collections::{BTreeMap, HashMap};
use std::ops::Range;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactla::{self, FieldSpec, Primes, SparseMatrix};
use crate::lattice::{self, LatticePoint};
use crate::toric::{self, binomial, Degree3Block, Degree3Report, ToricIdeal};
use crate::wps::{self, WeightedSpace};

/// `sum c * y_i e_k`, a relation `sum c * y_i q_k = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SyzygyElement {
    pub multidegree: LatticePoint,
    /// `(variable i, generator k, coefficient)`, sorted by `(i, k)`.
    pub terms: Vec<(usize, usize, i64)>,
}

impl SyzygyElement {
    /// Expands `sum c * y_i q_k` over the integers; zero for a valid syzygy.
    pub fn evaluate(&self, ideal: &ToricIdeal) -> BTreeMap<[usize; 3], i64> {
        let mut acc: BTreeMap<[usize; 3], i64> = BTreeMap::new();
        for &(i, k, c) in &self.terms {
            let gen = &ideal.generators()[k];
            *acc.entry(toric::sorted3(i, gen.lhs)).or_default() += c;
            *acc.entry(toric::sorted3(i, gen.rhs)).or_default() -= c;
        }
        acc.retain(|_, v| *v != 0);
        acc
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyzygyBasis {
    elements: Vec<SyzygyElement>,
    ranges: BTreeMap<LatticePoint, Range<usize>>,
}

impl SyzygyBasis {
    /// Groups elements by multidegree; they must already be sorted by it.
    pub fn from_elements(elements: Vec<SyzygyElement>) -> Result<Self> {
        let mut ranges: BTreeMap<LatticePoint, Range<usize>> = BTreeMap::new();
        for (idx, el) in elements.iter().enumerate() {
            let r = ranges.entry(el.multidegree).or_insert(idx..idx);
            if r.end != idx {
                return Err(Error::Inconsistent("syzygies are not grouped by multidegree".into()));
            }
            r.end = idx + 1;
        }
        Ok(Self { elements, ranges })
    }

    pub fn elements(&self) -> &[SyzygyElement] {
        &self.elements
    }

    pub fn total_count(&self) -> usize {
        self.elements.len()
    }

    pub fn at(&self, multidegree: &LatticePoint) -> &[SyzygyElement] {
        match self.ranges.get(multidegree) {
            Some(r) => &self.elements[r.clone()],
            None => &[],
        }
    }

    pub fn multidegrees(&self) -> impl Iterator<Item = &LatticePoint> {
        self.ranges.keys()
    }
}

/// Column order used when extracting local kernels. Different orders give
/// different (equally valid) bases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PairOrder {
    #[default]
    Ascending,
    Descending,
}

/// `beta_2 = beta_1 (g + 2) - (C(g+4, 3) - N(3s))`, valid once the ideal is
/// known to have no cubic generators.
pub fn beta2(space: &WeightedSpace) -> Result<u64> {
    let ideal = toric::quadric_generators(space)?;
    let report = toric::check_degree3_generation(&ideal);
    beta2_of(&ideal, &report)
}

pub fn beta2_of(ideal: &ToricIdeal, degree3: &Degree3Report) -> Result<u64> {
    if let Some(witness) = degree3.witness {
        return Err(Error::CubicGenerator(witness));
    }
    let space = ideal.space();
    let g = wps::invariants(space).g.ok_or(Error::NotGorenstein(space.weights()))?;
    let b1 = toric::beta1_of(ideal)?;
    let dim_i3 = binomial(g + 4, 3) - lattice::count_points(space, 3 * space.sum() as i64);
    Ok(b1 * (g + 2) - dim_i3)
}

pub fn linear_syzygies(ideal: &ToricIdeal, primes: &Primes) -> Result<SyzygyBasis> {
    linear_syzygies_with(ideal, primes, PairOrder::Ascending)
}

/// Kernel basis of every degree-3 multiplication block.
///
/// Kernels are extracted mod `p1` with lowest-column pivoting, lifted to
/// symmetric integer representatives and checked to be syzygies over the
/// integers; if the lift fails the block is redone mod `p2`. Block ranks are
/// compared under both primes.
pub fn linear_syzygies_with(ideal: &ToricIdeal, primes: &Primes, order: PairOrder) -> Result<SyzygyBasis> {
    if ideal.generators().is_empty() {
        return SyzygyBasis::from_elements(Vec::new());
    }
    let blocks = toric::degree3_blocks(ideal);
    let per_block: Result<Vec<Vec<SyzygyElement>>> =
        blocks.par_iter().map(|b| local_syzygies(ideal, b, primes, order)).collect();
    SyzygyBasis::from_elements(per_block?.into_iter().flatten().collect())
}

fn local_syzygies(ideal: &ToricIdeal, block: &Degree3Block, primes: &Primes, order: PairOrder) -> Result<Vec<SyzygyElement>> {
    if block.pairs.len() <= 1 {
        // A single y_i q_k is never zero.
        return Ok(Vec::new());
    }
    let mut pairs = block.pairs.clone();
    if order == PairOrder::Descending {
        pairs.reverse();
    }
    let ordered = Degree3Block { pairs, ..block.clone() };
    let m = ordered.multiplication_matrix(ideal);
    let rank = exactla::rank_two_primes(&m, &primes.p1, &primes.p2)?;

    let kernel = lifted_kernel(&m, primes).ok_or(Error::LiftFailure(block.multidegree))?;
    if kernel.len() != m.cols() - rank {
        return Err(Error::Inconsistent(format!(
            "local kernel at {} has {} vectors, expected {}",
            block.multidegree,
            kernel.len(),
            m.cols() - rank
        )));
    }
    Ok(kernel
        .into_iter()
        .map(|v| {
            let mut terms: Vec<(usize, usize, i64)> = v
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(col, &c)| (ordered.pairs[col].0, ordered.pairs[col].1, c))
                .collect();
            terms.sort_unstable();
            SyzygyElement { multidegree: block.multidegree, terms }
        })
        .collect())
}

/// Kernel basis with integer entries, verified over `Z`; tries `p1` then `p2`.
pub(crate) fn lifted_kernel(m: &SparseMatrix, primes: &Primes) -> Option<Vec<Vec<i64>>> {
    [primes.p1, primes.p2].iter().find_map(|f| try_lift(m, f))
}

fn try_lift(m: &SparseMatrix, field: &FieldSpec) -> Option<Vec<Vec<i64>>> {
    let kernel = exactla::kernel_basis_mod_p(m, field).ok()?;
    let lifted: Vec<Vec<i64>> = kernel.iter().map(|v| v.iter().map(|&x| field.lift(x)).collect()).collect();
    lifted.iter().all(|v| integer_kernel_vector(m, v)).then_some(lifted)
}

fn integer_kernel_vector(m: &SparseMatrix, v: &[i64]) -> bool {
    let mut acc = vec![0i128; m.rows()];
    for &(r, c, x) in m.entries() {
        acc[r] += x as i128 * v[c] as i128;
    }
    acc.iter().all(|&x| x == 0)
}

/// Outcome of the blockwise `beta_{2,4} = 0` test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuarticReport {
    pub multidegrees: usize,
    pub holds: bool,
    /// First multidegree with a quartic minimal syzygy.
    pub witness: Option<LatticePoint>,
}

/// `(y_a y_b, q_k)`.
type Degree4Column = ((usize, usize), usize);

/// One weighted-degree-`4s` block.
struct Degree4Block {
    multidegree: LatticePoint,
    columns: Vec<Degree4Column>,
}

fn degree4_blocks(ideal: &ToricIdeal) -> Vec<Degree4Block> {
    let mut blocks: BTreeMap<LatticePoint, Vec<Degree4Column>> = BTreeMap::new();
    for (e, decomps) in ideal.fibers() {
        for (c, range) in ideal.generator_multidegrees() {
            let cols = blocks.entry(e.add(c)).or_default();
            for &pair in decomps {
                cols.extend(range.clone().map(|k| (pair, k)));
            }
        }
    }
    blocks
        .into_iter()
        .map(|(multidegree, mut columns)| {
            columns.sort_unstable();
            Degree4Block { multidegree, columns }
        })
        .collect()
}

fn sorted4((a, b): (usize, usize), (c, d): (usize, usize)) -> [usize; 4] {
    let mut t = [a, b, c, d];
    t.sort_unstable();
    t
}

impl Degree4Block {
    fn column_index(&self) -> HashMap<Degree4Column, usize> {
        self.columns.iter().enumerate().map(|(i, c)| (*c, i)).collect()
    }

    /// Matrix of `y_a y_b q_k` in the quartic monomial basis.
    fn multiplication_matrix(&self, ideal: &ToricIdeal) -> SparseMatrix {
        let mut rows: HashMap<[usize; 4], usize> = HashMap::new();
        let mut triplets = Vec::with_capacity(2 * self.columns.len());
        for (col, &(pair, k)) in self.columns.iter().enumerate() {
            let gen = &ideal.generators()[k];
            for (mono, sign) in [(gen.lhs, 1), (gen.rhs, -1)] {
                let next = rows.len();
                let row = *rows.entry(sorted4(pair, mono)).or_insert(next);
                triplets.push((row, col, sign));
            }
        }
        SparseMatrix::from_triplets(rows.len(), self.columns.len(), triplets)
    }

    /// Rows `y_i * sigma` for every linear syzygy `sigma` at `D - u_i`.
    fn induced_matrix(&self, ideal: &ToricIdeal, syzygies: &SyzygyBasis) -> SparseMatrix {
        let index = self.column_index();
        let mut rows = Vec::new();
        for (i, u) in ideal.slice().points().iter().enumerate() {
            let Some(d) = self.multidegree.checked_sub(u) else {
                continue;
            };
            for sigma in syzygies.at(&d) {
                let row = sigma
                    .terms
                    .iter()
                    .map(|&(j, k, c)| (index[&((i.min(j), i.max(j)), k)], c))
                    .collect();
                rows.push(row);
            }
        }
        SparseMatrix::from_rows(self.columns.len(), &rows)
    }
}

/// Checks that every quartic first syzygy is generated by linear ones: at
/// each weighted-degree-`4s` multidegree, `dim Syz_4` (kernel of the
/// multiplication map) must equal the rank of `R_1 * Syz_3`. Both are exact
/// ranks under two primes.
pub fn check_no_quartic_syzygies(ideal: &ToricIdeal, syzygies: &SyzygyBasis, primes: &Primes) -> Result<QuarticReport> {
    if ideal.generators().is_empty() {
        return Ok(QuarticReport { multidegrees: 0, holds: true, witness: None });
    }
    let blocks = degree4_blocks(ideal);
    let verdicts: Result<Vec<bool>> = blocks
        .par_iter()
        .map(|b| {
            let m = b.multiplication_matrix(ideal);
            let kernel_dim = m.cols() - exactla::rank_two_primes(&m, &primes.p1, &primes.p2)?;
            let induced = b.induced_matrix(ideal, syzygies);
            let induced_rank = exactla::rank_two_primes(&induced, &primes.p1, &primes.p2)?;
            Ok(kernel_dim == induced_rank)
        })
        .collect();
    let verdicts = verdicts?;
    let witness = blocks.iter().zip(&verdicts).find(|(_, &ok)| !ok).map(|(b, _)| b.multidegree);
    Ok(QuarticReport { multidegrees: blocks.len(), holds: witness.is_none(), witness })
}

/// A quadratic syzygy `sum c * y_a y_b e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuarticSyzygy {
    pub multidegree: LatticePoint,
    pub terms: Vec<((usize, usize), usize, i64)>,
}

/// Kernel bases of all weighted-degree-`4s` multiplication blocks.
pub fn quartic_syzygies(ideal: &ToricIdeal, primes: &Primes) -> Result<Vec<QuarticSyzygy>> {
    let blocks = degree4_blocks(ideal);
    let per_block: Result<Vec<Vec<QuarticSyzygy>>> = blocks
        .par_iter()
        .map(|b| {
            let m = b.multiplication_matrix(ideal);
            let kernel = lifted_kernel(&m, primes).ok_or(Error::LiftFailure(b.multidegree))?;
            Ok(kernel
                .into_iter()
                .map(|v| QuarticSyzygy {
                    multidegree: b.multidegree,
                    terms: v
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(col, &c)| (b.columns[col].0, b.columns[col].1, c))
                        .collect(),
                })
                .collect())
        })
        .collect();
    Ok(per_block?.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(w: [u32; 4]) -> WeightedSpace {
        WeightedSpace::new(w).unwrap()
    }

    #[test]
    fn beta2_examples() {
        assert_eq!(beta2(&space([2, 3, 3, 4])).unwrap(), 320);
        assert_eq!(beta2(&space([1, 2, 2, 5])).unwrap(), 4025);
        assert_eq!(beta2(&space([1, 1, 4, 6])).unwrap(), 13056);
    }

    #[test]
    fn beta2_refuses_without_degree3_check() {
        let ideal = toric::quadric_generators(&space([2, 3, 3, 4])).unwrap();
        let failed = Degree3Report { multidegrees: 1, connected: false, witness: Some(LatticePoint([1, 2, 3, 4])) };
        assert_eq!(beta2_of(&ideal, &failed), Err(Error::CubicGenerator(LatticePoint([1, 2, 3, 4]))));
    }

    #[test]
    fn explicit_syzygies_match_the_count() {
        let primes = Primes::default();
        let ideal = toric::quadric_generators(&space([2, 3, 3, 4])).unwrap();
        let syz = linear_syzygies(&ideal, &primes).unwrap();
        assert_eq!(syz.total_count(), 320);
        for sigma in syz.elements() {
            assert!(sigma.evaluate(&ideal).is_empty());
            assert!(sigma.terms.iter().all(|&(_, _, c)| c.abs() <= 2 && c != 0));
        }
    }

    #[test]
    fn single_pair_block_has_no_syzygy() {
        let primes = Primes::default();
        let ideal = toric::quadric_generators(&space([2, 3, 3, 4])).unwrap();
        let blocks = toric::degree3_blocks(&ideal);
        let lonely = blocks.iter().find(|b| b.pairs.len() == 1).expect("some block has one incident pair");
        assert!(local_syzygies(&ideal, lonely, &primes, PairOrder::Ascending).unwrap().is_empty());
    }

    #[test]
    fn quartic_check_small() {
        let primes = Primes::default();
        let ideal = toric::quadric_generators(&space([2, 3, 3, 4])).unwrap();
        let syz = linear_syzygies(&ideal, &primes).unwrap();
        let report = check_no_quartic_syzygies(&ideal, &syz, &primes).unwrap();
        assert!(report.holds, "{report:?}");
    }

    #[test]
    fn empty_ideal_is_vacuous() {
        // P^3 embedded by O(1) is not an anticanonical model, but an ideal with
        // no generators is exercised through from_parts.
        let s = space([1, 1, 1, 1]);
        let slice = lattice::slice(&s, 1);
        let ideal = ToricIdeal::from_parts(s, slice, Vec::new()).unwrap();
        let primes = Primes::default();
        let syz = linear_syzygies(&ideal, &primes).unwrap();
        assert_eq!(syz.total_count(), 0);
        assert!(check_no_quartic_syzygies(&ideal, &syz, &primes).unwrap().holds);
    }
}
