//! The degree `-1` piece of `T^1` of the affine cone.
//!
//! A degree `-1` homomorphism `phi: I -> A` is determined by the values
//! `phi(q_k) in A_1` subject to `sum c * y_i phi(q_k) = 0` in `A_2` for every
//! linear syzygy. Under the `Z^4` grading `phi` splits into pieces of shift
//! `delta = v - c_k`: in the piece of shift `delta`, `phi(q_k)` is a multiple
//! `lambda_k` of the monomial `t^{c_k + delta}` and each syzygy becomes one
//! linear equation in the `lambda_k`.
//!
//! `T^1_{-1}` is the cokernel of the `g + 2` derivations `d/dy_j`, which are
//! independent and sit in the pairwise distinct pieces of shift `-u_j`.

pub mod section;

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactla::{self, Primes, SparseMatrix};
use crate::lattice::{LatticePoint, Shift};
use crate::resolution::{self, PairOrder, QuarticSyzygy, SyzygyBasis};
use crate::toric::{self, SpanningTree, ToricIdeal};
use crate::wps::{self, WeightedSpace};

pub use section::{t1_section_minus1, Identification, SectionReport};

/// One graded piece of `Hom(I, A)_{-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftBlock {
    pub shift: Shift,
    /// Generator indices `k` with `c_k + shift` in the degree-`s` slice.
    pub unknowns: Vec<usize>,
    /// One row per syzygy touching the unknowns; columns index `unknowns`.
    pub constraints: Vec<Vec<(usize, i64)>>,
    /// Solution dimension, agreed under both primes.
    pub dim: usize,
}

impl ShiftBlock {
    pub fn matrix(&self) -> SparseMatrix {
        SparseMatrix::from_rows(self.unknowns.len(), &self.constraints)
    }
}

/// `Hom(I, A)_{-1}` block by block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomTable {
    pub hom_dim: usize,
    /// Sorted by shift.
    pub blocks: Vec<ShiftBlock>,
}

impl HomTable {
    pub fn block(&self, shift: &Shift) -> Option<&ShiftBlock> {
        self.blocks.binary_search_by(|b| b.shift.cmp(shift)).ok().map(|i| &self.blocks[i])
    }

    /// `(shift, dim)` for every block.
    pub fn all(&self) -> Vec<(Shift, usize)> {
        self.blocks.iter().map(|b| (b.shift, b.dim)).collect()
    }

    /// `(shift, dim)` for every block with a nonzero solution space.
    pub fn nonzero(&self) -> Vec<(Shift, usize)> {
        self.blocks.iter().filter(|b| b.dim > 0).map(|b| (b.shift, b.dim)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct T1Report {
    pub space: WeightedSpace,
    pub g: u64,
    pub hom_dim: usize,
    pub ambient_dim: usize,
    pub t1_dim: usize,
    pub alpha_p: usize,
    pub alpha_s: usize,
    pub alpha_c: usize,
    pub extendability: usize,
    /// Nonzero blocks `(shift, dim)`, sorted by shift.
    pub blocks: Vec<(Shift, usize)>,
}

impl T1Report {
    /// Assembles the report from a per-shift table, e.g. one read from the
    /// cache.
    pub fn from_blocks(space: WeightedSpace, blocks: &[(Shift, usize)]) -> Result<Self> {
        let g = wps::invariants(&space).g.ok_or(Error::NotGorenstein(space.weights()))?;
        let ambient_dim = g as usize + 2;
        let hom_dim: usize = blocks.iter().map(|b| b.1).sum();
        let t1_dim = hom_dim.checked_sub(ambient_dim).ok_or_else(|| {
            Error::Inconsistent(format!("{space}: Hom has dimension {hom_dim} < {ambient_dim}"))
        })?;
        Ok(Self {
            space,
            g,
            hom_dim,
            ambient_dim,
            t1_dim,
            alpha_p: t1_dim,
            alpha_s: t1_dim + 1,
            alpha_c: t1_dim + 2,
            extendability: t1_dim,
            blocks: blocks.iter().filter(|b| b.1 > 0).copied().collect(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct T1Options {
    pub primes: Primes,
    /// Also impose the quartic syzygies and require the same dimension.
    pub strict: bool,
    pub tree: SpanningTree,
    pub pair_order: PairOrder,
}

/// All shifts `v - c` over slice points `v` and generator multidegrees `c`.
pub fn shifts(ideal: &ToricIdeal) -> Vec<Shift> {
    let set: BTreeSet<Shift> = ideal
        .slice()
        .points()
        .iter()
        .flat_map(|v| ideal.generator_multidegrees().map(move |(c, _)| v.diff(c)))
        .collect();
    set.into_iter().collect()
}

/// For each generator, the syzygies in which it occurs.
fn occurrences(ideal: &ToricIdeal, syzygies: &SyzygyBasis) -> Vec<Vec<usize>> {
    let mut occ = vec![Vec::new(); ideal.generators().len()];
    for (idx, sigma) in syzygies.elements().iter().enumerate() {
        for &(_, k, _) in &sigma.terms {
            if occ[k].last() != Some(&idx) {
                occ[k].push(idx);
            }
        }
    }
    occ
}

fn unknowns_at(ideal: &ToricIdeal, shift: &Shift) -> Vec<usize> {
    ideal
        .generator_multidegrees()
        .filter(|(c, _)| c.offset(shift).is_some_and(|t| ideal.slice().contains(&t)))
        .flat_map(|(_, r)| r.clone())
        .collect()
}

/// Assembles the block of one shift. Empty `unknowns` gives a block of
/// dimension zero.
pub fn assemble_block(ideal: &ToricIdeal, syzygies: &SyzygyBasis, shift: Shift, primes: &Primes) -> Result<ShiftBlock> {
    let occ = occurrences(ideal, syzygies);
    assemble_with(ideal, syzygies, &occ, None, shift, primes)
}

fn assemble_with(
    ideal: &ToricIdeal,
    syzygies: &SyzygyBasis,
    occ: &[Vec<usize>],
    quartic: Option<&QuarticIndex>,
    shift: Shift,
    primes: &Primes,
) -> Result<ShiftBlock> {
    let unknowns = unknowns_at(ideal, &shift);
    let position: HashMap<usize, usize> = unknowns.iter().enumerate().map(|(i, &k)| (k, i)).collect();

    let touched: BTreeSet<usize> = unknowns.iter().flat_map(|&k| occ[k].iter().copied()).collect();
    let mut constraints: Vec<Vec<(usize, i64)>> = touched
        .into_iter()
        .map(|idx| {
            syzygies.elements()[idx]
                .terms
                .iter()
                .filter_map(|&(_, k, c)| position.get(&k).map(|&col| (col, c)))
                .collect()
        })
        .collect();
    let linear_rows = constraints.len();
    if let Some(q) = quartic {
        let touched: BTreeSet<usize> = unknowns.iter().flat_map(|&k| q.occ[k].iter().copied()).collect();
        constraints.extend(touched.into_iter().map(|idx| {
            let mut row: Vec<(usize, i64)> = q.syzygies[idx]
                .terms
                .iter()
                .filter_map(|&(_, k, c)| position.get(&k).map(|&col| (col, c)))
                .collect();
            row.sort_unstable();
            row
        }));
    }

    let mut block = ShiftBlock { shift, unknowns, constraints, dim: 0 };
    block.dim = exactla::solution_dim(&block.matrix(), &primes.p1, &primes.p2)?;
    if quartic.is_some() {
        let linear = ShiftBlock { constraints: block.constraints[..linear_rows].to_vec(), ..block.clone() };
        let linear_dim = exactla::solution_dim(&linear.matrix(), &primes.p1, &primes.p2)?;
        if linear_dim != block.dim {
            return Err(Error::Inconsistent(format!(
                "shift {shift}: quartic syzygies cut the block from {linear_dim} to {}",
                block.dim
            )));
        }
    }
    Ok(block)
}

struct QuarticIndex<'a> {
    syzygies: &'a [QuarticSyzygy],
    occ: Vec<Vec<usize>>,
}

impl<'a> QuarticIndex<'a> {
    fn new(ideal: &ToricIdeal, syzygies: &'a [QuarticSyzygy]) -> Self {
        let mut occ = vec![Vec::new(); ideal.generators().len()];
        for (idx, tau) in syzygies.iter().enumerate() {
            for &(_, k, _) in &tau.terms {
                if occ[k].last() != Some(&idx) {
                    occ[k].push(idx);
                }
            }
        }
        Self { syzygies, occ }
    }
}

/// `dim Hom(I, A)_{-1}` as a sum over shift blocks.
pub fn hom_dimension_minus1(ideal: &ToricIdeal, syzygies: &SyzygyBasis, primes: &Primes) -> Result<HomTable> {
    hom_table(ideal, syzygies, None, primes)
}

/// As [`hom_dimension_minus1`], additionally imposing the quartic syzygies
/// in every block and failing if any block dimension drops.
pub fn hom_dimension_minus1_strict(
    ideal: &ToricIdeal,
    syzygies: &SyzygyBasis,
    quartic: &[QuarticSyzygy],
    primes: &Primes,
) -> Result<HomTable> {
    let index = QuarticIndex::new(ideal, quartic);
    hom_table(ideal, syzygies, Some(&index), primes)
}

fn hom_table(ideal: &ToricIdeal, syzygies: &SyzygyBasis, quartic: Option<&QuarticIndex>, primes: &Primes) -> Result<HomTable> {
    let occ = occurrences(ideal, syzygies);
    let blocks: Result<Vec<ShiftBlock>> = shifts(ideal)
        .into_par_iter()
        .map(|shift| assemble_with(ideal, syzygies, &occ, quartic, shift, primes))
        .collect();
    let blocks = blocks?;
    let hom_dim = blocks.iter().map(|b| b.dim).sum();
    Ok(HomTable { hom_dim, blocks })
}

/// `d/dy_j` restricted to the generators, as a vector in its block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub coordinate: usize,
    pub shift: Shift,
    /// `(generator k, coefficient)`; `phi_j(q_k) = coefficient * t^{c_k - u_j}`.
    pub values: Vec<(usize, i64)>,
}

/// The `g + 2` derivations, each checked to be a nonzero solution of its
/// block over the integers.
pub fn derivation_vectors(ideal: &ToricIdeal, syzygies: &SyzygyBasis) -> Result<Vec<Derivation>> {
    let occ = occurrences(ideal, syzygies);
    ideal
        .slice()
        .points()
        .iter()
        .enumerate()
        .map(|(j, u)| {
            let shift = LatticePoint::default().diff(u);
            let values: Vec<(usize, i64)> = unknowns_at(ideal, &shift)
                .into_iter()
                .filter_map(|k| {
                    let (l, r) = ideal.generators()[k].multiplicities(j);
                    (l != r).then_some((k, l - r))
                })
                .collect();
            if values.is_empty() {
                return Err(Error::Inconsistent(format!("derivation d/dy_{j} vanishes on every generator")));
            }
            let value_of: HashMap<usize, i64> = values.iter().copied().collect();
            let touched: BTreeSet<usize> = values.iter().flat_map(|&(k, _)| occ[k].iter().copied()).collect();
            for idx in touched {
                let sigma = &syzygies.elements()[idx];
                let residual: i64 = sigma
                    .terms
                    .iter()
                    .filter_map(|&(_, k, c)| value_of.get(&k).map(|&x| c * x))
                    .sum();
                if residual != 0 {
                    return Err(Error::Inconsistent(format!(
                        "derivation d/dy_{j} violates the syzygy at {}",
                        sigma.multidegree
                    )));
                }
            }
            Ok(Derivation { coordinate: j, shift, values })
        })
        .collect()
}

/// Full pipeline from the weights to `alpha`, with default options.
pub fn alpha_report(space: &WeightedSpace) -> Result<T1Report> {
    alpha_report_with(space, &T1Options::default())
}

pub fn alpha_report_with(space: &WeightedSpace, options: &T1Options) -> Result<T1Report> {
    let ideal = toric::quadric_generators_with(space, options.tree)?;
    let degree3 = toric::check_degree3_generation(&ideal);
    if let Some(witness) = degree3.witness {
        return Err(Error::CubicGenerator(witness));
    }
    let syzygies = resolution::linear_syzygies_with(&ideal, &options.primes, options.pair_order)?;
    alpha_from_parts(&ideal, &syzygies, options)
}

/// `alpha` from an already computed ideal and syzygy basis.
pub fn alpha_from_parts(ideal: &ToricIdeal, syzygies: &SyzygyBasis, options: &T1Options) -> Result<T1Report> {
    T1Report::from_blocks(*ideal.space(), &checked_hom_table(ideal, syzygies, options)?.all())
}

/// The block table, with the derivations checked against it.
pub fn checked_hom_table(ideal: &ToricIdeal, syzygies: &SyzygyBasis, options: &T1Options) -> Result<HomTable> {
    let table = if options.strict {
        let quartic = resolution::quartic_syzygies(ideal, &options.primes)?;
        hom_dimension_minus1_strict(ideal, syzygies, &quartic, &options.primes)?
    } else {
        hom_dimension_minus1(ideal, syzygies, &options.primes)?
    };
    let derivations = derivation_vectors(ideal, syzygies)?;
    let distinct: BTreeSet<Shift> = derivations.iter().map(|d| d.shift).collect();
    if distinct.len() != derivations.len() {
        return Err(Error::Inconsistent("two derivations share a block".into()));
    }
    for d in &derivations {
        if table.block(&d.shift).is_none_or(|b| b.dim == 0) {
            return Err(Error::Inconsistent(format!("derivation d/dy_{} has no room in its block", d.coordinate)));
        }
    }
    Ok(table)
}

/// `dim Hom(I, A)_{-1}` from a single system over all unknowns
/// `(k, v)`, without the shift decomposition.
pub fn monolithic_hom_dimension(ideal: &ToricIdeal, syzygies: &SyzygyBasis, primes: &Primes) -> Result<usize> {
    section::monolithic_hom_dimension(ideal, syzygies, primes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(w: [u32; 4]) -> (ToricIdeal, SyzygyBasis) {
        let space = WeightedSpace::new(w).unwrap();
        let ideal = toric::quadric_generators(&space).unwrap();
        let syz = resolution::linear_syzygies(&ideal, &Primes::default()).unwrap();
        (ideal, syz)
    }

    #[test]
    fn hom_2334() {
        let (ideal, syz) = setup([2, 3, 3, 4]);
        let table = hom_dimension_minus1(&ideal, &syz, &Primes::default()).unwrap();
        assert_eq!(table.hom_dim, 20);
        assert!(table.blocks.iter().all(|b| !b.unknowns.is_empty()));
    }

    #[test]
    fn block_without_unknowns_is_zero() {
        let (ideal, syz) = setup([2, 3, 3, 4]);
        let block = assemble_block(&ideal, &syz, Shift([100, 0, 0, -50]), &Primes::default()).unwrap();
        assert!(block.unknowns.is_empty());
        assert_eq!(block.dim, 0);
    }

    #[test]
    fn alpha_small_cases() {
        let r = alpha_report(&WeightedSpace::new([2, 3, 3, 4]).unwrap()).unwrap();
        assert_eq!((r.g, r.alpha_p, r.alpha_s, r.alpha_c, r.extendability), (13, 5, 6, 7, 5));
        let r = alpha_report(&WeightedSpace::new([2, 3, 10, 15]).unwrap()).unwrap();
        assert_eq!((r.alpha_p, r.alpha_s), (2, 3));
    }

    #[test]
    fn derivations_2334() {
        let (ideal, syz) = setup([2, 3, 3, 4]);
        let ders = derivation_vectors(&ideal, &syz).unwrap();
        assert_eq!(ders.len(), 15);
        let table = hom_dimension_minus1(&ideal, &syz, &Primes::default()).unwrap();
        for d in &ders {
            let block = table.block(&d.shift).unwrap();
            assert!(block.dim >= 1);
            for &(k, _) in &d.values {
                assert!(block.unknowns.contains(&k));
            }
        }
    }

    #[test]
    fn derivation_skips_generators_without_the_variable() {
        let (ideal, syz) = setup([2, 3, 3, 4]);
        for d in derivation_vectors(&ideal, &syz).unwrap() {
            for &(k, _) in &d.values {
                let (l, r) = ideal.generators()[k].multiplicities(d.coordinate);
                assert!(l + r > 0);
            }
        }
    }

    #[test]
    fn strict_mode_agrees() {
        let space = WeightedSpace::new([2, 3, 3, 4]).unwrap();
        let opts = T1Options { strict: true, ..Default::default() };
        assert_eq!(alpha_report_with(&space, &opts).unwrap().t1_dim, 5);
    }
}
