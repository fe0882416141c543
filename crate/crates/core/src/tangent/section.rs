//! `T^1_{-1}` for cones over toric linear sections.
//!
//! A section is cut by forms `y_drop + y_keep`; on the section `y_drop` is
//! replaced by `-y_keep`. The ring `A' = A / (forms)` is graded by `Z^4`
//! modulo the sublattice spanned by the differences `u_keep - u_drop`, and
//! `A'_2` is spanned by degree-`2s` monomials modulo
//! `t^{v + u_keep} = -t^{v + u_drop}`. A homomorphism of degree `-1` assigns
//! `phi(q_k) = sum lambda_{k,v} y_v` over the surviving coordinates; the
//! substituted syzygies impose the equations, one block per coarse class.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactla::{self, Primes, SparseMatrix};
use crate::lattice::{self, LatticePoint};
use crate::resolution::SyzygyBasis;
use crate::toric::{binomial, ToricIdeal};

/// Substitution `y_drop -> -y_keep` (slice indices).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Identification {
    pub keep: usize,
    pub drop: usize,
}

impl Identification {
    pub fn new(keep: usize, drop: usize) -> Self {
        Self { keep, drop }
    }

    /// `l_0 = y_7 + y_{g+1}` and `l_1 = y_3 + y_g`, read in the canonical
    /// slice order.
    pub fn preset(g: usize) -> [Identification; 2] {
        [Identification::new(7, g + 1), Identification::new(3, g)]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionReport {
    pub identifications: Vec<Identification>,
    /// `dim A'_2` from the relations.
    pub a2_dim: usize,
    /// `dim A'_2` if the forms are a regular sequence.
    pub a2_expected: usize,
    pub hom_dim: usize,
    pub derivation_rank: usize,
    pub t1_dim: usize,
    pub classes: usize,
}

impl SectionReport {
    pub fn regular(&self) -> bool {
        self.a2_dim == self.a2_expected
    }
}

/// Hermite normal form of a sublattice of `Z^4`; reduces vectors to
/// canonical coset representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct QuotientGrading {
    /// Echelon rows `(pivot column, row)`, pivots positive.
    rows: Vec<(usize, [i64; 4])>,
}

impl QuotientGrading {
    pub(crate) fn new(generators: &[[i64; 4]]) -> Self {
        let mut m: Vec<[i64; 4]> = generators.iter().copied().filter(|v| *v != [0; 4]).collect();
        let mut rows = Vec::new();
        let mut top = 0;
        for col in 0..4 {
            loop {
                let nonzero: Vec<usize> = (top..m.len()).filter(|&r| m[r][col] != 0).collect();
                if nonzero.len() <= 1 {
                    break;
                }
                let min = *nonzero.iter().min_by_key(|&&r| m[r][col].abs()).unwrap();
                for &r in &nonzero {
                    if r != min {
                        let q = m[r][col] / m[min][col];
                        let pivot = m[min];
                        m[r].iter_mut().zip(pivot).for_each(|(x, y)| *x -= q * y);
                    }
                }
            }
            let Some(p) = (top..m.len()).find(|&r| m[r][col] != 0) else {
                continue;
            };
            m.swap(top, p);
            if m[top][col] < 0 {
                m[top] = m[top].map(|x| -x);
            }
            for r in 0..top {
                let q = m[r][col].div_euclid(m[top][col]);
                let pivot = m[top];
                m[r].iter_mut().zip(pivot).for_each(|(x, y)| *x -= q * y);
            }
            rows.push(col);
            top += 1;
        }
        Self { rows: rows.into_iter().zip(m).collect() }
    }

    pub(crate) fn reduce(&self, mut v: [i64; 4]) -> [i64; 4] {
        for (col, row) in &self.rows {
            let q = v[*col].div_euclid(row[*col]);
            v.iter_mut().zip(row).for_each(|(x, y)| *x -= q * y);
        }
        v
    }
}

/// Signed union-find over the degree-`2s` monomials: each class of `A'_2`
/// is either a line spanned by its root or zero.
struct SignedComponents {
    parent: Vec<usize>,
    /// Sign of the element relative to its parent.
    sign: Vec<i64>,
    zero: Vec<bool>,
}

impl SignedComponents {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), sign: vec![1; n], zero: vec![false; n] }
    }

    fn find(&mut self, x: usize) -> (usize, i64) {
        let p = self.parent[x];
        if p == x {
            return (x, 1);
        }
        let (root, s) = self.find(p);
        self.parent[x] = root;
        self.sign[x] *= s;
        (root, self.sign[x])
    }

    /// Imposes `e_x = sign * e_y`.
    fn relate(&mut self, x: usize, y: usize, sign: i64) {
        let (rx, sx) = self.find(x);
        let (ry, sy) = self.find(y);
        if rx == ry {
            if sx != sign * sy {
                self.zero[rx] = true;
            }
            return;
        }
        self.parent[rx] = ry;
        self.sign[rx] = sign * sy * sx;
        self.zero[ry] |= self.zero[rx];
    }

    /// `e_x = sign * e_root`, or `None` if `e_x = 0`.
    fn normal_form(&mut self, x: usize) -> Option<(usize, i64)> {
        let (root, s) = self.find(x);
        (!self.zero[root]).then_some((root, s))
    }
}

struct SectionSystem<'a> {
    ideal: &'a ToricIdeal,
    substitute: Vec<(usize, i64)>,
    remaining: Vec<usize>,
    slice2: lattice::DegreeSlice,
    components: SignedComponents,
}

impl<'a> SectionSystem<'a> {
    fn new(ideal: &'a ToricIdeal, ids: &[Identification]) -> Self {
        let n = ideal.n_vars();
        let mut substitute: Vec<(usize, i64)> = (0..n).map(|i| (i, 1)).collect();
        for id in ids {
            substitute[id.drop] = (id.keep, -1);
        }
        let remaining = (0..n).filter(|i| !ids.iter().any(|id| id.drop == *i)).collect();
        let slice2 = lattice::slice(ideal.space(), 2 * ideal.space().sum());
        let mut components = SignedComponents::new(slice2.len());
        let u = ideal.slice().points();
        for v in u {
            for id in ids {
                let x = slice2.index_of(&v.add(&u[id.keep])).unwrap();
                let y = slice2.index_of(&v.add(&u[id.drop])).unwrap();
                components.relate(x, y, -1);
            }
        }
        Self { ideal, substitute, remaining, slice2, components }
    }

    fn a2_dim(&mut self) -> usize {
        (0..self.slice2.len())
            .filter(|&x| matches!(self.components.normal_form(x), Some((r, _)) if r == x))
            .count()
    }

    /// Normal form of `y_i y_v` in `A'_2`, `i` and `v` already substituted.
    fn product(&mut self, i: usize, v: usize) -> Option<(usize, i64)> {
        let u = self.ideal.slice().points();
        let x = self.slice2.index_of(&u[i].add(&u[v])).unwrap();
        self.components.normal_form(x)
    }
}

fn validate(ideal: &ToricIdeal, ids: &[Identification]) -> Result<()> {
    let n = ideal.n_vars();
    for (t, id) in ids.iter().enumerate() {
        if id.keep >= n || id.drop >= n {
            return Err(Error::InvalidIdentification(format!("index out of range 0..{n} in {id:?}")));
        }
        if id.keep == id.drop {
            return Err(Error::InvalidIdentification(format!("y_{} + y_{} has u_a = u_b", id.keep, id.drop)));
        }
        for other in &ids[..t] {
            if other.drop == id.drop || other.drop == id.keep || id.drop == other.keep {
                return Err(Error::InvalidIdentification(format!("{id:?} overlaps {other:?}")));
            }
        }
    }
    Ok(())
}

/// `dim A'_2` for a regular sequence of `r` linear forms.
fn expected_a2(ideal: &ToricIdeal, r: usize) -> usize {
    let space = ideal.space();
    let s = space.sum() as i64;
    (0..=r.min(2))
        .map(|j| {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * binomial(r as u64, j as u64) as i64 * lattice::count_points(space, (2 - j as i64) * s) as i64
        })
        .sum::<i64>() as usize
}

/// `dim T^1_{-1}` of the cone over the section cut by `ids`.
pub fn t1_section_minus1(
    ideal: &ToricIdeal,
    syzygies: &SyzygyBasis,
    ids: &[Identification],
    primes: &Primes,
) -> Result<SectionReport> {
    validate(ideal, ids)?;
    let differences: Vec<[i64; 4]> = ids
        .iter()
        .map(|id| ideal.slice()[id.keep].diff(&ideal.slice()[id.drop]).0)
        .collect();
    let grading = QuotientGrading::new(&differences);
    let (hom_dim, derivation_rank, classes, a2_dim) = solve(ideal, syzygies, ids, |v| grading.reduce(v), primes)?;
    let t1_dim = hom_dim.checked_sub(derivation_rank).ok_or_else(|| Error::Inconsistent("negative T1".into()))?;
    Ok(SectionReport {
        identifications: ids.to_vec(),
        a2_dim,
        a2_expected: expected_a2(ideal, ids.len()),
        hom_dim,
        derivation_rank,
        t1_dim,
        classes,
    })
}

/// The ungraded system for the cone itself: all `(k, v)` in one block.
pub fn monolithic_hom_dimension(ideal: &ToricIdeal, syzygies: &SyzygyBasis, primes: &Primes) -> Result<usize> {
    solve(ideal, syzygies, &[], |_| [0; 4], primes).map(|(hom, _, _, _)| hom)
}

/// Returns `(hom_dim, derivation_rank, classes, dim A'_2)`.
fn solve(
    ideal: &ToricIdeal,
    syzygies: &SyzygyBasis,
    ids: &[Identification],
    class_of: impl Fn([i64; 4]) -> [i64; 4],
    primes: &Primes,
) -> Result<(usize, usize, usize, usize)> {
    let mut system = SectionSystem::new(ideal, ids);
    let a2_dim = system.a2_dim();
    let u = ideal.slice().points();
    let gens = ideal.generators();

    // unknowns (k, v) grouped by the class of u_v - c_k
    let mut blocks: BTreeMap<[i64; 4], Vec<(usize, usize)>> = BTreeMap::new();
    for (k, gen) in gens.iter().enumerate() {
        for &v in &system.remaining {
            blocks.entry(class_of(u[v].diff(&gen.multidegree).0)).or_default().push((k, v));
        }
    }

    let mut occ = vec![Vec::new(); gens.len()];
    for (idx, sigma) in syzygies.elements().iter().enumerate() {
        for &(_, k, _) in &sigma.terms {
            if occ[k].last() != Some(&idx) {
                occ[k].push(idx);
            }
        }
    }

    // constraint matrices, assembled serially (normal forms mutate the
    // union-find), solved in parallel
    let mut matrices = Vec::with_capacity(blocks.len());
    for unknowns in blocks.values() {
        let mut by_k: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
        for (col, &(k, v)) in unknowns.iter().enumerate() {
            by_k.entry(k).or_default().push((v, col));
        }
        let touched: BTreeSet<usize> = by_k.keys().flat_map(|&k| occ[k].iter().copied()).collect();
        let mut rows: Vec<Vec<(usize, i64)>> = Vec::new();
        for idx in touched {
            let mut acc: BTreeMap<usize, Vec<(usize, i64)>> = BTreeMap::new();
            for &(i, k, c) in &syzygies.elements()[idx].terms {
                let Some(cols) = by_k.get(&k) else {
                    continue;
                };
                let (i, sg) = system.substitute[i];
                for &(v, col) in cols {
                    if let Some((root, sign)) = system.product(i, v) {
                        acc.entry(root).or_default().push((col, c * sg * sign));
                    }
                }
            }
            rows.extend(acc.into_values());
        }
        matrices.push(SparseMatrix::from_rows(unknowns.len(), &rows));
    }
    let dims: Result<Vec<usize>> =
        matrices.par_iter().map(|m| exactla::solution_dim(m, &primes.p1, &primes.p2)).collect();
    let hom_dim = dims?.into_iter().sum();

    // derivations d/dy_j of the substituted generators
    let index: BTreeMap<[i64; 4], HashMap<(usize, usize), usize>> = blocks
        .iter()
        .map(|(class, unknowns)| (*class, unknowns.iter().enumerate().map(|(c, &kv)| (kv, c)).collect()))
        .collect();
    let mut derivations: BTreeMap<[i64; 4], Vec<Vec<(usize, i64)>>> = BTreeMap::new();
    for &j in &system.remaining {
        let class = class_of(LatticePoint::default().diff(&u[j]).0);
        let Some(cols) = index.get(&class) else {
            continue;
        };
        let mut row = Vec::new();
        for (k, gen) in gens.iter().enumerate() {
            for ((a, b), sign) in [(gen.lhs, 1), (gen.rhs, -1)] {
                let (x0, s0) = system.substitute[a];
                let (x1, s1) = system.substitute[b];
                let coef = sign * s0 * s1;
                if x0 == j {
                    row.push((cols[&(k, x1)], coef));
                }
                if x1 == j {
                    row.push((cols[&(k, x0)], coef));
                }
            }
        }
        derivations.entry(class).or_default().push(row);
    }
    let mut derivation_rank = 0;
    for (class, rows) in &derivations {
        let m = SparseMatrix::from_rows(blocks[class].len(), rows);
        derivation_rank += exactla::rank_two_primes(&m, &primes.p1, &primes.p2)?;
    }

    Ok((hom_dim, derivation_rank, blocks.len(), a2_dim))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolution;
    use crate::toric;
    use crate::wps::WeightedSpace;

    fn setup(w: [u32; 4]) -> (ToricIdeal, SyzygyBasis) {
        let space = WeightedSpace::new(w).unwrap();
        let ideal = toric::quadric_generators(&space).unwrap();
        let syz = resolution::linear_syzygies(&ideal, &Primes::default()).unwrap();
        (ideal, syz)
    }

    #[test]
    fn hnf_reduction() {
        let q = QuotientGrading::new(&[[2, 0, -1, 0], [0, 3, 0, 0]]);
        assert_eq!(q.reduce([2, 0, -1, 0]), [0; 4]);
        assert_eq!(q.reduce([0, 3, 0, 0]), [0; 4]);
        assert_eq!(q.reduce([1, 1, 1, 1]), q.reduce([3, 4, 0, 1]));
        assert_ne!(q.reduce([1, 0, 0, 0]), [0; 4]);
        assert_eq!(QuotientGrading::new(&[]).reduce([1, -2, 3, 0]), [1, -2, 3, 0]);
    }

    #[test]
    fn sections_of_2334() {
        let (ideal, syz) = setup([2, 3, 3, 4]);
        let primes = Primes::default();
        let none = t1_section_minus1(&ideal, &syz, &[], &primes).unwrap();
        assert_eq!((none.a2_dim, none.t1_dim), (65, 5));
        let [l0, l1] = Identification::preset(13);
        let one = t1_section_minus1(&ideal, &syz, &[l0], &primes).unwrap();
        assert_eq!((one.a2_dim, one.a2_expected, one.t1_dim), (50, 50, 6));
        let two = t1_section_minus1(&ideal, &syz, &[l0, l1], &primes).unwrap();
        assert_eq!((two.a2_dim, two.a2_expected, two.t1_dim), (36, 36, 7));
    }

    #[test]
    fn rejects_degenerate_forms() {
        let (ideal, syz) = setup([2, 3, 3, 4]);
        let primes = Primes::default();
        let bad = [Identification::new(4, 4)];
        assert!(matches!(t1_section_minus1(&ideal, &syz, &bad, &primes), Err(Error::InvalidIdentification(_))));
        let chained = [Identification::new(1, 2), Identification::new(2, 3)];
        assert!(matches!(t1_section_minus1(&ideal, &syz, &chained, &primes), Err(Error::InvalidIdentification(_))));
    }

    #[test]
    fn monolithic_matches_blocks() {
        let (ideal, syz) = setup([2, 3, 3, 4]);
        assert_eq!(monolithic_hom_dimension(&ideal, &syz, &Primes::default()).unwrap(), 20);
    }
}
