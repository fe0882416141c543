use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use gwpskit::exactla::{self, FieldSpec, SparseMatrix};
use gwpskit::lattice::{self, LatticePoint, Shift};
use gwpskit::report::cache;
use gwpskit::{wps, WeightedSpace};

const P: u64 = 2_147_483_647;

fn field() -> FieldSpec {
    FieldSpec::new(P).unwrap()
}

/// Rank over the rationals by fraction-exact Gaussian elimination.
fn rational_rank(rows: usize, cols: usize, entries: &[(usize, usize, i64)]) -> usize {
    let mut m = vec![vec![BigRational::zero(); cols]; rows];
    for &(r, c, v) in entries {
        m[r][c] += BigRational::from_integer(BigInt::from(v));
    }
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = BigRational::one() / m[rank][c].clone();
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let f = m[r][c].clone() * inv.clone();
                for cc in c..cols {
                    let sub = f.clone() * m[rank][cc].clone();
                    m[r][cc] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn small_matrix(max: usize, density: f64) -> impl Strategy<Value = SparseMatrix> {
    (1..=max, 1..=max).prop_flat_map(move |(rows, cols)| {
        proptest::collection::vec(prop_oneof![Just(-1i64), Just(0), Just(1)], rows * cols).prop_map(move |vals| {
            let triplets = vals
                .iter()
                .enumerate()
                .filter(|(i, &v)| v != 0 && ((i * 2654435761) % 1000) as f64 / 1000.0 < density)
                .map(|(i, &v)| (i / cols, i % cols, v))
                .collect();
            SparseMatrix::from_triplets(rows, cols, triplets)
        })
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_matches_rational_oracle(m in small_matrix(50, 0.6)) {
        let want = rational_rank(m.rows(), m.cols(), m.entries());
        prop_assert_eq!(exactla::rank_mod_p(&m, &field()).unwrap(), want);
        prop_assert!(want <= m.rows().min(m.cols()));
    }

    #[test]
    fn rank_is_permutation_invariant(
        (m, rp, cp) in small_matrix(30, 0.5).prop_flat_map(|m| {
            let (r, c) = (m.rows(), m.cols());
            (Just(m), permutation(r), permutation(c))
        })
    ) {
        let f = field();
        prop_assert_eq!(exactla::rank_mod_p(&m, &f).unwrap(), exactla::rank_mod_p(&m.permuted(&rp, &cp), &f).unwrap());
    }

    #[test]
    fn kernel_vectors_are_in_the_kernel(m in small_matrix(40, 0.4)) {
        let f = field();
        let kernel = exactla::kernel_basis_mod_p(&m, &f).unwrap();
        prop_assert_eq!(kernel.len(), m.cols() - exactla::rank_mod_p(&m, &f).unwrap());
        for v in &kernel {
            prop_assert!(exactla::is_kernel_vector(&m, v, &f));
        }
    }

    #[test]
    fn sparse_and_dense_paths_agree(rows in 1usize..12, seed in 0u64..1000) {
        // wide enough for the sparse path; the leading block is mirrored in a
        // narrow copy that takes the dense path
        let cols = 300;
        let triplets: Vec<(usize, usize, i64)> = (0..rows * 6)
            .map(|i| {
                let x = (seed + 1).wrapping_mul(6364136223846793005).wrapping_add((i as u64).wrapping_mul(1442695040888963407));
                ((i % rows), (x >> 33) as usize % 40, [1i64, -1, 2][(x >> 20) as usize % 3])
            })
            .collect();
        let wide = SparseMatrix::from_triplets(rows, cols, triplets.clone());
        let narrow = SparseMatrix::from_triplets(rows, 40, triplets);
        let f = field();
        prop_assert_eq!(exactla::rank_mod_p(&wide, &f).unwrap(), exactla::rank_mod_p(&narrow, &f).unwrap());
        prop_assert_eq!(exactla::kernel_basis_mod_p(&wide, &f).unwrap().len(), cols - exactla::rank_mod_p(&narrow, &f).unwrap());
    }

    #[test]
    fn enumeration_is_monotone(a in 1u32..50, b in 1u32..50) {
        let (lo, hi) = (a.min(b), a.max(b));
        let small: BTreeSet<_> = wps::enumerate_gorenstein(lo).into_iter().collect();
        let large: BTreeSet<_> = wps::enumerate_gorenstein(hi).into_iter().collect();
        prop_assert!(small.is_subset(&large));
    }

    #[test]
    fn point_counts_match_slices(w in proptest::array::uniform4(1u32..8), d in 0u32..30) {
        if let Ok(space) = WeightedSpace::new(w) {
            let slice = lattice::slice(&space, d);
            prop_assert_eq!(lattice::count_points(&space, d as i64), slice.len() as u64);
            prop_assert!(slice.points().iter().all(|p| space.degree(p) == d as u64));
            prop_assert!(slice.points().windows(2).all(|x| x[0] > x[1]));
            prop_assert_eq!(lattice::slice(&space, d), slice);
        }
    }

    #[test]
    fn sumset_never_exceeds_count(idx in 0usize..14, d in 2u32..4) {
        let space = wps::enumerate_gorenstein(21)[idx];
        let sums = lattice::sumset(&space, d).len() as u64;
        let count = lattice::count_points(&space, (d * space.sum()) as i64);
        let normal = lattice::verify_projective_normality(&space, d).last().unwrap().holds;
        prop_assert!(sums <= count);
        prop_assert_eq!(sums == count, normal);
    }

    #[test]
    fn block_tables_round_trip(blocks in proptest::collection::vec((proptest::array::uniform4(-40i64..40), 0usize..9), 0..50)) {
        let blocks: Vec<(Shift, usize)> = blocks.into_iter().map(|(s, d)| (Shift(s), d)).collect();
        let text = cache::serialize_blocks(&blocks);
        let back = cache::parse_blocks(&text).unwrap();
        prop_assert_eq!(&back, &blocks);
        prop_assert_eq!(cache::serialize_blocks(&back), text);
    }

    #[test]
    fn slices_round_trip(w in proptest::array::uniform4(1u32..6), d in 1u32..20) {
        if let Ok(space) = WeightedSpace::new(w) {
            let slice = lattice::slice(&space, d);
            prop_assume!(!slice.is_empty());
            prop_assert_eq!(cache::parse_slice(&space, &cache::serialize_slice(&slice)).unwrap(), slice);
        }
    }
}

#[test]
fn count_is_fourteen_from_21_to_50() {
    for bound in 21..=50 {
        assert_eq!(wps::enumerate_gorenstein(bound).len(), 14, "bound {bound}");
    }
}

#[test]
fn h_vectors_are_symmetric() {
    for space in wps::enumerate_gorenstein(21) {
        let h = lattice::h_vector(&space);
        assert_eq!((h[0], h[1]), (h[3], h[2]), "{space}");
    }
}

#[test]
fn lattice_point_ops() {
    let p = LatticePoint([3, 0, 1, 2]);
    let q = LatticePoint([1, 0, 1, 0]);
    assert_eq!(p.checked_sub(&q), Some(LatticePoint([2, 0, 0, 2])));
    assert_eq!(q.checked_sub(&p), None);
    assert_eq!(q.offset(&p.diff(&q)), Some(p));
}
