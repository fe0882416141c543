//! Exact linear algebra over prime fields `F_p` with `p < 2^31`.
//!
//! Matrices arrive as integer triplets. Every entry is reduced into the field
//! and an entry that is nonzero over the integers but vanishes mod `p` is
//! reported, so the caller can retry with another prime. Blocks with at most
//! [`DENSE_THRESHOLD`] columns are eliminated densely; larger ones use a
//! Markowitz-style sparse elimination (rank) or sparse row insertion (kernel).
//!
//! Kernels are read off the reduced row echelon form, which is unique, so the
//! returned basis does not depend on the elimination route.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Blocks with at most this many columns are solved densely.
pub const DENSE_THRESHOLD: usize = 256;

/// Default primes for two-prime verification.
pub const DEFAULT_PRIMES: (u64, u64) = (2_147_483_647, 1_073_741_789);

/// The pair of primes used for two-prime verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Primes {
    pub p1: FieldSpec,
    pub p2: FieldSpec,
}

impl Primes {
    pub fn new(p1: u64, p2: u64) -> Result<Self> {
        let (p1, p2) = (FieldSpec::new(p1)?, FieldSpec::new(p2)?);
        if p1 == p2 {
            return Err(Error::Inconsistent(format!("the two primes must differ, got {} twice", p1.prime)));
        }
        Ok(Self { p1, p2 })
    }
}

impl Default for Primes {
    fn default() -> Self {
        Self::new(DEFAULT_PRIMES.0, DEFAULT_PRIMES.1).expect("default primes are valid")
    }
}

/// An odd prime `p < 2^31`, checked at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    prime: u64,
}

impl FieldSpec {
    pub fn new(prime: u64) -> Result<Self> {
        if !(3..1 << 31).contains(&prime) || !is_prime(prime) {
            return Err(Error::NotPrime(prime));
        }
        Ok(Self { prime })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    #[inline]
    pub fn reduce(&self, value: i64) -> u64 {
        value.rem_euclid(self.prime as i64) as u64
    }

    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.prime
    }

    #[inline]
    fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.prime - b
        }
    }

    fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.prime - 2)
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        base %= self.prime;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Symmetric lift of a field element to `(-p/2, p/2]`.
    pub fn lift(&self, value: u64) -> i64 {
        if value > self.prime / 2 {
            value as i64 - self.prime as i64
        } else {
            value as i64
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Integer matrix in coordinate form, sorted by `(row, col)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, i64)>,
}

impl SparseMatrix {
    /// Builds a matrix from triplets; duplicate positions are summed and
    /// zero results dropped.
    pub fn from_triplets(rows: usize, cols: usize, mut triplets: Vec<(usize, usize, i64)>) -> Self {
        triplets.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut entries: Vec<(usize, usize, i64)> = Vec::with_capacity(triplets.len());
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r}, {c}) outside {rows}x{cols}");
            match entries.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 += v,
                _ => entries.push((r, c, v)),
            }
        }
        entries.retain(|e| e.2 != 0);
        Self { rows, cols, entries }
    }

    /// Builds a matrix from sparse rows `(col, value)`.
    pub fn from_rows(cols: usize, rows: &[Vec<(usize, i64)>]) -> Self {
        let triplets = rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |&(c, v)| (r, c, v)))
            .collect();
        Self::from_triplets(rows.len(), cols, triplets)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_triplets(n, n, (0..n).map(|i| (i, i, 1)).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: Vec::new() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[(usize, usize, i64)] {
        &self.entries
    }

    /// Content hash used in diagnostics.
    pub fn fingerprint(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(format!("{}x{}", self.rows, self.cols).as_bytes());
        for (r, c, v) in &self.entries {
            hasher.update(format!(";{r},{c},{v}").as_bytes());
        }
        let digest = hasher.finalize();
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }

    /// Applies a row and a column permutation: entry `(r, c)` moves to
    /// `(row_perm[r], col_perm[c])`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Self {
        let triplets = self
            .entries
            .iter()
            .map(|&(r, c, v)| (row_perm[r], col_perm[c], v))
            .collect();
        Self::from_triplets(self.rows, self.cols, triplets)
    }

    fn reduced_rows(&self, field: &FieldSpec) -> Result<Vec<Vec<(usize, u64)>>> {
        let mut rows = vec![Vec::new(); self.rows];
        for &(r, c, v) in &self.entries {
            let x = field.reduce(v);
            if x == 0 {
                return Err(Error::EntryVanishes { row: r, col: c, value: v, prime: field.prime });
            }
            rows[r].push((c, x));
        }
        Ok(rows)
    }

    fn dense(&self, field: &FieldSpec) -> Result<Vec<Vec<u64>>> {
        let mut dense = vec![vec![0u64; self.cols]; self.rows];
        for (r, row) in self.reduced_rows(field)?.into_iter().enumerate() {
            for (c, x) in row {
                dense[r][c] = x;
            }
        }
        Ok(dense)
    }
}

/// Rank of `m` over `F_p`.
pub fn rank_mod_p(m: &SparseMatrix, field: &FieldSpec) -> Result<usize> {
    if m.entries.is_empty() {
        return Ok(0);
    }
    if m.cols <= DENSE_THRESHOLD {
        let mut dense = m.dense(field)?;
        Ok(dense_rref(&mut dense, field).len())
    } else {
        markowitz_rank(m.reduced_rows(field)?, m.cols, field)
    }
}

/// Basis of the right kernel over `F_p`, one vector per free column of the
/// reduced row echelon form, in increasing free-column order.
pub fn kernel_basis_mod_p(m: &SparseMatrix, field: &FieldSpec) -> Result<Vec<Vec<u64>>> {
    let (pivots, rref) = if m.cols <= DENSE_THRESHOLD {
        let mut dense = m.dense(field)?;
        let pivots = dense_rref(&mut dense, field);
        let rows: Vec<Vec<(usize, u64)>> = dense
            .iter()
            .take(pivots.len())
            .map(|row| row.iter().enumerate().filter(|(_, &x)| x != 0).map(|(c, &x)| (c, x)).collect())
            .collect();
        (pivots, rows)
    } else {
        sparse_rref(m.reduced_rows(field)?, m.cols, field)
    };

    let mut is_pivot = vec![false; m.cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::with_capacity(m.cols - pivots.len());
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u64; m.cols];
        v[free] = 1;
        for (row, &pc) in rref.iter().zip(&pivots) {
            if let Ok(pos) = row.binary_search_by_key(&free, |&(c, _)| c) {
                v[pc] = field.sub(0, row[pos].1);
            }
        }
        basis.push(v);
    }
    debug_assert!(basis.iter().all(|v| is_kernel_vector(m, v, field)));
    Ok(basis)
}

/// `cols - rank`, computed under both primes; the value is returned only when
/// the two agree.
pub fn solution_dim(m: &SparseMatrix, f1: &FieldSpec, f2: &FieldSpec) -> Result<usize> {
    let r1 = rank_mod_p(m, f1)?;
    let r2 = rank_mod_p(m, f2)?;
    if r1 != r2 {
        return Err(Error::PrimeDisagreement {
            p1: f1.prime,
            p2: f2.prime,
            p1_value: m.cols - r1,
            p2_value: m.cols - r2,
            fingerprint: m.fingerprint(),
        });
    }
    Ok(m.cols - r1)
}

/// Rank under both primes, returned only on agreement.
pub fn rank_two_primes(m: &SparseMatrix, f1: &FieldSpec, f2: &FieldSpec) -> Result<usize> {
    solution_dim(m, f1, f2).map(|d| m.cols - d)
}

/// Checks `m v = 0` in the field.
pub fn is_kernel_vector(m: &SparseMatrix, v: &[u64], field: &FieldSpec) -> bool {
    let mut acc = vec![0u64; m.rows];
    for &(r, c, x) in &m.entries {
        acc[r] = (acc[r] + field.reduce(x) * v[c] % field.prime) % field.prime;
    }
    acc.iter().all(|&x| x == 0)
}

/// In-place RREF with pivots chosen column by column, lowest row first.
/// Returns the pivot columns; the first `pivots.len()` rows hold the result.
fn dense_rref(a: &mut [Vec<u64>], field: &FieldSpec) -> Vec<usize> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        let inv = field.inv(a[r][c]);
        for x in a[r][c..].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let (head, tail) = a.split_at_mut(r);
        let (pivot_row, rest) = tail.split_first_mut().unwrap();
        for row in head.iter_mut().chain(rest.iter_mut()) {
            let f = row[c];
            if f != 0 {
                for (x, &y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    if y != 0 {
                        *x = field.sub(*x, field.mul(f, y));
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Sparse rank by right-looking elimination. The pivot row is the shortest
/// active row (lowest index on ties); within it the pivot column is the one
/// with the fewest active entries (lowest index on ties), which minimizes the
/// Markowitz cost over that row.
fn markowitz_rank(mut rows: Vec<Vec<(usize, u64)>>, cols: usize, field: &FieldSpec) -> Result<usize> {
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); cols];
    let mut col_count = vec![0usize; cols];
    let mut heap = BinaryHeap::new();
    for (r, row) in rows.iter().enumerate() {
        for &(c, _) in row {
            col_rows[c].push(r);
            col_count[c] += 1;
        }
        if !row.is_empty() {
            heap.push(Reverse((row.len(), r)));
        }
    }
    let mut active = vec![true; rows.len()];
    let mut rank = 0;
    let mut scratch = Vec::new();

    while let Some(Reverse((len, pr))) = heap.pop() {
        if !active[pr] || rows[pr].len() != len {
            continue;
        }
        if len == 0 {
            active[pr] = false;
            continue;
        }
        let &(pc, pv) = rows[pr]
            .iter()
            .min_by_key(|&&(c, _)| (col_count[c], c))
            .expect("nonempty row");
        active[pr] = false;
        rank += 1;
        let pivot_row = std::mem::take(&mut rows[pr]);
        for &(c, _) in &pivot_row {
            col_count[c] -= 1;
        }
        let inv = field.inv(pv);

        let targets = std::mem::take(&mut col_rows[pc]);
        for &r in &targets {
            if !active[r] {
                continue;
            }
            let Ok(pos) = rows[r].binary_search_by_key(&pc, |&(c, _)| c) else {
                continue;
            };
            let f = field.mul(rows[r][pos].1, inv);
            scratch.clear();
            let old = std::mem::take(&mut rows[r]);
            let (mut i, mut j) = (0, 0);
            while i < old.len() || j < pivot_row.len() {
                let take_old = j == pivot_row.len() || (i < old.len() && old[i].0 < pivot_row[j].0);
                let take_piv = i == old.len() || (j < pivot_row.len() && pivot_row[j].0 < old[i].0);
                if take_old {
                    scratch.push(old[i]);
                    i += 1;
                } else if take_piv {
                    let (c, y) = pivot_row[j];
                    scratch.push((c, field.sub(0, field.mul(f, y))));
                    col_count[c] += 1;
                    col_rows[c].push(r);
                    j += 1;
                } else {
                    let (c, x) = old[i];
                    let v = field.sub(x, field.mul(f, pivot_row[j].1));
                    if v != 0 {
                        scratch.push((c, v));
                    } else {
                        col_count[c] -= 1;
                    }
                    i += 1;
                    j += 1;
                }
            }
            rows[r] = scratch.clone();
            heap.push(Reverse((rows[r].len(), r)));
        }
    }
    Ok(rank)
}

/// Sparse RREF by row insertion against normalized pivot rows, followed by
/// back substitution. Returns pivot columns (ascending) and matching rows.
fn sparse_rref(rows: Vec<Vec<(usize, u64)>>, cols: usize, field: &FieldSpec) -> (Vec<usize>, Vec<Vec<(usize, u64)>>) {
    let mut pivot_of: Vec<Option<usize>> = vec![None; cols];
    let mut pivot_rows: Vec<Vec<(usize, u64)>> = Vec::new();
    let mut acc = vec![0u64; cols];
    for row in rows {
        if row.is_empty() {
            continue;
        }
        let start = row[0].0;
        for (c, x) in row {
            acc[c] = x;
        }
        let mut lead = None;
        for c in start..cols {
            let x = acc[c];
            if x == 0 {
                continue;
            }
            match pivot_of[c] {
                Some(p) => {
                    for &(cc, y) in &pivot_rows[p] {
                        acc[cc] = field.sub(acc[cc], field.mul(x, y));
                    }
                }
                None => {
                    if lead.is_none() {
                        lead = Some(c);
                    }
                }
            }
        }
        if let Some(c) = lead {
            let inv = field.inv(acc[c]);
            let new_row: Vec<(usize, u64)> =
                (c..cols).filter(|&k| acc[k] != 0).map(|k| (k, field.mul(acc[k], inv))).collect();
            pivot_of[c] = Some(pivot_rows.len());
            pivot_rows.push(new_row);
        }
        acc.iter_mut().for_each(|x| *x = 0);
    }

    // Back substitution: clear each pivot column from the rows above it,
    // highest pivot first so cleared entries are not reintroduced.
    let mut order: Vec<usize> = (0..cols).filter(|&c| pivot_of[c].is_some()).collect();
    for &pc in order.iter().rev() {
        let p = pivot_of[pc].unwrap();
        let pivot_row = pivot_rows[p].clone();
        for &oc in order.iter().filter(|&&oc| oc < pc) {
            let q = pivot_of[oc].unwrap();
            let row = &mut pivot_rows[q];
            let Ok(pos) = row.binary_search_by_key(&pc, |&(c, _)| c) else {
                continue;
            };
            let f = row[pos].1;
            let mut dense: std::collections::BTreeMap<usize, u64> = row.iter().copied().collect();
            for &(c, y) in &pivot_row {
                let e = dense.entry(c).or_insert(0);
                *e = field.sub(*e, field.mul(f, y));
            }
            *row = dense.into_iter().filter(|&(_, x)| x != 0).collect();
        }
    }
    order.sort_unstable();
    let rows = order.iter().map(|&c| pivot_rows[pivot_of[c].unwrap()].clone()).collect();
    (order, rows)
}
