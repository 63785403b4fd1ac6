//! Exact linear algebra: dense matrices over a field scalar and exact
//! kernel dimensions of integer matrices.
//!
//! Kernel dimensions are always computed with exact arithmetic.  Three
//! routes exist, all returning the same number:
//!
//!  * generic Gaussian elimination over a field scalar with
//!    deterministic first-nonzero pivoting (the reference route);
//!  * sparse fraction-free elimination over the integers with per-row
//!    pivot epochs, which keeps banded and locally sparse inputs cheap;
//!  * a certified shortcut for large integer matrices: a rank lower
//!    bound modulo a fixed prime plus exactly verified integer kernel
//!    vectors.  When the certificate does not close, the fraction-free
//!    route decides.
//!
//! The shortcut never returns an uncertified answer: `rank mod p` can
//! only undercount the rational rank, and every claimed kernel vector is
//! checked by exact integer arithmetic.

use num_integer::Integer;
use num_traits::{Num, One, Zero};
use crate::BigInt;

/// Dense rectangular matrix over an exact scalar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }
}

/// Rank by Gaussian elimination over a field scalar, pivoting on the
/// first nonzero entry in column order.
pub fn exact_rank<T: Num + Clone>(m: &Matrix<T>) -> usize {
    let mut a: Vec<Vec<T>> = (0..m.rows)
        .map(|i| (0..m.cols).map(|j| m.get(i, j).clone()).collect())
        .collect();
    let mut rank = 0;
    for col in 0..m.cols {
        let Some(p) = (rank..m.rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let inv_pivot = T::one() / a[rank][col].clone();
        for i in rank + 1..m.rows {
            if a[i][col].is_zero() {
                continue;
            }
            let factor = a[i][col].clone() * inv_pivot.clone();
            for j in col..m.cols {
                let s = a[rank][j].clone() * factor.clone();
                a[i][j] = a[i][j].clone() - s;
            }
        }
        rank += 1;
        if rank == m.rows {
            break;
        }
    }
    rank
}

/// `cols - rank`, the exact kernel dimension.
pub fn exact_nullity<T: Num + Clone>(m: &Matrix<T>) -> usize {
    m.cols() - exact_rank(m)
}

/// Sparse integer matrix given by sorted `(column, value)` rows.
pub type SparseIntRows = Vec<Vec<(usize, i64)>>;

/// Exact nullity of a sparse integer matrix.
///
/// Tries the certified modular shortcut first and falls back to
/// fraction-free elimination when the certificate does not close.
pub fn integer_nullity(cols: usize, rows: &SparseIntRows) -> usize {
    if let Some(n) = certified_nullity(cols, rows) {
        return n;
    }
    fraction_free_nullity(cols, rows)
}

/// Fraction-free Gaussian elimination with per-row pivot epochs.
///
/// Entries of a row with epoch `a` are the Bareiss minors after `a`
/// elimination steps; rows with a zero entry in the pivot column are
/// left untouched (their later update divides by their own epoch pivot),
/// so banded inputs never fill in.
pub fn fraction_free_nullity(cols: usize, rows: &SparseIntRows) -> usize {
    // sparse rows as sorted (col, BigInt) vectors
    let mut a: Vec<Vec<(usize, BigInt)>> = rows
        .iter()
        .map(|r| {
            let mut r: Vec<(usize, BigInt)> = r
                .iter()
                .filter(|(_, v)| *v != 0)
                .map(|&(c, v)| (c, BigInt::from(v)))
                .collect();
            r.sort_by_key(|&(c, _)| c);
            r
        })
        .collect();
    let mut epoch = vec![0usize; a.len()];
    // true Bareiss pivots; pivot_val[k] is the k-th pivot (1-indexed), with
    // pivot_val[0] = 1
    let mut pivot_val: Vec<BigInt> = vec![BigInt::one()];
    let mut used = vec![false; a.len()];
    let mut rank = 0usize;

    let entry = |row: &Vec<(usize, BigInt)>, col: usize| -> Option<BigInt> {
        row.binary_search_by_key(&col, |&(c, _)| c)
            .ok()
            .map(|k| row[k].1.clone())
    };

    for col in 0..cols {
        let Some(pr) = (0..a.len())
            .find(|&i| !used[i] && entry(&a[i], col).is_some())
        else {
            continue;
        };
        used[pr] = true;
        let b = epoch[pr];
        let pivot_entry = entry(&a[pr], col).unwrap();
        // true pivot t_{k+1} = pivot_entry * t_k / t_b
        let k = rank;
        let t_next = &pivot_entry * &pivot_val[k] / &pivot_val[b];
        let scale_num = &pivot_val[k];
        for i in 0..a.len() {
            if used[i] || i == pr {
                continue;
            }
            let Some(ric) = entry(&a[i], col) else { continue };
            let ta = &pivot_val[epoch[i]];
            let denom = ta * &pivot_val[b];
            // merge rows: new[j] = (Ri[j]*Rr[c] - Ri[c]*Rr[j]) * t_k / (t_a t_b)
            let mut out: Vec<(usize, BigInt)> = Vec::with_capacity(a[i].len() + a[pr].len());
            let (ri, rr) = (&a[i], &a[pr]);
            let (mut x, mut y) = (0usize, 0usize);
            while x < ri.len() || y < rr.len() {
                let (c_out, raw) = match (ri.get(x), rr.get(y)) {
                    (Some(&(ci, ref vi)), Some(&(cj, ref vj))) if ci == cj => {
                        x += 1;
                        y += 1;
                        (ci, vi * &pivot_entry - &ric * vj)
                    }
                    (Some(&(ci, ref vi)), Some(&(cj, _))) if ci < cj => {
                        x += 1;
                        (ci, vi * &pivot_entry)
                    }
                    (Some(&(ci, ref vi)), None) => {
                        x += 1;
                        (ci, vi * &pivot_entry)
                    }
                    (_, Some(&(cj, ref vj))) => {
                        y += 1;
                        (cj, -(&ric * vj))
                    }
                    (None, None) => unreachable!(),
                };
                if c_out == col || raw.is_zero() {
                    continue;
                }
                let scaled = raw * scale_num;
                let (q, r) = scaled.div_rem(&denom);
                debug_assert!(r.is_zero(), "fraction-free update not exact");
                out.push((c_out, q));
            }
            a[i] = out;
            epoch[i] = k + 1;
        }
        pivot_val.push(t_next);
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    cols - rank
}

const MODULUS: u64 = 2_147_483_647; // 2^31 - 1, prime

fn mulmod(a: u64, b: u64) -> u64 {
    a * b % MODULUS
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn invmod(a: u64) -> u64 {
    powmod(a, MODULUS - 2)
}

fn reduce(v: i64) -> u64 {
    v.rem_euclid(MODULUS as i64) as u64
}

/// Certified nullity shortcut.  Returns `None` when no certificate is
/// obtained (the caller then decides by fraction-free elimination).
fn certified_nullity(cols: usize, rows: &SparseIntRows) -> Option<usize> {
    // reduced row echelon form mod p
    let mut a: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            let mut row = vec![0u64; cols];
            for &(c, v) in r {
                row[c] = (row[c] + reduce(v)) % MODULUS;
            }
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(p) = (rank..a.len()).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(rank, p);
        let inv = invmod(a[rank][col]);
        for j in col..cols {
            a[rank][j] = mulmod(a[rank][j], inv);
        }
        for i in 0..a.len() {
            if i == rank || a[i][col] == 0 {
                continue;
            }
            let f = a[i][col];
            for j in col..cols {
                let s = mulmod(f, a[rank][j]);
                a[i][j] = (a[i][j] + MODULUS - s) % MODULUS;
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    let candidate = cols - rank; // upper bound: rank mod p <= rank over Q
    if candidate == 0 {
        return Some(0);
    }
    // kernel basis mod p in RREF coordinates; attempt rational
    // reconstruction of the entries and verify A v = 0 exactly.
    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    for &fc in &free_cols {
        let mut v_mod = vec![0u64; cols];
        v_mod[fc] = 1;
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v_mod[pc] = (MODULUS - a[r][fc]) % MODULUS;
        }
        let v = lift_vector(&v_mod)?;
        if !kernel_vector_checks(rows, &v) {
            return None;
        }
    }
    Some(candidate)
}

/// Lifts a mod-p vector to integers: rationally reconstructs each entry
/// and clears denominators.  Returns `None` when any entry has no small
/// reconstruction.
fn lift_vector(v_mod: &[u64]) -> Option<Vec<BigInt>> {
    let mut nums: Vec<(i64, i64)> = Vec::with_capacity(v_mod.len());
    let mut lcm: i64 = 1;
    for &x in v_mod {
        let (n, d) = rational_reconstruct(x)?;
        lcm = lcm.checked_mul(d / lcm.gcd(&d))?;
        nums.push((n, d));
    }
    Some(
        nums.into_iter()
            .map(|(n, d)| BigInt::from(n) * BigInt::from(lcm / d))
            .collect(),
    )
}

/// Finds `n/d = x (mod p)` with `|n| <= 30000`, `0 < d <= 30000` by the
/// half-extended Euclidean algorithm.
fn rational_reconstruct(x: u64) -> Option<(i64, i64)> {
    const BOUND: i64 = 30_000;
    let (mut r0, mut r1) = (MODULUS as i64, x as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 > BOUND {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > BOUND {
        return None;
    }
    let (n, d) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
    if n.gcd(&d) != 1 {
        return None;
    }
    Some((n, d))
}

fn kernel_vector_checks(rows: &SparseIntRows, v: &[BigInt]) -> bool {
    rows.iter().all(|row| {
        let mut acc = BigInt::zero();
        for &(c, coef) in row {
            acc += BigInt::from(coef) * &v[c];
        }
        acc.is_zero()
    })
}

/// Convenience: exact nullity of a dense integer matrix.
pub fn integer_nullity_dense(rows: &[Vec<i64>]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let sparse: SparseIntRows = rows
        .iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(|(c, &v)| (c, v))
                .collect()
        })
        .collect();
    integer_nullity(cols, &sparse)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat_int, Rat, RatMatrix};

    fn rmat(rows: &[&[i64]]) -> RatMatrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat_int(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn nullity_zero_matrix() {
        assert_eq!(exact_nullity(&RatMatrix::zero(3, 3)), 3);
    }

    #[test]
    fn nullity_identity() {
        assert_eq!(exact_nullity(&RatMatrix::identity(3)), 0);
    }

    #[test]
    fn nullity_all_ones() {
        let m = rmat(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]]);
        assert_eq!(exact_nullity(&m), 2);
    }

    #[test]
    fn nullity_rectangular() {
        let m = rmat(&[&[1, 2, 3, 4], &[2, 4, 6, 8]]);
        assert_eq!(exact_nullity(&m), 3);
    }

    #[test]
    fn engines_agree_on_structured_cases() {
        let cases: Vec<Vec<Vec<i64>>> = vec![
            vec![vec![0, 0], vec![0, 0]],
            vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]],
            vec![vec![1, 2], vec![3, 4], vec![5, 6]],
            vec![vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]],
        ];
        for dense in cases {
            let m = Matrix::from_rows(
                dense
                    .iter()
                    .map(|r| r.iter().map(|&v| rat_int(v)).collect())
                    .collect::<Vec<Vec<Rat>>>(),
            );
            let a = exact_nullity(&m);
            let b = integer_nullity_dense(&dense);
            let sparse: SparseIntRows = dense
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(_, &v)| v != 0)
                        .map(|(c, &v)| (c, v))
                        .collect()
                })
                .collect();
            let c = fraction_free_nullity(dense[0].len(), &sparse);
            assert_eq!(a, b);
            assert_eq!(a, c);
        }
    }

    #[test]
    fn circulant_laplacian_nullity_is_one() {
        // 2 - s - s^{-1} on Z/n has exactly the constants in its kernel
        for n in [3usize, 10, 37] {
            let rows: SparseIntRows = (0..n)
                .map(|i| {
                    let mut r = vec![(i, 2i64)];
                    let prev = (i + n - 1) % n;
                    let next = (i + 1) % n;
                    if prev == next {
                        r.push((next, -2));
                    } else {
                        r.push((prev, -1));
                        r.push((next, -1));
                    }
                    r.sort_by_key(|&(c, _)| c);
                    r
                })
                .collect();
            assert_eq!(integer_nullity(n, &rows), 1);
            assert_eq!(fraction_free_nullity(n, &rows), 1);
        }
    }

    #[test]
    fn rational_reconstruction_round_trip() {
        for (n, d) in [(1i64, 3i64), (-7, 2), (25, 1), (0, 1), (-29999, 29989)] {
            let x = (BigInt::from(n) * BigInt::from(invmod(reduce(d)) as i64))
                .mod_floor(&BigInt::from(MODULUS));
            let x: u64 = x.to_string().parse().unwrap();
            assert_eq!(rational_reconstruct(x), Some((n, d)));
        }
    }
}
