//! Prime-field and exact integer linear algebra.
//!
//! A [`PrimeField`] is a validated modulus acting as a shared context:
//! elements are plain `u64` values in `[0, p)` and every operation takes the
//! field explicitly. Keeping the modulus out of the element type makes
//! modulus mismatches impossible within one call; containers that carry
//! their own field ([`FieldMatrix`], subspaces, point sets) check moduli
//! when they meet.
//!
//! Integer matrices use arbitrary-precision entries so that fraction-free
//! elimination is exact no matter how entries grow.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// A vector over a prime field; entries must be canonical (`< p`) with the
/// field supplied by context.
pub type FieldVector = Vec<u64>;

/// Deterministic Miller-Rabin, valid for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// The largest prime in the half-open interval `(lo, hi]`.
pub fn bertrand_prime(lo: u64, hi: u64) -> Result<u64> {
    let mut n = hi;
    while n > lo && n >= 2 {
        if is_prime(n) {
            return Ok(n);
        }
        n -= 1;
    }
    Err(Error::NoPrimeInRange { lo, hi })
}

/// The representative of `a mod p` in `(-p/2, p/2]`.
pub fn centered_residue(a: u64, p: u64) -> i64 {
    let a = a % p;
    if 2 * a <= p {
        a as i64
    } else {
        a as i64 - p as i64
    }
}

/// A prime modulus, validated at construction, acting as the arithmetic
/// context for `u64` field elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Canonicalizes an arbitrary signed integer into `[0, p)`.
    pub fn elem(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.p)
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        pow_mod(a, e, self.p)
    }

    /// Multiplicative inverse by Fermat's little theorem.
    pub fn inv(&self, a: u64) -> Result<u64> {
        if a % self.p == 0 {
            return Err(Error::ZeroInverse { p: self.p });
        }
        Ok(self.pow(a, self.p - 2))
    }

    /// Errors unless `other` is the same modulus.
    pub fn require_same(&self, other: &PrimeField) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch { left: self.p, right: other.p });
        }
        Ok(())
    }
}

/// Result of reduced row-echelon elimination.
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: FieldMatrix,
    pub rank: usize,
    /// Pivot column of each of the first `rank` rows, strictly increasing.
    pub pivots: Vec<usize>,
}

/// A dense row-major matrix over a prime field. Entries are canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FieldMatrix {
    pub fn zero(field: PrimeField, rows: usize, cols: usize) -> Self {
        FieldMatrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    /// Builds a matrix from rows of signed integers, canonicalizing mod `p`.
    /// All rows must share a length. A rowless matrix gets zero columns;
    /// use [`FieldMatrix::from_rows_dim`] when the width matters anyway.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows_dim(field, rows, rows.first().map_or(0, |r| r.len()))
    }

    /// Like [`FieldMatrix::from_rows`] with an explicit column count, so
    /// zero-row matrices keep their width.
    pub fn from_rows_dim(field: PrimeField, rows: &[Vec<i64>], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: r.len() });
            }
            data.extend(r.iter().map(|&a| field.elem(a)));
        }
        Ok(FieldMatrix { field, rows: rows.len(), cols, data })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v % self.field.p();
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Matrix-vector product `M x`.
    pub fn mul_vec(&self, x: &[u64]) -> Result<Vec<u64>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: x.len() });
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .fold(0u64, |acc, (&m, &v)| f.add(acc, f.mul(m, v)))
            })
            .collect())
    }

    /// Reduced row-echelon form by Gauss-Jordan elimination.
    pub fn rref(&self) -> Rref {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    let (a, b) = (m.get(r, j), m.get(pr, j));
                    m.set(r, j, b);
                    m.set(pr, j, a);
                }
            }
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                m.set(r, j, f.mul(m.get(r, j), inv));
            }
            for i in 0..m.rows {
                if i != r && m.get(i, c) != 0 {
                    let factor = m.get(i, c);
                    for j in c..m.cols {
                        let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, rank: r, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Canonical basis of the right kernel `{x : Mx = 0}`.
    ///
    /// One basis vector per free column `c`, carrying 1 at `c`, zeros at the
    /// other free columns, and the negated reduced column at the pivots;
    /// vectors are ordered by ascending free column.
    pub fn kernel_basis(&self) -> Vec<FieldVector> {
        let f = self.field;
        let Rref { matrix, pivots, .. } = self.rref();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = Some(i);
            }
            v
        };
        let mut basis = Vec::new();
        for c in 0..self.cols {
            if pivot_of_col[c].is_some() {
                continue;
            }
            let mut x = vec![0u64; self.cols];
            x[c] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                x[pc] = f.neg(matrix.get(i, c));
            }
            basis.push(x);
        }
        basis
    }
}

/// A dense row-major matrix over the integers with arbitrary-precision
/// entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: r.len() });
            }
            data.extend(r.iter().map(|&a| BigInt::from(a)));
        }
        Ok(IntegerMatrix { rows: rows.len(), cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }
}

/// Exact rank over the rationals, by Bareiss fraction-free elimination.
///
/// All divisions in the Bareiss recurrence are exact, so the result is the
/// true rank regardless of entry growth.
pub fn integer_rank(m: &IntegerMatrix) -> usize {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<Vec<BigInt>> =
        (0..rows).map(|r| (0..cols).map(|c| m.get(r, c).clone()).collect()).collect();
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pr) = (rank..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, pr);
        for i in rank + 1..rows {
            for j in c + 1..cols {
                let num = &a[rank][c] * &a[i][j] - &a[i][c] * &a[rank][j];
                a[i][j] = num / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}

/// Exact rank of signed-integer rows; convenience wrapper over
/// [`integer_rank`].
pub fn integer_rank_rows(rows: &[Vec<i64>]) -> Result<usize> {
    Ok(integer_rank(&IntegerMatrix::from_rows(rows)?))
}

/// Incremental exact rank tracker over `Z` (fraction-free row echelon).
///
/// Rows are absorbed one at a time; the tracker reports whether each row
/// increased the rank, and an insertion can be undone in O(1), which lets
/// backtracking searches share one tracker instead of cloning. The fast
/// path uses checked `i128` arithmetic and falls back to arbitrary
/// precision when a product would overflow, so results are always exact.
#[derive(Debug, Clone, Default)]
pub struct IntEchelon {
    /// Rows ordered by leading column (each row's first nonzero entry).
    rows: Vec<Vec<BigInt>>,
    leads: Vec<usize>,
}

/// Receipt for one [`IntEchelon::absorb`] / [`ModEchelon::absorb`] call;
/// hand it back to `undo` to restore the previous state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Absorbed {
    /// The vector was independent; a row was inserted at this position.
    Grew(usize),
    /// The vector reduced to zero; nothing was stored.
    Dependent,
}

impl Absorbed {
    pub fn grew(&self) -> bool {
        matches!(self, Absorbed::Grew(_))
    }
}

impl IntEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows; if a nonzero residual remains it
    /// is stored and the rank grows.
    pub fn absorb(&mut self, v: &[i64]) -> Absorbed {
        if let Some(receipt) = self.absorb_i128(v) {
            return receipt;
        }
        let big: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        self.absorb_big(big)
    }

    /// Reverts the matching `absorb`. Only the most recent growth may be
    /// undone (insertions never mutate other rows, so removal restores the
    /// exact prior state).
    pub fn undo(&mut self, receipt: Absorbed) {
        if let Absorbed::Grew(at) = receipt {
            self.rows.remove(at);
            self.leads.remove(at);
        }
    }

    /// `i128` fast path; `None` means a product overflowed and the caller
    /// must redo the reduction in arbitrary precision.
    fn absorb_i128(&mut self, v: &[i64]) -> Option<Absorbed> {
        let mut w: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        for (row, &lead) in self.rows.iter().zip(&self.leads) {
            if w[lead] == 0 {
                continue;
            }
            let pivot = i128::try_from(&row[lead]).ok()?;
            let coeff = w[lead];
            for (j, wj) in w.iter_mut().enumerate() {
                let rj = i128::try_from(&row[j]).ok()?;
                *wj = pivot.checked_mul(*wj)?.checked_sub(coeff.checked_mul(rj)?)?;
            }
            debug_assert_eq!(w[lead], 0);
        }
        let Some(lead) = w.iter().position(|&x| x != 0) else {
            return Some(Absorbed::Dependent);
        };
        Some(self.insert(w.into_iter().map(BigInt::from).collect(), lead))
    }

    fn absorb_big(&mut self, mut w: Vec<BigInt>) -> Absorbed {
        for (row, &lead) in self.rows.iter().zip(&self.leads) {
            if w[lead].is_zero() {
                continue;
            }
            let pivot = row[lead].clone();
            let coeff = w[lead].clone();
            for (j, wj) in w.iter_mut().enumerate() {
                *wj = &pivot * &*wj - &coeff * &row[j];
            }
        }
        match w.iter().position(|x| !x.is_zero()) {
            Some(lead) => self.insert(w, lead),
            None => Absorbed::Dependent,
        }
    }

    /// Stores a reduced row, gcd-normalized to slow entry growth, keeping
    /// rows sorted by leading column so reduction sweeps left to right.
    fn insert(&mut self, mut w: Vec<BigInt>, lead: usize) -> Absorbed {
        let mut g = BigInt::zero();
        for x in &w {
            g = num_integer::Integer::gcd(&g, x);
        }
        if g.abs() > BigInt::from(1) {
            for x in w.iter_mut() {
                *x = &*x / &g;
            }
        }
        let at = self.leads.partition_point(|&l| l < lead);
        self.leads.insert(at, lead);
        self.rows.insert(at, w);
        Absorbed::Grew(at)
    }
}

/// Incremental rank tracker over a prime field (row echelon mod `p`), with
/// the same O(1) undo as [`IntEchelon`].
#[derive(Debug, Clone)]
pub struct ModEchelon {
    field: PrimeField,
    rows: Vec<Vec<u64>>,
    leads: Vec<usize>,
}

impl ModEchelon {
    pub fn new(field: PrimeField) -> Self {
        ModEchelon { field, rows: Vec::new(), leads: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` mod the stored rows; stores the normalized residual if
    /// nonzero.
    pub fn absorb(&mut self, v: &[u64]) -> Absorbed {
        let f = self.field;
        let mut w = v.to_vec();
        for (row, &lead) in self.rows.iter().zip(&self.leads) {
            if w[lead] == 0 {
                continue;
            }
            let coeff = w[lead];
            for (wj, rj) in w.iter_mut().zip(row) {
                *wj = f.sub(*wj, f.mul(coeff, *rj));
            }
        }
        match w.iter().position(|&x| x != 0) {
            Some(lead) => {
                let inv = f.inv(w[lead]).expect("leading entry is nonzero");
                for wj in w.iter_mut() {
                    *wj = f.mul(*wj, inv);
                }
                let at = self.leads.partition_point(|&l| l < lead);
                self.leads.insert(at, lead);
                self.rows.insert(at, w);
                Absorbed::Grew(at)
            }
            None => Absorbed::Dependent,
        }
    }

    /// Reverts the matching `absorb` (see [`IntEchelon::undo`]).
    pub fn undo(&mut self, receipt: Absorbed) {
        if let Absorbed::Grew(at) = receipt {
            self.rows.remove(at);
            self.leads.remove(at);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_small_examples() {
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.add(3, 4), 2);
        assert_eq!(f5.sub(1, 3), 3);
        assert_eq!(f5.mul(3, 4), 2);
        assert_eq!(f5.neg(2), 3);
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(f7.inv(3).unwrap(), 5);
        assert!(matches!(f7.inv(0), Err(Error::ZeroInverse { p: 7 })));
        assert!(matches!(PrimeField::new(6), Err(Error::NotPrime(6))));
        assert!(matches!(PrimeField::new(1), Err(Error::NotPrime(1))));
    }

    #[test]
    fn inverse_matches_exhaustive_search() {
        for p in [2u64, 3, 5, 7, 11, 13, 53, 97] {
            let f = PrimeField::new(p).unwrap();
            for a in 1..p {
                let inv = f.inv(a).unwrap();
                assert_eq!(f.mul(a, inv), 1, "a={a} p={p}");
                let brute = (1..p).find(|&b| f.mul(a, b) == 1).unwrap();
                assert_eq!(inv, brute);
            }
        }
    }

    #[test]
    fn rref_examples() {
        let f2 = PrimeField::new(2).unwrap();
        let m = FieldMatrix::from_rows(f2, &[vec![1, 1], vec![0, 1]]).unwrap();
        let r = m.rref();
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.matrix.to_rows(), vec![vec![1, 0], vec![0, 1]]);

        let f5 = PrimeField::new(5).unwrap();
        let m = FieldMatrix::from_rows(f5, &[vec![2, 4], vec![1, 2]]).unwrap();
        let r = m.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.matrix.to_rows(), vec![vec![1, 2], vec![0, 0]]);
    }

    #[test]
    fn rref_is_idempotent() {
        let f7 = PrimeField::new(7).unwrap();
        let m =
            FieldMatrix::from_rows(f7, &[vec![3, 1, 4], vec![1, 5, 2], vec![4, 6, 6]]).unwrap();
        let once = m.rref().matrix;
        let twice = once.rref().matrix;
        assert_eq!(once, twice);
    }

    #[test]
    fn kernel_dimension_is_cols_minus_rank() {
        let f3 = PrimeField::new(3).unwrap();
        let m = FieldMatrix::from_rows(f3, &[vec![1, 2, 0, 1], vec![0, 0, 1, 2]]).unwrap();
        let basis = m.kernel_basis();
        assert_eq!(basis.len(), m.cols() - m.rank());
        for x in &basis {
            assert!(m.mul_vec(x).unwrap().iter().all(|&v| v == 0));
        }
        // Kernel vectors are canonical: identity on the free coordinates.
        assert_eq!(basis[0][1], 1);
        assert_eq!(basis[0][3], 0);
        assert_eq!(basis[1][1], 0);
        assert_eq!(basis[1][3], 1);
    }

    #[test]
    fn integer_rank_examples() {
        assert_eq!(integer_rank_rows(&[vec![1, 2], vec![2, 4]]).unwrap(), 1);
        assert_eq!(integer_rank_rows(&[vec![2, 0], vec![0, 3]]).unwrap(), 2);
        assert_eq!(integer_rank_rows(&[vec![0, 0], vec![0, 0]]).unwrap(), 0);
        // Rank must be computed exactly: these rows are dependent over Q
        // but no pair is proportional.
        assert_eq!(
            integer_rank_rows(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]).unwrap(),
            2
        );
    }

    #[test]
    fn int_echelon_matches_batch_rank() {
        let sets: Vec<Vec<Vec<i64>>> = vec![
            vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9], vec![1, 0, 0]],
            vec![vec![2, 4], vec![3, 6], vec![1, 1]],
            vec![vec![0, 0, 0], vec![5, -3, 2]],
        ];
        for rows in sets {
            let mut ech = IntEchelon::new();
            for (i, r) in rows.iter().enumerate() {
                let receipt = ech.absorb(r);
                let batch = integer_rank_rows(&rows[..=i]).unwrap();
                assert_eq!(ech.rank(), batch);
                assert_eq!(receipt.grew(), batch > integer_rank_rows(&rows[..i]).unwrap());
            }
        }
    }

    #[test]
    fn echelon_undo_restores_prior_state() {
        let mut ech = IntEchelon::new();
        ech.absorb(&[1, 2, 3]);
        ech.absorb(&[0, 1, 1]);
        let snapshot = ech.clone();
        let receipt = ech.absorb(&[5, 0, 0]);
        assert!(receipt.grew());
        assert_eq!(ech.rank(), 3);
        ech.undo(receipt);
        assert_eq!(ech.rank(), 2);
        assert_eq!(format!("{ech:?}"), format!("{snapshot:?}"));
        // Dependent absorbs undo to a no-op.
        let receipt = ech.absorb(&[1, 3, 4]);
        assert!(!receipt.grew());
        ech.undo(receipt);
        assert_eq!(format!("{ech:?}"), format!("{snapshot:?}"));
    }

    #[test]
    fn mod_echelon_matches_rref_rank() {
        let f5 = PrimeField::new(5).unwrap();
        let rows = vec![vec![1i64, 2, 3], vec![2, 4, 6], vec![1, 1, 1], vec![0, 1, 2]];
        let mut ech = ModEchelon::new(f5);
        for i in 0..rows.len() {
            ech.absorb(&rows[i].iter().map(|&x| f5.elem(x)).collect::<Vec<_>>());
            let m = FieldMatrix::from_rows(f5, &rows[..=i]).unwrap();
            assert_eq!(ech.rank(), m.rank());
        }
    }

    #[test]
    fn bertrand_prime_examples() {
        assert_eq!(bertrand_prime(2, 4).unwrap(), 3);
        assert_eq!(bertrand_prime(10, 20).unwrap(), 19);
        assert_eq!(bertrand_prime(50, 100).unwrap(), 97);
        assert!(matches!(bertrand_prime(24, 28), Err(Error::NoPrimeInRange { lo: 24, hi: 28 })));
    }

    #[test]
    fn bertrand_interval_always_contains_a_prime() {
        // Sieve oracle up to 2e5, then check every interval (n, 2n].
        let limit = 200_001usize;
        let mut composite = vec![false; limit];
        for i in 2..limit {
            if !composite[i] {
                let mut j = i * i;
                while j < limit {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        let largest_in = |lo: usize, hi: usize| -> Option<usize> {
            (lo + 1..=hi).rev().find(|&i| i >= 2 && !composite[i])
        };
        for n in 2..=100_000usize {
            let got = bertrand_prime(n as u64, 2 * n as u64).unwrap();
            assert_eq!(got as usize, largest_in(n, 2 * n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn centered_residue_examples() {
        assert_eq!(centered_residue(4, 5), -1);
        assert_eq!(centered_residue(3, 5), -2);
        assert_eq!(centered_residue(2, 5), 2);
        assert_eq!(centered_residue(0, 5), 0);
        assert_eq!(centered_residue(1, 2), 1);
        for p in [2u64, 3, 5, 7, 11] {
            for a in 0..p {
                let y = centered_residue(a, p);
                assert!(2 * y > -(p as i64) && 2 * y <= p as i64);
                assert_eq!(y.rem_euclid(p as i64) as u64, a);
            }
        }
    }
}
