//! Linear subspaces and affine flats of `F_p^d`, with exhaustive
//! enumeration.
//!
//! Every subspace is stored as its unique reduced-row-echelon basis, so two
//! equal subspaces compare equal structurally. An affine flat is a
//! direction subspace plus the canonical coset representative (the unique
//! point of the flat whose pivot coordinates are all zero).
//!
//! Enumeration is lexicographic: pivot-column sets in lexicographic order,
//! free entries in row-major odometer order, and for flats the base point's
//! free coordinates in ascending-column odometer order. Totals match the
//! Gaussian binomial exactly and are charged against a work budget before
//! iteration starts.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{charge, Error, Result};
use crate::field::{FieldMatrix, IntEchelon, ModEchelon, PrimeField};
use crate::points::{Domain, PointSet};

/// A linear subspace of `F_p^d` in canonical (RREF basis) form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSubspace {
    /// `dim x ambient_dim` matrix in RREF with no zero rows.
    basis: FieldMatrix,
    pivots: Vec<usize>,
}

impl LinearSubspace {
    /// The subspace of `F_p^ambient` spanned by the given vectors (not
    /// necessarily independent; possibly none).
    pub fn span(field: PrimeField, ambient: usize, vectors: &[Vec<u64>]) -> Result<Self> {
        let rows: Vec<Vec<i64>> =
            vectors.iter().map(|v| v.iter().map(|&x| x as i64).collect()).collect();
        let m = FieldMatrix::from_rows_dim(field, &rows, ambient)?;
        let r = m.rref();
        let basis_rows: Vec<Vec<i64>> = (0..r.rank)
            .map(|i| r.matrix.row(i).iter().map(|&x| x as i64).collect())
            .collect();
        Ok(LinearSubspace {
            basis: FieldMatrix::from_rows_dim(field, &basis_rows, ambient)?,
            pivots: r.pivots,
        })
    }

    /// Builds directly from rows already known to be in RREF (enumeration
    /// fast path; debug-asserted).
    fn from_rref_rows(field: PrimeField, rows: &[Vec<i64>], d: usize, pivots: Vec<usize>) -> Self {
        let basis = FieldMatrix::from_rows_dim(field, rows, d).expect("rectangular rows");
        debug_assert_eq!(basis.rref().pivots, pivots);
        LinearSubspace { basis, pivots }
    }

    pub fn field(&self) -> PrimeField {
        self.basis.field()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &FieldMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Canonical coset representative of `x + self`: subtracts the unique
    /// combination of basis rows that zeroes all pivot coordinates. This map
    /// is linear, and two vectors share a coset exactly when they reduce to
    /// the same representative.
    pub fn reduce(&self, x: &[u64]) -> Vec<u64> {
        let f = self.field();
        let mut r = x.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let coeff = r[pc];
            if coeff == 0 {
                continue;
            }
            for (rj, &bj) in r.iter_mut().zip(self.basis.row(i)) {
                *rj = f.sub(*rj, f.mul(coeff, bj));
            }
        }
        r
    }

    pub fn contains(&self, x: &[u64]) -> Result<bool> {
        if x.len() != self.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim(), got: x.len() });
        }
        Ok(self.reduce(x).iter().all(|&c| c == 0))
    }
}

/// An affine flat `base + direction` in canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineFlat {
    direction: LinearSubspace,
    /// Canonical representative: the unique point of the flat with zeros at
    /// all pivot coordinates of `direction`.
    base: Vec<u64>,
}

impl AffineFlat {
    pub fn new(direction: LinearSubspace, base: &[u64]) -> Result<Self> {
        if base.len() != direction.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: direction.ambient_dim(),
                got: base.len(),
            });
        }
        let base = direction.reduce(base);
        Ok(AffineFlat { direction, base })
    }

    /// The affine span of a nonempty list of points.
    pub fn affine_span(field: PrimeField, points: &[Vec<u64>]) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyInput("affine span of no points"))?;
        let diffs: Vec<Vec<u64>> = points[1..]
            .iter()
            .map(|q| q.iter().zip(first).map(|(&a, &b)| field.sub(a, b)).collect())
            .collect();
        AffineFlat::new(LinearSubspace::span(field, first.len(), &diffs)?, first)
    }

    pub fn direction(&self) -> &LinearSubspace {
        &self.direction
    }

    pub fn base(&self) -> &[u64] {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.direction.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.direction.ambient_dim()
    }

    pub fn contains(&self, x: &[u64]) -> Result<bool> {
        if x.len() != self.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim(), got: x.len() });
        }
        Ok(self.direction.reduce(x) == self.base)
    }
}

/// The Gaussian binomial `[d choose k]_p`: the number of `k`-dimensional
/// linear subspaces of `F_p^d`.
pub fn gaussian_binomial(d: usize, k: usize, p: u64) -> BigUint {
    if k > d {
        return BigUint::zero();
    }
    let p = BigUint::from(p);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= p.pow((d - i) as u32) - 1u32;
        den *= p.pow((k - i) as u32) - 1u32;
    }
    num / den
}

/// The number of `k`-dimensional affine flats of `F_p^d`:
/// `p^(d-k) * [d choose k]_p`.
pub fn count_affine_flats(d: usize, k: usize, p: u64) -> BigUint {
    if k > d {
        return BigUint::zero();
    }
    BigUint::from(p).pow((d - k) as u32) * gaussian_binomial(d, k, p)
}

/// Lexicographic `k`-subsets of `0..n`.
#[derive(Debug)]
pub(crate) struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        let current = (k <= n).then(|| (0..k).collect());
        Combinations { n, current }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let c = self.current.as_mut().expect("checked above");
        let k = c.len();
        // Standard successor: bump the rightmost index that can still move.
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if c[i] + 1 <= self.n - (k - i) {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Iterator over all `k`-dimensional linear subspaces of `F_p^d`, in
/// canonical enumeration order.
#[derive(Debug)]
pub struct LinearSubspaceIter {
    field: PrimeField,
    d: usize,
    pivot_sets: Combinations,
    state: Option<PivotBlock>,
}

/// Enumeration state within one pivot-column set: an odometer over the free
/// entries of the RREF shape.
#[derive(Debug)]
struct PivotBlock {
    pivots: Vec<usize>,
    /// `(row, col)` of each free entry, row-major; the last entry moves
    /// fastest.
    free_slots: Vec<(usize, usize)>,
    free_vals: Vec<u64>,
    done: bool,
}

impl PivotBlock {
    fn new(pivots: Vec<usize>, d: usize) -> Self {
        let mut free_slots = Vec::new();
        for (i, &pc) in pivots.iter().enumerate() {
            for c in pc + 1..d {
                if !pivots.contains(&c) {
                    free_slots.push((i, c));
                }
            }
        }
        let free_vals = vec![0; free_slots.len()];
        PivotBlock { pivots, free_slots, free_vals, done: false }
    }

    fn emit(&self, field: PrimeField, d: usize) -> LinearSubspace {
        let k = self.pivots.len();
        let mut rows = vec![vec![0i64; d]; k];
        for (i, &pc) in self.pivots.iter().enumerate() {
            rows[i][pc] = 1;
        }
        for (&(r, c), &v) in self.free_slots.iter().zip(&self.free_vals) {
            rows[r][c] = v as i64;
        }
        LinearSubspace::from_rref_rows(field, &rows, d, self.pivots.clone())
    }

    fn advance(&mut self, p: u64) {
        for v in self.free_vals.iter_mut().rev() {
            *v += 1;
            if *v < p {
                return;
            }
            *v = 0;
        }
        self.done = true;
    }
}

impl Iterator for LinearSubspaceIter {
    type Item = LinearSubspace;

    fn next(&mut self) -> Option<LinearSubspace> {
        loop {
            if self.state.is_none() {
                self.state = Some(PivotBlock::new(self.pivot_sets.next()?, self.d));
            }
            let block = self.state.as_mut().expect("just filled");
            if block.done {
                self.state = None;
                continue;
            }
            let out = block.emit(self.field, self.d);
            block.advance(self.field.p());
            return Some(out);
        }
    }
}

/// Enumerates all `k`-dimensional linear subspaces of `F_p^d`, after
/// charging the exact count against `budget`.
pub fn enumerate_linear(
    field: PrimeField,
    d: usize,
    k: usize,
    budget: u64,
) -> Result<LinearSubspaceIter> {
    if k > d {
        return Err(Error::InvalidParams(format!("k={k} exceeds ambient dimension d={d}")));
    }
    let count = gaussian_binomial(d, k, field.p());
    charge_big(&count, budget)?;
    Ok(LinearSubspaceIter { field, d, pivot_sets: Combinations::new(d, k), state: None })
}

/// Iterator over all `k`-dimensional affine flats of `F_p^d`: every
/// direction subspace crossed with every canonical coset representative.
#[derive(Debug)]
pub struct AffineFlatIter {
    inner: LinearSubspaceIter,
    current: Option<(LinearSubspace, Vec<usize>, Vec<u64>, bool)>,
}

impl Iterator for AffineFlatIter {
    type Item = AffineFlat;

    fn next(&mut self) -> Option<AffineFlat> {
        loop {
            if self.current.is_none() {
                let sub = self.inner.next()?;
                let free_cols: Vec<usize> =
                    (0..sub.ambient_dim()).filter(|c| !sub.pivots().contains(c)).collect();
                let vals = vec![0u64; free_cols.len()];
                self.current = Some((sub, free_cols, vals, false));
            }
            let (sub, free_cols, vals, done) = self.current.as_mut().expect("just filled");
            if *done {
                self.current = None;
                continue;
            }
            let mut base = vec![0u64; sub.ambient_dim()];
            for (&c, &v) in free_cols.iter().zip(vals.iter()) {
                base[c] = v;
            }
            let flat = AffineFlat { direction: sub.clone(), base };
            // Odometer over the free coordinates, last fastest.
            let p = sub.field().p();
            let mut rolled = true;
            for v in vals.iter_mut().rev() {
                *v += 1;
                if *v < p {
                    rolled = false;
                    break;
                }
                *v = 0;
            }
            if rolled {
                *done = true;
            }
            return Some(flat);
        }
    }
}

/// Enumerates all `k`-dimensional affine flats of `F_p^d`, after charging
/// the exact count against `budget`.
pub fn enumerate_affine(
    field: PrimeField,
    d: usize,
    k: usize,
    budget: u64,
) -> Result<AffineFlatIter> {
    if k > d {
        return Err(Error::InvalidParams(format!("k={k} exceeds ambient dimension d={d}")));
    }
    let count = count_affine_flats(d, k, field.p());
    charge_big(&count, budget)?;
    Ok(AffineFlatIter { inner: enumerate_linear(field, d, k, u64::MAX)?, current: None })
}

fn charge_big(needed: &BigUint, cap: u64) -> Result<()> {
    match u128::try_from(needed) {
        Ok(n) => charge(n, cap),
        Err(_) => Err(Error::BudgetExceeded { needed: needed.to_string(), cap }),
    }
}

/// Dimension of the linear span of a point set (0 for the empty set).
pub fn linear_dim(points: &PointSet) -> Result<usize> {
    match points.domain() {
        Domain::Field(f) => {
            let mut ech = ModEchelon::new(f);
            for i in 0..points.len() {
                ech.absorb(&points.fp_point(i));
            }
            Ok(ech.rank())
        }
        Domain::Integers => {
            let mut ech = IntEchelon::new();
            for p in points.points() {
                ech.absorb(p);
            }
            Ok(ech.rank())
        }
    }
}

/// Dimension of the affine span of a nonempty point set: the rank of the
/// differences to the first point.
pub fn affine_dim(points: &PointSet) -> Result<usize> {
    if points.is_empty() {
        return Err(Error::EmptyInput("affine dimension of no points"));
    }
    match points.domain() {
        Domain::Field(f) => {
            let first = points.fp_point(0);
            let mut ech = ModEchelon::new(f);
            for i in 1..points.len() {
                let q = points.fp_point(i);
                let diff: Vec<u64> = q.iter().zip(&first).map(|(&a, &b)| f.sub(a, b)).collect();
                ech.absorb(&diff);
            }
            Ok(ech.rank())
        }
        Domain::Integers => {
            let first = points.point(0);
            let mut ech = IntEchelon::new();
            for q in &points.points()[1..] {
                let diff: Vec<i64> = q
                    .iter()
                    .zip(first)
                    .map(|(&a, &b)| a.checked_sub(b).ok_or(Error::Overflow))
                    .collect::<Result<_>>()?;
                ech.absorb(&diff);
            }
            Ok(ech.rank())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn gaussian_binomial_examples() {
        assert_eq!(gaussian_binomial(2, 1, 2), BigUint::from(3u32));
        assert_eq!(gaussian_binomial(4, 2, 3), BigUint::from(130u32));
        assert_eq!(gaussian_binomial(3, 1, 5), BigUint::from(31u32));
        assert_eq!(gaussian_binomial(3, 2, 5), BigUint::from(31u32));
        assert_eq!(gaussian_binomial(3, 4, 5), BigUint::zero());
        assert_eq!(gaussian_binomial(4, 0, 7), BigUint::one());
        assert_eq!(gaussian_binomial(4, 4, 7), BigUint::one());
    }

    #[test]
    fn enumeration_counts_match_gaussian_binomial() {
        for p in [2u64, 3] {
            for d in 0..=3usize {
                for k in 0..=d {
                    let n = enumerate_linear(f(p), d, k, 1 << 20).unwrap().count();
                    assert_eq!(BigUint::from(n), gaussian_binomial(d, k, p), "p={p} d={d} k={k}");
                    let na = enumerate_affine(f(p), d, k, 1 << 20).unwrap().count();
                    assert_eq!(BigUint::from(na), count_affine_flats(d, k, p));
                }
            }
        }
    }

    #[test]
    fn enumerated_subspaces_are_distinct_and_canonical() {
        let subs: Vec<_> = enumerate_linear(f(3), 4, 2, 1 << 20).unwrap().collect();
        for (i, a) in subs.iter().enumerate() {
            assert_eq!(a.dim(), 2);
            // Canonical: re-spanning the basis reproduces the same object.
            let rows: Vec<Vec<u64>> = a.basis().to_rows();
            assert_eq!(&LinearSubspace::span(f(3), 4, &rows).unwrap(), a);
            for b in &subs[i + 1..] {
                assert_ne!(a, b);
            }
        }
    }

    #[test]
    fn affine_flat_counts_small_examples() {
        assert_eq!(enumerate_affine(f(2), 2, 1, 1000).unwrap().count(), 6);
        assert_eq!(enumerate_affine(f(3), 2, 1, 1000).unwrap().count(), 12);
        let flats: Vec<_> = enumerate_affine(f(2), 2, 1, 1000).unwrap().collect();
        for (i, a) in flats.iter().enumerate() {
            for b in &flats[i + 1..] {
                assert_ne!(a, b);
            }
        }
    }

    #[test]
    fn enumeration_is_deterministic() {
        let a: Vec<_> = enumerate_affine(f(3), 3, 1, 1 << 20).unwrap().collect();
        let b: Vec<_> = enumerate_affine(f(3), 3, 1, 1 << 20).unwrap().collect();
        assert_eq!(a, b);
    }

    #[test]
    fn budget_is_charged_before_enumerating() {
        match enumerate_affine(f(5), 12, 1, 1000) {
            Err(Error::BudgetExceeded { cap: 1000, .. }) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn contains_example_line_in_f3() {
        // The line {(t, t, 1)} in F_3^3: direction span{(1,1,0)}, base (0,0,1).
        let dir = LinearSubspace::span(f(3), 3, &[vec![1, 1, 0]]).unwrap();
        let flat = AffineFlat::new(dir, &[0, 0, 1]).unwrap();
        assert!(flat.contains(&[2, 2, 1]).unwrap());
        assert!(flat.contains(&[0, 0, 1]).unwrap());
        assert!(!flat.contains(&[1, 2, 1]).unwrap());
        assert!(!flat.contains(&[1, 1, 0]).unwrap());
        assert_eq!(flat.dim(), 1);
    }

    #[test]
    fn flat_base_is_canonicalized() {
        let dir = LinearSubspace::span(f(3), 3, &[vec![1, 1, 0]]).unwrap();
        let a = AffineFlat::new(dir.clone(), &[0, 0, 1]).unwrap();
        // A different representative of the same flat canonicalizes equal.
        let b = AffineFlat::new(dir, &[2, 2, 1]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn membership_matches_affine_span_dimension() {
        // x is in the span of points iff adding it does not grow the span.
        let field = f(5);
        let pts = vec![vec![1u64, 2, 3], vec![2, 2, 2], vec![0, 1, 4]];
        let flat = AffineFlat::affine_span(field, &pts).unwrap();
        for x in enumerate_affine(field, 3, 0, 1 << 20).unwrap().map(|fl| fl.base().to_vec()) {
            let mut with = pts.clone();
            with.push(x.clone());
            let d0 = AffineFlat::affine_span(field, &pts).unwrap().dim();
            let d1 = AffineFlat::affine_span(field, &with).unwrap().dim();
            assert_eq!(flat.contains(&x).unwrap(), d0 == d1, "x={x:?}");
        }
    }

    #[test]
    fn span_dims() {
        let s = PointSet::new(
            Domain::Field(f(5)),
            2,
            vec![vec![0, 0], vec![1, 1], vec![2, 2]],
        )
        .unwrap();
        assert_eq!(affine_dim(&s).unwrap(), 1);
        assert_eq!(linear_dim(&s).unwrap(), 1);

        let t = PointSet::new(
            Domain::Field(f(5)),
            2,
            vec![vec![0, 0], vec![1, 0], vec![0, 1]],
        )
        .unwrap();
        assert_eq!(affine_dim(&t).unwrap(), 2);

        let z = PointSet::new(
            Domain::Integers,
            3,
            vec![vec![1, 1, 1], vec![2, 2, 2], vec![3, 3, 3]],
        )
        .unwrap();
        assert_eq!(affine_dim(&z).unwrap(), 1);
        assert_eq!(linear_dim(&z).unwrap(), 1);

        let empty = PointSet::empty(Domain::Integers, 3);
        assert_eq!(linear_dim(&empty).unwrap(), 0);
        assert!(affine_dim(&empty).is_err());
    }
}
