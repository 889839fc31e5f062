//! Evasiveness oracles and certificates.
//!
//! A point set is `(k, c)`-evasive when no `k`-dimensional flat (affine
//! flavor) or subspace (linear flavor) contains more than `c` of its
//! points. The exact maximum over all flats is `c_max`, and two
//! independent brute-force oracles compute it:
//!
//! - **enumeration**: walk every `k`-flat of `F_p^d` and count containment
//!   (prime-field domain only);
//! - **subset growth**: depth-first search for the largest subset of `S`
//!   whose span dimension stays at most `k`, pruning any branch whose span
//!   already exceeds `k`.
//!
//! The two agree because a subset with span dimension at most `k` extends
//! to a `k`-flat and, conversely, `S ∩ F` is such a subset for any `k`-flat
//! `F`. The subset oracle also runs over integer points, where exact
//! rational rank equals rank over the reals, so its certificates are
//! statements about real flats.

use std::collections::BTreeMap;

use crate::error::{charge, Error, Result};
use crate::field::{Absorbed, IntEchelon, ModEchelon};
use crate::points::{Domain, PointSet};
use crate::subspace::{
    affine_dim, count_affine_flats, enumerate_linear, gaussian_binomial,
    linear_dim, AffineFlat, LinearSubspace,
};

/// Whether flats are affine (translates allowed) or linear (through the
/// origin).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    Affine,
    Linear,
}

impl Flavor {
    pub fn as_str(&self) -> &'static str {
        match self {
            Flavor::Affine => "affine",
            Flavor::Linear => "linear",
        }
    }
}

impl std::str::FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "affine" => Ok(Flavor::Affine),
            "linear" => Ok(Flavor::Linear),
            other => Err(Error::InvalidParams(format!(
                "unknown flavor '{other}' (expected 'affine' or 'linear')"
            ))),
        }
    }
}

/// Which oracle produced a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleKind {
    Enumeration,
    Subset,
}

impl OracleKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            OracleKind::Enumeration => "enumeration",
            OracleKind::Subset => "subset",
        }
    }
}

/// Evidence that `c_max` is attained.
#[derive(Debug, Clone)]
pub enum CertWitness {
    /// A flat containing exactly `c_max` points (enumeration oracle; first
    /// such flat in enumeration order).
    AffineFlat(AffineFlat),
    /// A subspace containing exactly `c_max` points (enumeration oracle,
    /// linear flavor).
    LinearSubspace(LinearSubspace),
    /// A `c_max`-point subset with span dimension at most `k` (subset
    /// oracle; first such subset in search order).
    Subset(Vec<Vec<i64>>),
}

/// The exact evasiveness level of a point set: no `k`-flat of the stated
/// flavor contains more than `c_max` points, and the witness attains it.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub k: usize,
    pub flavor: Flavor,
    pub c_max: usize,
    pub oracle: OracleKind,
    pub witness: CertWitness,
}

impl Certificate {
    /// Re-verifies the witness by independent containment tests: a flat
    /// witness must contain exactly `c_max` points of `s`, a subset witness
    /// must be `c_max` distinct points of `s` spanning dimension at most
    /// `k`.
    pub fn verify(&self, s: &PointSet) -> Result<bool> {
        match &self.witness {
            CertWitness::AffineFlat(flat) => {
                if flat.dim() != self.k {
                    return Ok(false);
                }
                let mut count = 0;
                for i in 0..s.len() {
                    if flat.contains(&s.fp_point(i))? {
                        count += 1;
                    }
                }
                Ok(count == self.c_max)
            }
            CertWitness::LinearSubspace(sub) => {
                if sub.dim() != self.k {
                    return Ok(false);
                }
                let mut count = 0;
                for i in 0..s.len() {
                    if sub.contains(&s.fp_point(i))? {
                        count += 1;
                    }
                }
                Ok(count == self.c_max)
            }
            CertWitness::Subset(points) => {
                if points.iter().any(|p| !s.points().contains(p)) {
                    return Ok(false);
                }
                let subset = PointSet::new(s.domain(), s.dim(), points.clone())?;
                if subset.len() != self.c_max || subset.len() != points.len() {
                    return Ok(false);
                }
                if subset.is_empty() {
                    return Ok(true);
                }
                let dim = match self.flavor {
                    Flavor::Affine => affine_dim(&subset)?,
                    Flavor::Linear => linear_dim(&subset)?,
                };
                Ok(dim <= self.k)
            }
        }
    }
}

/// Exact `c_max` by enumerating every `k`-flat of the stated flavor.
/// Prime-field domain only; the full flat count is charged against
/// `budget` before any work happens.
///
/// For the affine flavor the walk is organized per direction subspace:
/// points are bucketed by their canonical coset representative, which
/// visits every flat's intersection while touching each point once per
/// direction. Ties are broken by enumeration order (first direction, then
/// first base in odometer order).
pub fn max_intersection_enum(
    s: &PointSet,
    k: usize,
    flavor: Flavor,
    budget: u64,
) -> Result<Certificate> {
    let field = s.domain().require_field()?;
    let d = s.dim();
    if k > d {
        return Err(Error::InvalidParams(format!("k={k} exceeds ambient dimension d={d}")));
    }
    match flavor {
        Flavor::Affine => {
            let total = count_affine_flats(d, k, field.p());
            match u128::try_from(&total) {
                Ok(n) => charge(n, budget)?,
                Err(_) => {
                    return Err(Error::BudgetExceeded { needed: total.to_string(), cap: budget })
                }
            }
            let mut best: Option<(usize, AffineFlat)> = None;
            for direction in enumerate_linear(field, d, k, u64::MAX)? {
                let mut buckets: BTreeMap<Vec<u64>, usize> = BTreeMap::new();
                for i in 0..s.len() {
                    *buckets.entry(direction.reduce(&s.fp_point(i))).or_insert(0) += 1;
                }
                // Lexicographically least canonical base attaining this
                // direction's max; the all-zero base stands in when S is
                // empty.
                let (count, base) = buckets
                    .iter()
                    .fold((0usize, None), |(mc, mb), (b, &c)| {
                        if c > mc {
                            (c, Some(b.clone()))
                        } else {
                            (mc, mb)
                        }
                    });
                let base = base.unwrap_or_else(|| vec![0; d]);
                if best.as_ref().is_none_or(|(bc, _)| count > *bc) {
                    best = Some((count, AffineFlat::new(direction, &base)?));
                }
            }
            let (c_max, flat) = best.expect("at least one direction exists for k <= d");
            Ok(Certificate {
                k,
                flavor,
                c_max,
                oracle: OracleKind::Enumeration,
                witness: CertWitness::AffineFlat(flat),
            })
        }
        Flavor::Linear => {
            let total = gaussian_binomial(d, k, field.p());
            match u128::try_from(&total) {
                Ok(n) => charge(n, budget)?,
                Err(_) => {
                    return Err(Error::BudgetExceeded { needed: total.to_string(), cap: budget })
                }
            }
            let mut best: Option<(usize, LinearSubspace)> = None;
            for sub in enumerate_linear(field, d, k, u64::MAX)? {
                let mut count = 0;
                for i in 0..s.len() {
                    if sub.contains(&s.fp_point(i))? {
                        count += 1;
                    }
                }
                if best.as_ref().is_none_or(|(bc, _)| count > *bc) {
                    best = Some((count, sub));
                }
            }
            let (c_max, sub) = best.expect("at least one subspace exists for k <= d");
            Ok(Certificate {
                k,
                flavor,
                c_max,
                oracle: OracleKind::Enumeration,
                witness: CertWitness::LinearSubspace(sub),
            })
        }
    }
}

/// Exact `c_max` as the size of the largest subset whose span dimension is
/// at most `k`, by pruned depth-first search over point indices. Works in
/// both domains; each attempted extension costs one budget unit.
pub fn max_intersection_subsets(
    s: &PointSet,
    k: usize,
    flavor: Flavor,
    budget: u64,
) -> Result<Certificate> {
    let mut search = SubsetSearch::new(s, k, flavor, budget, None)?;
    search.run()?;
    let witness = search.best_subset.iter().map(|&i| s.point(i).to_vec()).collect();
    Ok(Certificate {
        k,
        flavor,
        c_max: search.best,
        oracle: OracleKind::Subset,
        witness: CertWitness::Subset(witness),
    })
}

/// Decides whether `s` is `(k, c)`-evasive. On failure returns a witness:
/// `c + 1` points spanning dimension at most `k`.
///
/// Runs the subset search with early exit at target size `c + 1`, which
/// succeeds exactly when `c_max >= c + 1`.
pub fn is_evasive(
    s: &PointSet,
    k: usize,
    c: usize,
    flavor: Flavor,
    budget: u64,
) -> Result<(bool, Option<Vec<Vec<i64>>>)> {
    let mut search = SubsetSearch::new(s, k, flavor, budget, Some(c + 1))?;
    let found = search.run()?;
    if found {
        let witness = search.best_subset.iter().map(|&i| s.point(i).to_vec()).collect();
        Ok((false, Some(witness)))
    } else {
        Ok((true, None))
    }
}

/// Span-dimension tracker for the subset search, dispatching on domain.
enum SpanTracker {
    Mod(ModEchelon),
    Int(IntEchelon),
}

impl SpanTracker {
    fn rank(&self) -> usize {
        match self {
            SpanTracker::Mod(e) => e.rank(),
            SpanTracker::Int(e) => e.rank(),
        }
    }

    fn undo(&mut self, receipt: Absorbed) {
        match self {
            SpanTracker::Mod(e) => e.undo(receipt),
            SpanTracker::Int(e) => e.undo(receipt),
        }
    }
}

/// Depth-first search for a maximum subset with span dimension at most `k`
/// (or any subset of `target` size, when set). Indices are explored in
/// ascending order, so results are deterministic.
struct SubsetSearch<'a> {
    s: &'a PointSet,
    k: usize,
    flavor: Flavor,
    budget_left: u64,
    budget: u64,
    target: Option<usize>,
    chosen: Vec<usize>,
    tracker: SpanTracker,
    best: usize,
    best_subset: Vec<usize>,
}

impl<'a> SubsetSearch<'a> {
    fn new(
        s: &'a PointSet,
        k: usize,
        flavor: Flavor,
        budget: u64,
        target: Option<usize>,
    ) -> Result<Self> {
        if k > s.dim() {
            return Err(Error::InvalidParams(format!(
                "k={k} exceeds ambient dimension d={}",
                s.dim()
            )));
        }
        let tracker = match s.domain() {
            Domain::Field(f) => SpanTracker::Mod(ModEchelon::new(f)),
            Domain::Integers => SpanTracker::Int(IntEchelon::new()),
        };
        Ok(SubsetSearch {
            s,
            k,
            flavor,
            budget_left: budget,
            budget,
            target,
            chosen: Vec::new(),
            tracker,
            best: 0,
            best_subset: Vec::new(),
        })
    }

    /// Returns whether the target size was reached (always false for a full
    /// maximum search).
    fn run(&mut self) -> Result<bool> {
        if self.target == Some(0) {
            return Ok(true);
        }
        self.dfs(0)
    }

    fn dfs(&mut self, start: usize) -> Result<bool> {
        if self.chosen.len() > self.best {
            self.best = self.chosen.len();
            self.best_subset = self.chosen.clone();
            if self.target.is_some_and(|t| self.best >= t) {
                return Ok(true);
            }
        }
        let n = self.s.len();
        // The branch can still reach `chosen + (n - j)` points; prune as
        // soon as that cannot improve on the goal.
        let goal = self.target.unwrap_or(self.best + 1);
        for j in start..n {
            if self.chosen.len() + (n - j) < goal.max(self.best + 1) {
                break;
            }
            if self.budget_left == 0 {
                return Err(Error::BudgetExceeded {
                    needed: format!("more than {}", self.budget),
                    cap: self.budget,
                });
            }
            self.budget_left -= 1;
            let receipt = self.absorb(j);
            if self.tracker.rank() <= self.k {
                self.chosen.push(j);
                let found = self.dfs(j + 1)?;
                self.chosen.pop();
                self.tracker.undo(receipt);
                if found {
                    return Ok(true);
                }
            } else {
                self.tracker.undo(receipt);
            }
        }
        Ok(false)
    }

    /// Absorbs point `j` into the span tracker. For the affine flavor the
    /// tracked span is of differences against the first chosen point, so
    /// the first point is a free no-op.
    fn absorb(&mut self, j: usize) -> Absorbed {
        match self.flavor {
            Flavor::Linear => match (&mut self.tracker, self.s.domain()) {
                (SpanTracker::Mod(e), Domain::Field(_)) => e.absorb(&self.s.fp_point(j)),
                (SpanTracker::Int(e), Domain::Integers) => e.absorb(self.s.point(j)),
                _ => unreachable!("tracker matches domain by construction"),
            },
            Flavor::Affine => {
                let Some(&first) = self.chosen.first() else {
                    return Absorbed::Dependent;
                };
                match (&mut self.tracker, self.s.domain()) {
                    (SpanTracker::Mod(e), Domain::Field(f)) => {
                        let a = self.s.fp_point(j);
                        let b = self.s.fp_point(first);
                        let diff: Vec<u64> =
                            a.iter().zip(&b).map(|(&x, &y)| f.sub(x, y)).collect();
                        e.absorb(&diff)
                    }
                    (SpanTracker::Int(e), Domain::Integers) => {
                        let a = self.s.point(j);
                        let b = self.s.point(first);
                        let diff: Vec<i64> =
                            a.iter().zip(b).map(|(&x, &y)| x.wrapping_sub(y)).collect();
                        e.absorb(&diff)
                    }
                    _ => unreachable!("tracker matches domain by construction"),
                }
            }
        }
    }
}
