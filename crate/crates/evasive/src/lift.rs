//! Transfers of prime-field evasive sets to the integer lattice.
//!
//! Two lifts and a covering witness:
//!
//! * [`lift_affine`]: pick the largest prime `p` in `(n/2, n]`, build an
//!   evasive set over `F_p`, and read each residue `r` as the lattice
//!   coordinate `r + 1`. Points land in `{1, ..., p}^d ⊆ [n]^d`, and any
//!   `k`-flat of `R^d` meeting many lifted points reduces mod `p` to a
//!   flat meeting as many source points, so evasiveness transfers.
//! * [`lift_linear`]: primes come from `(n^(d/(d-1))/2, n^(d/(d-1)))`, so
//!   `p^(d-1) < n^d < (2p)^(d-1)`. Each source point is replaced by a
//!   short scaled representative ([`short_representative`]), the largest
//!   sign-pattern class is kept, zeros become 1 and negatives flip, which
//!   preserves linear evasiveness while landing in `[n]^d`.
//! * [`covering_witness`]: one short representative per projective class
//!   of `F_p^d` gives `(p^d - 1)/(p - 1)` points of `[-n, n]^d` such that
//!   any `k`-dimensional linear subspace covers at most
//!   `(p^k - 1)/(p - 1)` of them — a certified lower bound on the number
//!   of subspaces needed to cover the grid.

use num_bigint::BigUint;

use crate::error::{charge, Error, Result};
use crate::evasive::{max_intersection_subsets, Certificate, Flavor};
use crate::field::{bertrand_prime, centered_residue, PrimeField};
use crate::points::{Domain, PointSet};
use crate::polymap::construct_evasive;
use crate::subspace::enumerate_linear;

/// Outcome of [`lift_affine`] or [`lift_linear`].
#[derive(Debug, Clone)]
pub struct LiftReport {
    pub n: u64,
    pub d: usize,
    pub k: usize,
    /// Prime chosen from the mode's window.
    pub p: u64,
    /// Degree bound of the source polynomial map.
    pub degree: u32,
    /// Size of the prime-field source set.
    pub source_size: usize,
    /// Distinct short representatives before sign-bucketing (linear mode
    /// only).
    pub distinct_representatives: Option<usize>,
    /// The winning sign pattern (linear mode only).
    pub sign_pattern: Option<Vec<i8>>,
    /// The lifted integer point set.
    pub lifted: PointSet,
    /// Which flavor of flats the lift is evasive for.
    pub flavor: Flavor,
    /// Exact `c_max` of the lifted set for `k`-dimensional flats over the
    /// integers, by the subset oracle; `None` when it exceeds the budget.
    pub certificate: Option<Certificate>,
    /// The size the theorem promises for a full-sized source
    /// (`(n/2)^(d-k)` affine, `n^(d(d-k)/(d-1))/6^d` linear); informational.
    pub target_size: f64,
}

/// Runs the subset oracle but treats running out of budget as "no
/// certificate" rather than failure.
fn try_certificate(
    s: &PointSet,
    k: usize,
    flavor: Flavor,
    budget: u64,
) -> Result<Option<Certificate>> {
    match max_intersection_subsets(s, k, flavor, budget) {
        Ok(cert) => Ok(Some(cert)),
        Err(Error::BudgetExceeded { .. }) => Ok(None),
        Err(other) => Err(other),
    }
}

/// Lifts an evasive set into `[n]^d` with no `k`-dimensional affine flat
/// of `R^d` holding more than `c_max` points. Requires `n >= 4` (so the
/// prime window `(n/2, n]` is nonempty) and `1 <= k < d`.
pub fn lift_affine(n: u64, d: usize, k: usize, seed: u64, budget: u64) -> Result<LiftReport> {
    if n < 4 {
        return Err(Error::InvalidParams(format!("need n >= 4 for the prime window, got {n}")));
    }
    if k < 1 || k >= d {
        return Err(Error::InvalidParams(format!("need 1 <= k < d, got k={k} d={d}")));
    }
    let p = bertrand_prime(n / 2, n)?;
    let source = construct_evasive(p, d, d - k, seed, budget)?;
    let mut lifted = PointSet::empty(Domain::Integers, d);
    for pt in source.points.points() {
        let inserted = lifted.push(pt.iter().map(|&c| c + 1).collect())?;
        debug_assert!(inserted, "shifting residues is injective");
    }
    assert_eq!(lifted.len(), source.points.len());
    let certificate = try_certificate(&lifted, k, Flavor::Affine, budget)?;
    Ok(LiftReport {
        n,
        d,
        k,
        p,
        degree: source.degree,
        source_size: source.points.len(),
        distinct_representatives: None,
        sign_pattern: None,
        lifted,
        flavor: Flavor::Affine,
        certificate,
        target_size: (n as f64 / 2.0).powi((d - k) as i32),
    })
}

/// Smallest `t >= 1` with `t^exp >= target` (binary search on the exact
/// comparison).
pub(crate) fn smallest_root_at_least(target: &BigUint, exp: u32, strict: bool) -> u64 {
    let (mut lo, mut hi) = (1u64, 2u64);
    let beats = |t: u64| {
        let pow = BigUint::from(t).pow(exp);
        if strict {
            pow > *target
        } else {
            pow >= *target
        }
    };
    while !beats(hi) {
        lo = hi;
        hi = hi.saturating_mul(2);
    }
    while lo + 1 < hi {
        let mid = lo + (hi - lo) / 2;
        if beats(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    if beats(lo) {
        lo
    } else {
        hi
    }
}

/// The prime window shared by the linear lift and the covering witness:
/// the largest prime with `p^(d-1) < n^d` and `(2p)^(d-1) > n^d`, the
/// exact-arithmetic reading of `n^(d/(d-1))/2 < p < n^(d/(d-1))`.
fn linear_window_prime(n: u64, d: usize) -> Result<u64> {
    let exp = u32::try_from(d - 1).map_err(|_| Error::Overflow)?;
    let target = BigUint::from(n).pow(u32::try_from(d).map_err(|_| Error::Overflow)?);
    // p <= hi: largest t with t^(d-1) < n^d.
    let hi = smallest_root_at_least(&target, exp, false) - 1;
    // p >= lo: smallest t with (2t)^(d-1) > n^d.
    let double = smallest_root_at_least(&target, exp, true);
    let lo = double.div_ceil(2);
    bertrand_prime(lo.saturating_sub(1), hi)
}

/// Scales `x` by the smallest `λ ∈ {1, ..., p-1}` whose centered residues
/// all lie in `[-n, n]`, returning those residues. Guaranteed to exist
/// when `p <= n^(d/(d-1))`; outside that regime the exhaustive scan may
/// fail, which is reported as an error.
pub fn short_representative(field: PrimeField, x: &[u64], n: u64) -> Result<Vec<i64>> {
    let p = field.p();
    if x.iter().all(|&c| c % p == 0) {
        return Err(Error::InvalidParams(
            "the zero vector has no projective representative".into(),
        ));
    }
    for lambda in 1..p {
        let scaled: Vec<i64> =
            x.iter().map(|&c| centered_residue(field.mul(lambda, c % p), p)).collect();
        if scaled.iter().all(|&c| c.unsigned_abs() <= n) {
            return Ok(scaled);
        }
    }
    Err(Error::NoShortRepresentative {
        point: x.iter().map(|&c| c as i64).collect(),
        bound: n as i64,
    })
}

/// Lifts an evasive set into `[n]^d` (all coordinates in `{1, ..., n}`)
/// with no `k`-dimensional linear subspace of `R^d` through the origin
/// holding more than `c_max` points. Requires `n >= 2` and `1 <= k < d`.
///
/// A zero vector in the source image has no projective representative and
/// is dropped; scaled representatives of distinct source points may
/// coincide, so the report carries the distinct count.
pub fn lift_linear(n: u64, d: usize, k: usize, seed: u64, budget: u64) -> Result<LiftReport> {
    if n < 2 {
        return Err(Error::InvalidParams(format!("need n >= 2 for the prime window, got {n}")));
    }
    if k < 1 || k >= d {
        return Err(Error::InvalidParams(format!("need 1 <= k < d, got k={k} d={d}")));
    }
    let p = linear_window_prime(n, d)?;
    let field = PrimeField::new(p)?;
    let source = construct_evasive(p, d, d - k, seed, budget)?;

    let mut representatives = PointSet::empty(Domain::Integers, d);
    for pt in source.points.points() {
        if pt.iter().all(|&c| c == 0) {
            continue;
        }
        let coords: Vec<u64> = pt.iter().map(|&c| c as u64).collect();
        representatives.push(short_representative(field, &coords, n)?)?;
    }
    let star_size = representatives.len();
    if star_size == 0 {
        return Err(Error::WitnessNotFound(
            "the source image contains only the zero vector".into(),
        ));
    }

    // Partition by sign pattern; BTreeMap order makes the largest-bucket
    // tie-break the lexicographically first pattern (-1 < 0 < 1).
    let mut buckets: std::collections::BTreeMap<Vec<i8>, Vec<Vec<i64>>> =
        std::collections::BTreeMap::new();
    for pt in representatives.points() {
        let pattern: Vec<i8> = pt.iter().map(|&c| c.signum() as i8).collect();
        buckets.entry(pattern).or_default().push(pt.clone());
    }
    let (pattern, chosen) = buckets
        .iter()
        .max_by(|a, b| a.1.len().cmp(&b.1.len()).then(b.0.cmp(a.0)))
        .map(|(pat, pts)| (pat.clone(), pts.clone()))
        .expect("nonempty representative set");

    let mut lifted = PointSet::empty(Domain::Integers, d);
    for pt in &chosen {
        let fixed: Vec<i64> =
            pt.iter().map(|&c| if c == 0 { 1 } else { c.abs() }).collect();
        let inserted = lifted.push(fixed)?;
        debug_assert!(inserted, "sign fixing is injective within one pattern class");
    }
    // Pigeonhole over the 3^d patterns.
    assert!(lifted.len() >= star_size.div_ceil(3usize.pow(d as u32)));

    let certificate = try_certificate(&lifted, k, Flavor::Linear, budget)?;
    let exponent = (d * (d - k)) as f64 / (d - 1) as f64;
    Ok(LiftReport {
        n,
        d,
        k,
        p,
        degree: source.degree,
        source_size: source.points.len(),
        distinct_representatives: Some(star_size),
        sign_pattern: Some(pattern),
        lifted,
        flavor: Flavor::Linear,
        certificate,
        target_size: (n as f64).powf(exponent) / 6f64.powi(d as i32),
    })
}

/// One short representative per projective equivalence class of
/// `F_p^d \ {0}`, all inside `[-n, n]^d`.
#[derive(Debug, Clone)]
pub struct ProjectiveWitness {
    pub p: u64,
    pub d: usize,
    pub n: u64,
    pub representatives: PointSet,
}

impl ProjectiveWitness {
    /// `(p^d - 1)/(p - 1)`, the number of classes.
    pub fn expected_count(&self) -> u64 {
        let total = (0..self.d).fold(1u64, |acc, _| acc * self.p);
        (total - 1) / (self.p - 1)
    }

    /// Exhaustive re-check of the defining invariants: the declared count,
    /// the box bound, and pairwise non-proportionality mod p (all 2x2
    /// minors of each pair vanish only for proportional vectors).
    pub fn validate(&self) -> Result<bool> {
        if self.representatives.len() as u64 != self.expected_count() {
            return Ok(false);
        }
        let field = PrimeField::new(self.p)?;
        let pts = self.representatives.points();
        for pt in pts {
            if pt.iter().any(|&c| c.unsigned_abs() > self.n) {
                return Ok(false);
            }
        }
        let reduced: Vec<Vec<u64>> =
            pts.iter().map(|pt| pt.iter().map(|&c| field.elem(c)).collect()).collect();
        for i in 0..reduced.len() {
            for j in i + 1..reduced.len() {
                let proportional = (0..self.d).all(|a| {
                    (a + 1..self.d).all(|b| {
                        field.mul(reduced[i][a], reduced[j][b])
                            == field.mul(reduced[i][b], reduced[j][a])
                    })
                });
                if proportional {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Builds the covering witness for the grid `[-n, n]^d`: the prime comes
/// from the same window as [`lift_linear`], classes are enumerated via
/// their monic representatives (first nonzero coordinate 1, lexicographic
/// order), and each is shortened into the box. Charges roughly `p^d`
/// budget units for the class scan.
pub fn covering_witness(n: u64, d: usize, budget: u64) -> Result<ProjectiveWitness> {
    if n < 2 || d < 2 {
        return Err(Error::InvalidParams(format!("need n >= 2 and d >= 2, got n={n} d={d}")));
    }
    let p = linear_window_prime(n, d)?;
    let field = PrimeField::new(p)?;
    let mut total: u128 = 1;
    for _ in 0..d {
        total = total.saturating_mul(p as u128);
    }
    charge(total, budget)?;

    let mut representatives = PointSet::empty(Domain::Integers, d);
    for lead in 0..d {
        // Monic class representatives: zeros, then 1 at `lead`, then a free
        // suffix enumerated as an odometer.
        let free = d - lead - 1;
        let mut suffix = vec![0u64; free];
        loop {
            let mut x = vec![0u64; d];
            x[lead] = 1;
            x[lead + 1..].copy_from_slice(&suffix);
            let inserted = representatives.push(short_representative(field, &x, n)?)?;
            assert!(inserted, "distinct classes give distinct representatives");
            let mut rolled = true;
            for slot in suffix.iter_mut().rev() {
                *slot += 1;
                if *slot < p {
                    rolled = false;
                    break;
                }
                *slot = 0;
            }
            if rolled {
                break;
            }
        }
    }
    let witness = ProjectiveWitness { p, d, n, representatives };
    assert_eq!(witness.representatives.len() as u64, witness.expected_count());
    Ok(witness)
}

/// A certified covering lower bound derived from a projective witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringBound {
    pub p: u64,
    pub d: usize,
    pub k: usize,
    pub set_size: usize,
    /// Exact maximum, over all k-dimensional linear subspaces of `F_p^d`,
    /// of the number of witness classes inside.
    pub per_subspace_max: usize,
    /// The structural cap `(p^k - 1)/(p - 1)` the maximum must respect.
    pub class_cap: u64,
    /// `ceil(set_size / per_subspace_max)`: no family of fewer
    /// k-dimensional subspaces can cover the witness, over `F_p` or `R`.
    pub lower_bound: usize,
}

/// Enumerates every k-dimensional linear subspace of `F_p^d` and counts
/// witness points inside, giving the certified covering lower bound
/// `ceil(|S| / per_subspace_max)`.
pub fn covering_bound_certificate(
    w: &ProjectiveWitness,
    k: usize,
    budget: u64,
) -> Result<CoveringBound> {
    if k < 1 || k > w.d {
        return Err(Error::InvalidParams(format!("need 1 <= k <= d, got k={k} d={}", w.d)));
    }
    let field = PrimeField::new(w.p)?;
    let reduced: Vec<Vec<u64>> = w
        .representatives
        .points()
        .iter()
        .map(|pt| pt.iter().map(|&c| field.elem(c)).collect())
        .collect();
    let mut per_subspace_max = 0usize;
    for subspace in enumerate_linear(field, w.d, k, budget)? {
        let mut count = 0usize;
        for x in &reduced {
            if subspace.contains(x)? {
                count += 1;
            }
        }
        per_subspace_max = per_subspace_max.max(count);
    }
    let class_cap = ((0..k).fold(1u64, |acc, _| acc * w.p) - 1) / (w.p - 1);
    assert!(
        per_subspace_max as u64 <= class_cap,
        "a {k}-dimensional subspace cannot hold more than {class_cap} classes"
    );
    let set_size = w.representatives.len();
    Ok(CoveringBound {
        p: w.p,
        d: w.d,
        k,
        set_size,
        per_subspace_max,
        class_cap,
        lower_bound: set_size.div_ceil(per_subspace_max.max(1)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::DEFAULT_BUDGET;

    const BUDGET: u64 = DEFAULT_BUDGET;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn short_representative_examples() {
        // Already short: lambda = 1.
        assert_eq!(short_representative(f(5), &[1, 2], 3).unwrap(), vec![1, 2]);
        // Centered residues of (3, 4) mod 5 are (-2, -1).
        assert_eq!(short_representative(f(5), &[3, 4], 3).unwrap(), vec![-2, -1]);
        // (1, 5) mod 7 centers to (1, -2), within 3 already at lambda = 1.
        assert_eq!(short_representative(f(7), &[1, 5], 3).unwrap(), vec![1, -2]);
        // Zero vector refused.
        assert!(short_representative(f(7), &[0, 0], 3).is_err());
        // Outside the regime the scan can exhaust all multipliers.
        assert!(matches!(
            short_representative(f(7), &[1, 3], 1),
            Err(Error::NoShortRepresentative { .. })
        ));
    }

    #[test]
    fn short_representative_is_equivalent_and_short() {
        // Regime p <= n^(d/(d-1)): d=2, n=5 allows p up to 25.
        let field = f(23);
        for a in 0..23u64 {
            for b in 0..23u64 {
                if a == 0 && b == 0 {
                    continue;
                }
                let y = short_representative(field, &[a, b], 5).unwrap();
                assert!(y.iter().all(|&c| c.unsigned_abs() <= 5));
                // Some lambda reproduces y from (a, b) mod 23.
                let works = (1..23).any(|l| {
                    field.mul(l, a) == field.elem(y[0]) && field.mul(l, b) == field.elem(y[1])
                });
                assert!(works, "({a},{b}) -> {y:?} is not projectively equivalent");
            }
        }
    }

    #[test]
    fn affine_lift_small() {
        let r = lift_affine(4, 2, 1, 3, BUDGET).unwrap();
        assert_eq!(r.p, 3);
        assert_eq!(r.lifted.len(), r.source_size);
        assert!(r.lifted.len() <= 3);
        for pt in r.lifted.points() {
            assert!(pt.iter().all(|&c| (1..=4).contains(&c)));
        }
        let cert = r.certificate.expect("small instance is certifiable");
        assert_eq!(cert.flavor, Flavor::Affine);
        assert!(cert.verify(&r.lifted).unwrap());
    }

    #[test]
    fn affine_lift_preserves_evasiveness_mod_p() {
        // The real c_max of the lift cannot exceed the mod-p c_max of the
        // source: an affine dependence over Z reduces mod p.
        let r = lift_affine(8, 3, 1, 11, BUDGET).unwrap();
        assert_eq!(r.p, 7);
        let source = PointSet::new(
            Domain::Field(f(7)),
            3,
            r.lifted.points().iter().map(|pt| pt.iter().map(|&c| c - 1).collect()).collect(),
        )
        .unwrap();
        let lifted_c = r.certificate.as_ref().unwrap().c_max;
        let source_c =
            max_intersection_subsets(&source, 1, Flavor::Affine, BUDGET).unwrap().c_max;
        assert!(lifted_c <= source_c);
    }

    #[test]
    fn affine_lift_certificate_respects_budget() {
        // Enough budget for the p^(d-k) construction scan but not for the
        // subset search: the lift succeeds without a certificate.
        let r = lift_affine(4, 3, 1, 5, 12).unwrap();
        assert!(r.certificate.is_none());
        assert_eq!(r.lifted.len(), r.source_size);
    }

    #[test]
    fn linear_window_examples() {
        assert_eq!(linear_window_prime(3, 3).unwrap(), 5);
        assert_eq!(linear_window_prime(2, 2).unwrap(), 3);
        assert_eq!(linear_window_prime(10, 3).unwrap(), 31);
    }

    #[test]
    fn linear_lift_small() {
        let r = lift_linear(4, 3, 1, 2, BUDGET).unwrap();
        // Window: p^2 < 64 < (2p)^2 gives p = 7.
        assert_eq!(r.p, 7);
        for pt in r.lifted.points() {
            assert!(pt.iter().all(|&c| (1..=4).contains(&c)), "{pt:?} outside [1,4]^3");
        }
        let star = r.distinct_representatives.unwrap();
        assert!(r.lifted.len() >= star.div_ceil(27));
        let cert = r.certificate.expect("small instance is certifiable");
        assert_eq!(cert.flavor, Flavor::Linear);
        assert!(cert.verify(&r.lifted).unwrap());
    }

    #[test]
    fn linear_lift_certificate_matches_proportionality_scan() {
        // k = 1 oracle: the largest set of pairwise R-proportional points.
        let r = lift_linear(5, 3, 1, 9, BUDGET).unwrap();
        let pts = r.lifted.points();
        let proportional = |x: &[i64], y: &[i64]| {
            (0..3).all(|a| (a + 1..3).all(|b| x[a] * y[b] == x[b] * y[a]))
        };
        let mut best = 0usize;
        for i in 0..pts.len() {
            let class =
                pts.iter().filter(|q| proportional(&pts[i], q)).count();
            best = best.max(class);
        }
        assert_eq!(r.certificate.unwrap().c_max, best.max(if pts.is_empty() { 0 } else { 1 }));
    }

    #[test]
    fn covering_witness_f3_squared() {
        let w = covering_witness(2, 2, BUDGET).unwrap();
        assert_eq!(w.p, 3);
        assert_eq!(w.representatives.len(), 4);
        assert!(w.validate().unwrap());
    }

    #[test]
    fn covering_witness_f5_cubed() {
        let w = covering_witness(3, 3, BUDGET).unwrap();
        assert_eq!(w.p, 5);
        assert_eq!(w.representatives.len(), 31);
        assert!(w.validate().unwrap());
        for pt in w.representatives.points() {
            assert!(pt.iter().all(|&c| c.unsigned_abs() <= 3));
        }
    }

    #[test]
    fn covering_bound_lines_and_planes() {
        let w = covering_witness(3, 3, BUDGET).unwrap();
        // k = 1: each line through the origin holds exactly one class.
        let lines = covering_bound_certificate(&w, 1, BUDGET).unwrap();
        assert_eq!(lines.per_subspace_max, 1);
        assert_eq!(lines.lower_bound, 31);
        // k = 2: each plane holds (25 - 1)/4 = 6 classes.
        let planes = covering_bound_certificate(&w, 2, BUDGET).unwrap();
        assert_eq!(planes.per_subspace_max, 6);
        assert_eq!(planes.class_cap, 6);
        assert_eq!(planes.lower_bound, 6);
        // Bigger subspaces cover more: the bound is non-increasing in k.
        assert!(planes.lower_bound <= lines.lower_bound);
    }

    #[test]
    fn parameter_validation() {
        assert!(lift_affine(3, 2, 1, 0, BUDGET).is_err());
        assert!(lift_affine(8, 3, 0, 0, BUDGET).is_err());
        assert!(lift_affine(8, 3, 3, 0, BUDGET).is_err());
        assert!(lift_linear(1, 3, 1, 0, BUDGET).is_err());
        assert!(covering_witness(3, 1, BUDGET).is_err());
        let w = covering_witness(3, 3, BUDGET).unwrap();
        assert!(covering_bound_certificate(&w, 0, BUDGET).is_err());
    }
}
