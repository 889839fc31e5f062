//! Point–hyperplane incidence configurations with many incidences and no
//! large complete bipartite pattern.
//!
//! The build pairs the two lattice lifts: a point set `P ⊆ [n0]^d` on which
//! no `k`-dimensional affine flat holds more than `c1` points, and a normal
//! set `N ⊆ [m0]^d` on which no `(d-k-1)`-dimensional linear subspace holds
//! more than `c2` points, with `k = ⌊d/2⌋ - 1`. The hyperplane family is
//!
//! ```text
//! H = { {x : <x, y> = t} : y ∈ N, t ∈ {<x, y> : x ∈ P} }
//! ```
//!
//! so the hyperplanes with a fixed normal partition `P` and the incidence
//! count is exactly `|P| * |N|`, while the two evasiveness certificates
//! force the incidence graph to be `K_{c1+1, c2+1}`-free: `c1 + 1` common
//! points span too many directions for `c2 + 1` distinct normals to fit in
//! their orthogonal complement.
//!
//! Hyperplane file format: a header line `hyperplanes d=<d>` followed by
//! one hyperplane per line, `y1 y2 ... yd : t`. Blank lines and lines
//! starting with `#` are ignored.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_integer::Integer;

use crate::error::{charge, Error, Result};
use crate::lift::{lift_affine, lift_linear, smallest_root_at_least, LiftReport};
use crate::points::{Domain, PointSet};

/// The hyperplane `{x ∈ R^d : <x, normal> = offset}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Hyperplane {
    normal: Vec<i64>,
    offset: i64,
}

fn dot(x: &[i64], y: &[i64]) -> i128 {
    assert_eq!(x.len(), y.len(), "dot product of mismatched dimensions");
    x.iter().zip(y).map(|(&a, &b)| a as i128 * b as i128).sum()
}

impl Hyperplane {
    pub fn new(normal: Vec<i64>, offset: i64) -> Result<Self> {
        if normal.is_empty() {
            return Err(Error::EmptyInput("hyperplane normal"));
        }
        if normal.iter().all(|&c| c == 0) {
            return Err(Error::InvalidParams("hyperplane normal must be nonzero".into()));
        }
        Ok(Hyperplane { normal, offset })
    }

    pub fn normal(&self) -> &[i64] {
        &self.normal
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn ambient_dim(&self) -> usize {
        self.normal.len()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        dot(x, &self.normal) == self.offset as i128
    }
}

/// Serializes hyperplanes in the text format; every normal must have
/// length `d`.
pub fn hyperplanes_to_text(d: usize, hs: &[Hyperplane]) -> Result<String> {
    let mut out = format!("hyperplanes d={d}\n");
    for h in hs {
        if h.ambient_dim() != d {
            return Err(Error::DimensionMismatch { expected: d, got: h.ambient_dim() });
        }
        let coords: Vec<String> = h.normal.iter().map(|c| c.to_string()).collect();
        out.push_str(&format!("{} : {}\n", coords.join(" "), h.offset));
    }
    Ok(out)
}

pub fn hyperplanes_from_text(text: &str) -> Result<Vec<Hyperplane>> {
    let perr = |no: usize, msg: String| Error::Parse { line: no + 1, msg };
    let mut lines = text.lines().enumerate().filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('#')
    });
    let (header_no, header) =
        lines.next().ok_or(Error::EmptyInput("hyperplane file has no header"))?;
    let mut fields = header.split_whitespace();
    if fields.next() != Some("hyperplanes") {
        return Err(perr(header_no, "expected header starting with 'hyperplanes'".into()));
    }
    let mut d = None;
    for field in fields {
        match field.split_once('=') {
            Some(("d", v)) => {
                d = Some(
                    v.parse::<usize>().map_err(|e| perr(header_no, format!("bad d: {e}")))?,
                )
            }
            _ => return Err(perr(header_no, format!("bad header field '{field}'"))),
        }
    }
    let d = d.ok_or_else(|| perr(header_no, "missing d=".into()))?;

    let mut out = Vec::new();
    for (no, line) in lines {
        let (left, right) = line
            .split_once(':')
            .ok_or_else(|| perr(no, "expected 'y1 ... yd : t'".into()))?;
        let normal: Vec<i64> = left
            .split_whitespace()
            .map(|t| t.parse::<i64>().map_err(|e| perr(no, format!("bad coordinate: {e}"))))
            .collect::<Result<_>>()?;
        if normal.len() != d {
            return Err(perr(no, format!("expected {d} coordinates")));
        }
        let offset = right
            .trim()
            .parse::<i64>()
            .map_err(|e| perr(no, format!("bad offset: {e}")))?;
        out.push(Hyperplane::new(normal, offset).map_err(|e| perr(no, e.to_string()))?);
    }
    Ok(out)
}

/// A built point/hyperplane configuration together with the certified
/// evasiveness parameters of its two ingredient sets.
#[derive(Debug, Clone)]
pub struct IncidenceConfig {
    pub d: usize,
    pub n: u64,
    pub m: u64,
    /// Affine flat dimension the point set evades: `⌊d/2⌋ - 1`.
    pub k: usize,
    /// Side of the point grid, the smallest integer with `n0^(d-k) >= n`.
    pub n0: u64,
    /// Side of the normal grid, the smallest integer with
    /// `m0^(dk+2d-1) * n0^(d-1) >= m^(d-1)`.
    pub m0: u64,
    pub seed: u64,
    pub points: PointSet,
    pub normals: PointSet,
    /// Deduplicated: no two entries share (normal, offset).
    pub hyperplanes: Vec<Hyperplane>,
    /// Exact max points of `P` on a `k`-dimensional affine flat, when the
    /// budget allowed certifying it (`Some(1)` in the degenerate `k = 0`
    /// case: points are distinct).
    pub c1: Option<usize>,
    /// Exact max points of `N` on a `(d-k-1)`-dimensional linear subspace.
    pub c2: Option<usize>,
    /// Lift report for `P` (`None` in the `k = 0` grid case).
    pub point_lift: Option<LiftReport>,
    pub normal_lift: Option<LiftReport>,
}

impl IncidenceConfig {
    /// Re-verifies the structural invariants: every hyperplane contains at
    /// least one point, every normal belongs to the normal set, and no
    /// (normal, offset) pair repeats.
    pub fn validate(&self) -> bool {
        let mut seen = BTreeSet::new();
        for h in &self.hyperplanes {
            if !seen.insert((h.normal.clone(), h.offset)) {
                return false;
            }
            if !self.normals.points().iter().any(|y| y[..] == h.normal[..]) {
                return false;
            }
            if !self.points.points().iter().any(|x| h.contains(x)) {
                return false;
            }
        }
        true
    }
}

/// Builds the configuration for ambient dimension `d >= 3` and nominal
/// grid sizes `n` (points) and `m` (normals). The realized sizes use the
/// exact ceilings `n0`, `m0` above; the normal lift draws from `seed + 1`
/// so the two constructions are independent. Propagates lift errors (for
/// instance when `n0` is too small for the affine lift's prime window).
pub fn build_config(d: usize, n: u64, m: u64, seed: u64, budget: u64) -> Result<IncidenceConfig> {
    if d < 3 {
        return Err(Error::InvalidParams(format!("need d >= 3, got {d}")));
    }
    if n < 2 || m < 2 {
        return Err(Error::InvalidParams(format!("need n, m >= 2, got n={n} m={m}")));
    }
    let k = d / 2 - 1;
    let n0 = smallest_root_at_least(
        &BigUint::from(n),
        u32::try_from(d - k).map_err(|_| Error::Overflow)?,
        false,
    );

    let (points, c1, point_lift) = if k == 0 {
        // A 0-dimensional affine flat is a single point, so evasiveness
        // just means bounded multiplicity: the full grid of distinct
        // points has c1 = 1.
        let mut total: u128 = 1;
        for _ in 0..d {
            total = total.saturating_mul(n0 as u128);
        }
        charge(total, budget)?;
        let mut grid = PointSet::empty(Domain::Integers, d);
        let mut coords = vec![1i64; d];
        loop {
            grid.push(coords.clone())?;
            let mut rolled = true;
            for slot in coords.iter_mut().rev() {
                *slot += 1;
                if *slot <= n0 as i64 {
                    rolled = false;
                    break;
                }
                *slot = 1;
            }
            if rolled {
                break;
            }
        }
        (grid, Some(1), None)
    } else {
        let rep = lift_affine(n0, d, k, seed, budget)?;
        let c1 = rep.certificate.as_ref().map(|c| c.c_max);
        (rep.lifted.clone(), c1, Some(rep))
    };

    let exp = u32::try_from(d * k + 2 * d - 1).map_err(|_| Error::Overflow)?;
    let side = u32::try_from(d - 1).map_err(|_| Error::Overflow)?;
    let ratio = BigUint::from(m).pow(side).div_ceil(&BigUint::from(n0).pow(side));
    let m0 = smallest_root_at_least(&ratio, exp, false);
    if n0 < 2 || m0 < 2 {
        return Err(Error::InvalidParams(format!(
            "grids too small: n0={n0} m0={m0}; pick larger n, m"
        )));
    }
    let normal_lift = lift_linear(m0, d, d - k - 1, seed.wrapping_add(1), budget)?;
    let c2 = normal_lift.certificate.as_ref().map(|c| c.c_max);
    let normals = normal_lift.lifted.clone();

    charge(points.len() as u128 * normals.len() as u128, budget)?;
    let mut seen = BTreeSet::new();
    let mut hyperplanes = Vec::new();
    for y in normals.points() {
        for x in points.points() {
            let t = i64::try_from(dot(x, y)).map_err(|_| Error::Overflow)?;
            if seen.insert((y.clone(), t)) {
                hyperplanes.push(Hyperplane { normal: y.clone(), offset: t });
            }
        }
    }
    // Offsets <x, y> lie in [d, d*n0*m0], so each normal contributes at
    // most d*n0*m0 hyperplanes.
    assert!(
        hyperplanes.len() as u128
            <= d as u128 * m0 as u128 * n0 as u128 * normals.len() as u128
    );

    Ok(IncidenceConfig {
        d,
        n,
        m,
        k,
        n0,
        m0,
        seed,
        points,
        normals,
        hyperplanes,
        c1,
        c2,
        point_lift,
        normal_lift: Some(normal_lift),
    })
}

/// Exact number of (point, hyperplane) incident pairs, by the double loop.
/// For built configurations this equals `|P| * |N|`: the hyperplanes
/// sharing a normal partition the point set.
pub fn count_incidences(cfg: &IncidenceConfig) -> u128 {
    let mut count: u128 = 0;
    for h in &cfg.hyperplanes {
        for x in cfg.points.points() {
            if h.contains(x) {
                count += 1;
            }
        }
    }
    count
}

/// A complete bipartite pattern found by [`check_bipartite_free`]: every
/// listed point lies on every listed hyperplane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreenessViolation {
    pub hyperplane_indices: Vec<usize>,
    pub point_indices: Vec<usize>,
}

/// Decides whether the incidence graph is `K_{a,b}`-free: no `a` points
/// lying on all of some `b` hyperplanes. Searches subsets of hyperplanes
/// (the smaller side in built configs) depth-first, carrying the running
/// common point set and pruning as soon as it drops below `a`; one budget
/// unit per attempted extension.
pub fn check_bipartite_free(
    cfg: &IncidenceConfig,
    a: usize,
    b: usize,
    budget: u64,
) -> Result<(bool, Option<FreenessViolation>)> {
    if a < 1 || b < 1 {
        return Err(Error::InvalidParams(format!("need a, b >= 1, got a={a} b={b}")));
    }
    let members: Vec<Vec<usize>> = cfg
        .hyperplanes
        .iter()
        .map(|h| {
            (0..cfg.points.len()).filter(|&i| h.contains(cfg.points.point(i))).collect()
        })
        .collect();
    let mut search =
        FreeSearch { members: &members, a, b, budget_left: budget, budget };
    let all: Vec<usize> = (0..cfg.points.len()).collect();
    let mut chosen = Vec::new();
    let violation = search.dfs(0, &mut chosen, &all)?;
    Ok((violation.is_none(), violation))
}

struct FreeSearch<'a> {
    members: &'a [Vec<usize>],
    a: usize,
    b: usize,
    budget_left: u64,
    budget: u64,
}

impl FreeSearch<'_> {
    fn dfs(
        &mut self,
        start: usize,
        chosen: &mut Vec<usize>,
        common: &[usize],
    ) -> Result<Option<FreenessViolation>> {
        if chosen.len() == self.b {
            return Ok(Some(FreenessViolation {
                hyperplane_indices: chosen.clone(),
                point_indices: common.to_vec(),
            }));
        }
        for j in start..self.members.len() {
            if self.members.len() - j < self.b - chosen.len() {
                break;
            }
            if self.budget_left == 0 {
                return Err(Error::BudgetExceeded {
                    needed: format!(
                        "more than {} (frontier: {} hyperplanes chosen, next index {})",
                        self.budget,
                        chosen.len(),
                        j
                    ),
                    cap: self.budget,
                });
            }
            self.budget_left -= 1;
            let inter: Vec<usize> = {
                let row = &self.members[j];
                let mut it = row.iter().peekable();
                let mut out = Vec::new();
                for &p in common {
                    while it.peek().is_some_and(|&&q| q < p) {
                        it.next();
                    }
                    if it.peek() == Some(&&p) {
                        out.push(p);
                    }
                }
                out
            };
            if inter.len() < self.a {
                continue;
            }
            chosen.push(j);
            if let Some(v) = self.dfs(j + 1, chosen, &inter)? {
                return Ok(Some(v));
            }
            chosen.pop();
        }
        Ok(None)
    }
}

/// Incidence-count report: the achieved count against the power of `nm`
/// the construction targets asymptotically.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentReport {
    pub d: usize,
    pub n: u64,
    pub m: u64,
    pub incidences: u128,
    /// `1 - (2d^2+d-2)/((d+2)(d^2+2d-2))` for even `d`,
    /// `1 - (2d+3)/((d+2)(d+3))` for odd `d`.
    pub target_exponent: f64,
    /// `log I / log(nm)`; informational — the asymptotic constants are not
    /// visible at desk scale.
    pub realized_exponent: f64,
}

pub fn target_exponent(d: usize) -> f64 {
    let x = d as f64;
    if d % 2 == 0 {
        1.0 - (2.0 * x * x + x - 2.0) / ((x + 2.0) * (x * x + 2.0 * x - 2.0))
    } else {
        1.0 - (2.0 * x + 3.0) / ((x + 2.0) * (x + 3.0))
    }
}

pub fn incidence_exponent_report(cfg: &IncidenceConfig) -> ExponentReport {
    let incidences = count_incidences(cfg);
    let log_nm = (cfg.n as f64 * cfg.m as f64).ln();
    let realized = if incidences <= 1 || log_nm <= 0.0 {
        0.0
    } else {
        (incidences as f64).ln() / log_nm
    };
    ExponentReport {
        d: cfg.d,
        n: cfg.n,
        m: cfg.m,
        incidences,
        target_exponent: target_exponent(cfg.d),
        realized_exponent: realized,
    }
}
