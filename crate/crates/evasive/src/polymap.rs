//! Random polynomial maps and the sets they carve out.
//!
//! The construction evaluates a map `q = (q_1, ..., q_d) : F_p^k -> F_p^d`
//! whose components are independent uniform polynomials of degree at most
//! `D = (d+1)k + 1`. Its image is, with high probability, a set of roughly
//! `p^k` points such that every (d-k)-dimensional affine flat contains only
//! a bounded number of them. The moment diagnostic measures the quantity
//! driving that bound: for `N` the number of common zeros of `k` random
//! such polynomials in `k` variables, `E[N^s] <= s^(s+1)` whenever
//! `s <= min(D, sqrt(p))`.
//!
//! Polynomial text format, one map per file:
//!
//! ```text
//! polymap p=7 k=2 d=3 degree=9
//! # one component per line, terms 'coeff*e1,e2', zero polynomial '0'
//! 3*0,0 5*1,2
//! 0
//! 1*0,1
//! ```

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::Rng;
use rand_chacha::ChaCha12Rng;

use crate::error::{charge, Error, Result};
use crate::evasive::{max_intersection_enum, Certificate, Flavor};
use crate::field::PrimeField;
use crate::points::{parse_num, Domain, PointSet};
use crate::seed::rng_for;
use crate::subspace::count_affine_flats;

/// Monomial exponents, one entry per variable; total degree is the entry
/// sum.
pub type ExponentVector = Vec<u32>;

/// All exponent vectors of `k` variables with total degree at most
/// `degree`, in ascending lexicographic order.
pub fn exponent_vectors(k: usize, degree: u32) -> Vec<ExponentVector> {
    let mut out = Vec::new();
    let mut current = vec![0u32; k];
    fill(&mut out, &mut current, 0, degree);
    return out;

    fn fill(out: &mut Vec<ExponentVector>, current: &mut Vec<u32>, var: usize, left: u32) {
        if var == current.len() {
            out.push(current.clone());
            return;
        }
        for e in 0..=left {
            current[var] = e;
            fill(out, current, var + 1, left - e);
        }
        current[var] = 0;
    }
}

/// `|Λ_D| = C(D + k, k)`: the number of monomials of `k` variables with
/// total degree at most `D`.
pub fn monomial_count(k: usize, degree: u32) -> BigUint {
    num_integer::binomial(BigUint::from(degree as u64 + k as u64), BigUint::from(k))
}

/// A polynomial over `F_p` in `num_vars` variables, stored sparsely by
/// exponent vector; only nonzero coefficients are kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePolynomial {
    field: PrimeField,
    num_vars: usize,
    degree_bound: u32,
    terms: BTreeMap<ExponentVector, u64>,
}

impl SparsePolynomial {
    pub fn zero(field: PrimeField, num_vars: usize, degree_bound: u32) -> Self {
        SparsePolynomial { field, num_vars, degree_bound, terms: BTreeMap::new() }
    }

    /// Builds from `(exponents, coefficient)` pairs; coefficients are
    /// canonicalized and zero terms dropped. Exponent vectors must have
    /// `num_vars` entries summing to at most `degree_bound`.
    pub fn from_terms(
        field: PrimeField,
        num_vars: usize,
        degree_bound: u32,
        raw: impl IntoIterator<Item = (ExponentVector, i64)>,
    ) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (exp, coeff) in raw {
            if exp.len() != num_vars {
                return Err(Error::DimensionMismatch { expected: num_vars, got: exp.len() });
            }
            let total: u32 = exp.iter().sum();
            if total > degree_bound {
                return Err(Error::InvalidParams(format!(
                    "monomial degree {total} exceeds bound {degree_bound}"
                )));
            }
            let c = field.elem(coeff);
            if c != 0 {
                terms.insert(exp, c);
            }
        }
        Ok(SparsePolynomial { field, num_vars, degree_bound, terms })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    pub fn terms(&self) -> &BTreeMap<ExponentVector, u64> {
        &self.terms
    }

    /// Total degree of the highest nonzero term, `None` for the zero
    /// polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn evaluate(&self, z: &[u64]) -> Result<u64> {
        if z.len() != self.num_vars {
            return Err(Error::DimensionMismatch { expected: self.num_vars, got: z.len() });
        }
        Ok(self.evaluate_with_powers(&power_table(self.field, z, self.degree_bound)))
    }

    /// Evaluation against a precomputed `pows[i][e] = z_i^e` table (shared
    /// across the components of a map).
    fn evaluate_with_powers(&self, pows: &[Vec<u64>]) -> u64 {
        let f = self.field;
        let mut acc = 0u64;
        for (exp, &coeff) in &self.terms {
            let mut term = coeff;
            for (i, &e) in exp.iter().enumerate() {
                if e > 0 {
                    term = f.mul(term, pows[i][e as usize]);
                }
            }
            acc = f.add(acc, term);
        }
        acc
    }

    fn to_line(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let terms: Vec<String> = self
            .terms
            .iter()
            .map(|(exp, c)| {
                let exps: Vec<String> = exp.iter().map(|e| e.to_string()).collect();
                format!("{c}*{}", exps.join(","))
            })
            .collect();
        terms.join(" ")
    }
}

fn power_table(field: PrimeField, z: &[u64], degree: u32) -> Vec<Vec<u64>> {
    z.iter()
        .map(|&zi| {
            let zi = zi % field.p();
            let mut pows = Vec::with_capacity(degree as usize + 1);
            pows.push(1u64);
            for _ in 0..degree {
                pows.push(field.mul(*pows.last().expect("nonempty"), zi));
            }
            pows
        })
        .collect()
}

/// Draws a uniform polynomial of degree at most `degree`: one independent
/// uniform coefficient per monomial of `Λ_degree`, in lexicographic order.
pub fn sample_polynomial(
    field: PrimeField,
    num_vars: usize,
    degree: u32,
    rng: &mut ChaCha12Rng,
) -> SparsePolynomial {
    let mut terms = BTreeMap::new();
    for exp in exponent_vectors(num_vars, degree) {
        let c = rng.random_range(0..field.p());
        if c != 0 {
            terms.insert(exp, c);
        }
    }
    SparsePolynomial { field, num_vars, degree_bound: degree, terms }
}

/// A tuple of polynomials sharing field, arity, and degree bound, read as a
/// map `F_p^k -> F_p^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialMap {
    components: Vec<SparsePolynomial>,
}

impl PolynomialMap {
    pub fn new(components: Vec<SparsePolynomial>) -> Result<Self> {
        let first = components.first().ok_or(Error::EmptyInput("map with no components"))?;
        for c in &components[1..] {
            first.field.require_same(&c.field)?;
            if c.num_vars != first.num_vars {
                return Err(Error::DimensionMismatch {
                    expected: first.num_vars,
                    got: c.num_vars,
                });
            }
            if c.degree_bound != first.degree_bound {
                return Err(Error::InvalidParams(format!(
                    "component degree bounds differ: {} vs {}",
                    first.degree_bound, c.degree_bound
                )));
            }
        }
        Ok(PolynomialMap { components })
    }

    /// Samples the `d` components independently from the master seed
    /// (labels `component/0` through `component/d-1`).
    pub fn sample(field: PrimeField, k: usize, d: usize, degree: u32, seed: u64) -> Self {
        let components = (0..d)
            .map(|i| {
                let mut rng = rng_for(seed, &format!("component/{i}"));
                sample_polynomial(field, k, degree, &mut rng)
            })
            .collect();
        PolynomialMap { components }
    }

    pub fn field(&self) -> PrimeField {
        self.components[0].field
    }

    /// Number of input variables `k`.
    pub fn arity(&self) -> usize {
        self.components[0].num_vars
    }

    /// Number of output coordinates `d`.
    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn degree_bound(&self) -> u32 {
        self.components[0].degree_bound
    }

    pub fn components(&self) -> &[SparsePolynomial] {
        &self.components
    }

    pub fn evaluate(&self, z: &[u64]) -> Result<Vec<u64>> {
        if z.len() != self.arity() {
            return Err(Error::DimensionMismatch { expected: self.arity(), got: z.len() });
        }
        let pows = power_table(self.field(), z, self.degree_bound());
        Ok(self.components.iter().map(|c| c.evaluate_with_powers(&pows)).collect())
    }

    /// The image point set `{q(z) : z in F_p^k}`, deduplicated, with inputs
    /// enumerated in lexicographic order. Charges `p^k` budget units.
    pub fn image_set(&self, budget: u64) -> Result<PointSet> {
        let field = self.field();
        charge_pow(field.p(), self.arity(), budget)?;
        let mut out = PointSet::empty(Domain::Field(field), self.dim());
        for z in InputIter::new(field.p(), self.arity()) {
            let image = self.evaluate(&z)?;
            out.push(image.iter().map(|&v| v as i64).collect())?;
        }
        Ok(out)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "polymap p={} k={} d={} degree={}\n",
            self.field().p(),
            self.arity(),
            self.dim(),
            self.degree_bound()
        );
        for c in &self.components {
            out.push_str(&c.to_line());
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        });
        let (header_no, header) =
            lines.next().ok_or(Error::EmptyInput("polynomial-map file has no header"))?;
        let perr = |no: usize, msg: String| Error::Parse { line: no + 1, msg };
        let mut fields = header.split_whitespace();
        if fields.next() != Some("polymap") {
            return Err(perr(header_no, "expected header starting with 'polymap'".into()));
        }
        let (mut p, mut k, mut d, mut degree) = (None, None, None, None);
        for field in fields {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| perr(header_no, format!("bad header field '{field}'")))?;
            let n = parse_num::<u64>(value).map_err(|m| perr(header_no, m))?;
            match key {
                "p" => p = Some(n),
                "k" => k = Some(n as usize),
                "d" => d = Some(n as usize),
                "degree" => degree = Some(n as u32),
                other => return Err(perr(header_no, format!("unknown header key '{other}'"))),
            }
        }
        let (Some(p), Some(k), Some(d), Some(degree)) = (p, k, d, degree) else {
            return Err(perr(header_no, "header needs p=, k=, d=, degree=".into()));
        };
        let field = PrimeField::new(p)?;
        let mut components = Vec::new();
        for (no, line) in lines {
            let line = line.trim();
            let mut terms = Vec::new();
            if line != "0" {
                for token in line.split_whitespace() {
                    let (c, exps) = token
                        .split_once('*')
                        .ok_or_else(|| perr(no, format!("bad term '{token}'")))?;
                    let coeff = parse_num::<i64>(c).map_err(|m| perr(no, m))?;
                    let exp: Vec<u32> = exps
                        .split(',')
                        .map(parse_num::<u32>)
                        .collect::<std::result::Result<_, _>>()
                        .map_err(|m| perr(no, m))?;
                    terms.push((exp, coeff));
                }
            }
            components.push(
                SparsePolynomial::from_terms(field, k, degree, terms)
                    .map_err(|e| perr(no, e.to_string()))?,
            );
        }
        if components.len() != d {
            return Err(perr(header_no, format!("d={d} but {} components", components.len())));
        }
        PolynomialMap::new(components)
    }
}

/// Lexicographic odometer over `F_p^k` (last coordinate fastest).
struct InputIter {
    p: u64,
    current: Option<Vec<u64>>,
}

impl InputIter {
    fn new(p: u64, k: usize) -> Self {
        InputIter { p, current: Some(vec![0; k]) }
    }
}

impl Iterator for InputIter {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let out = self.current.clone()?;
        let z = self.current.as_mut().expect("checked above");
        let mut rolled = true;
        for v in z.iter_mut().rev() {
            *v += 1;
            if *v < self.p {
                rolled = false;
                break;
            }
            *v = 0;
        }
        if rolled {
            self.current = None;
        }
        Some(out)
    }
}

fn charge_pow(p: u64, k: usize, budget: u64) -> Result<()> {
    let mut total: u128 = 1;
    for _ in 0..k {
        total = total.saturating_mul(p as u128);
    }
    charge(total, budget)
}

/// Number of common zeros in `F_p^k` of a family of `k`-variate
/// polynomials. Charges `p^k` budget units.
pub fn variety_count(polys: &[SparsePolynomial], budget: u64) -> Result<u64> {
    let first = polys.first().ok_or(Error::EmptyInput("variety of no polynomials"))?;
    let field = first.field;
    let k = first.num_vars;
    for q in polys {
        field.require_same(&q.field)?;
        if q.num_vars != k {
            return Err(Error::DimensionMismatch { expected: k, got: q.num_vars });
        }
    }
    charge_pow(field.p(), k, budget)?;
    let degree = polys.iter().map(|q| q.degree_bound).max().expect("nonempty");
    let mut count = 0u64;
    for z in InputIter::new(field.p(), k) {
        let pows = power_table(field, &z, degree);
        if polys.iter().all(|q| q.evaluate_with_powers(&pows) == 0) {
            count += 1;
        }
    }
    Ok(count)
}

/// Degree bound used by the evasive construction: `D = (d+1)k + 1`.
pub fn construction_degree(d: usize, k: usize) -> u32 {
    ((d + 1) * k + 1) as u32
}

/// Output of [`construct_evasive`].
#[derive(Debug, Clone)]
pub struct Construction {
    pub map: PolynomialMap,
    pub points: PointSet,
    pub degree: u32,
    /// Whether the image kept at least a third of the maximum `p^k` inputs
    /// (the size regime the probabilistic size bound promises).
    pub meets_size_target: bool,
    /// Enumeration-oracle certificate for flat dimension `d - k`, affine
    /// flavor, when the flat count fits the budget.
    pub certificate: Option<Certificate>,
}

/// Samples a degree-`(d+1)k+1` map `F_p^k -> F_p^d` from `seed` and returns
/// its image with an evasiveness certificate for (d-k)-dimensional affine
/// flats when that enumeration fits `budget`.
pub fn construct_evasive(
    p: u64,
    d: usize,
    k: usize,
    seed: u64,
    budget: u64,
) -> Result<Construction> {
    if k < 1 || k > d {
        return Err(Error::InvalidParams(format!("need 1 <= k <= d, got k={k} d={d}")));
    }
    let field = PrimeField::new(p)?;
    let degree = construction_degree(d, k);
    let map = PolynomialMap::sample(field, k, d, degree, seed);
    let points = map.image_set(budget)?;
    let meets_size_target = 3 * points.len() as u128 >= (p as u128).pow(k as u32);
    let flat_dim = d - k;
    let flats = count_affine_flats(d, flat_dim, p);
    let certificate = match u128::try_from(&flats) {
        Ok(n) if n <= budget as u128 => {
            Some(max_intersection_enum(&points, flat_dim, Flavor::Affine, budget)?)
        }
        _ => None,
    };
    Ok(Construction { map, points, degree, meets_size_target, certificate })
}

/// Report of [`moment_diagnostic`]: the exact distribution of `N` over the
/// trials and the `s`-th moment against its `s^(s+1)` bound.
#[derive(Debug, Clone)]
pub struct MomentReport {
    pub p: u64,
    pub k: usize,
    pub degree: u32,
    pub s: u32,
    pub trials: u64,
    /// `N -> number of trials`, exact.
    pub histogram: BTreeMap<u64, u64>,
    /// `sum of N^s` over all trials, exact; the empirical moment is this
    /// over `trials`.
    pub moment_sum: BigUint,
    pub empirical_moment: f64,
    /// The bound `s^(s+1)` the moment is measured against.
    pub moment_bound: u64,
    /// Whether `s <= min(degree, sqrt(p))`, the regime where the bound is
    /// claimed. Out-of-regime runs still report, they just prove nothing.
    pub within_regime: bool,
}

impl MomentReport {
    /// Exact `sum of N^e` over trials, from the histogram.
    pub fn power_sum(&self, e: u32) -> BigUint {
        let mut acc = BigUint::from(0u32);
        for (&n, &count) in &self.histogram {
            acc += BigUint::from(n).pow(e) * count;
        }
        acc
    }

    /// Sample standard error of `N^s` across trials (the denominator for
    /// "within `m` sigma" checks).
    pub fn standard_error(&self) -> f64 {
        let t = self.trials as f64;
        let mean = self.empirical_moment;
        let second = self.power_sum(2 * self.s).to_f64().unwrap_or(f64::INFINITY) / t;
        let var = (second - mean * mean).max(0.0);
        (var / t).sqrt()
    }
}

/// Estimates `E[N^s]` where `N` counts common zeros of `k` independent
/// uniform degree-`degree` polynomials in `k` variables over `F_p`. Each
/// trial draws from its own derived generator (label `trial/<i>`), so the
/// trial sequence is deterministic and order-independent. Charges
/// `trials * p^k` budget units.
pub fn moment_diagnostic(
    p: u64,
    k: usize,
    degree: u32,
    s: u32,
    trials: u64,
    seed: u64,
    budget: u64,
) -> Result<MomentReport> {
    if k < 1 || s < 1 || trials < 1 {
        return Err(Error::InvalidParams(format!(
            "need k, s, trials >= 1, got k={k} s={s} trials={trials}"
        )));
    }
    let field = PrimeField::new(p)?;
    let mut per_trial: u128 = 1;
    for _ in 0..k {
        per_trial = per_trial.saturating_mul(p as u128);
    }
    charge(per_trial.saturating_mul(trials as u128), budget)?;
    let mut histogram: BTreeMap<u64, u64> = BTreeMap::new();
    for i in 0..trials {
        let mut rng = rng_for(seed, &format!("trial/{i}"));
        let polys: Vec<SparsePolynomial> =
            (0..k).map(|_| sample_polynomial(field, k, degree, &mut rng)).collect();
        let n = variety_count(&polys, u64::MAX)?;
        *histogram.entry(n).or_insert(0) += 1;
    }
    let mut moment_sum = BigUint::from(0u32);
    for (&n, &count) in &histogram {
        moment_sum += BigUint::from(n).pow(s) * count;
    }
    let empirical_moment =
        moment_sum.to_f64().unwrap_or(f64::INFINITY) / trials as f64;
    let moment_bound = (s as u64).pow(s + 1);
    let sqrt_p = (p as f64).sqrt().floor() as u64;
    let within_regime = (s as u64) <= (degree as u64).min(sqrt_p);
    Ok(MomentReport {
        p,
        k,
        degree,
        s,
        trials,
        histogram,
        moment_sum,
        empirical_moment,
        moment_bound,
        within_regime,
    })
}

/// `size` distinct uniform points of `F_p^d`, for baseline comparisons
/// against the constructed sets. Rejection-samples duplicates.
pub fn random_baseline(p: u64, d: usize, size: usize, seed: u64) -> Result<PointSet> {
    let field = PrimeField::new(p)?;
    let mut space: u128 = 1;
    for _ in 0..d {
        space = space.saturating_mul(p as u128);
    }
    if size as u128 > space {
        return Err(Error::InvalidParams(format!(
            "requested {size} distinct points but |F_{p}^{d}| = {space}"
        )));
    }
    let mut rng = rng_for(seed, "baseline");
    let mut out = PointSet::empty(Domain::Field(field), d);
    while out.len() < size {
        let point: Vec<i64> = (0..d).map(|_| rng.random_range(0..p) as i64).collect();
        out.push(point)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evasive::{max_intersection_subsets, OracleKind};

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn exponent_vector_counts() {
        // k=1, D=2: {0, 1, 2}.
        assert_eq!(exponent_vectors(1, 2), vec![vec![0], vec![1], vec![2]]);
        // k=2, D=2: six monomials, lexicographic.
        assert_eq!(
            exponent_vectors(2, 2),
            vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 0], vec![1, 1], vec![2, 0]]
        );
        for k in 0..=3usize {
            for degree in 0..=10u32 {
                let got = exponent_vectors(k, degree).len();
                assert_eq!(BigUint::from(got), monomial_count(k, degree), "k={k} D={degree}");
            }
        }
    }

    #[test]
    fn evaluate_examples() {
        let zero = SparsePolynomial::zero(f(5), 1, 3);
        assert_eq!(zero.evaluate(&[4]).unwrap(), 0);
        assert_eq!(zero.total_degree(), None);

        // x + 1 at x=4 over F_5.
        let q =
            SparsePolynomial::from_terms(f(5), 1, 3, [(vec![1], 1), (vec![0], 1)]).unwrap();
        assert_eq!(q.evaluate(&[4]).unwrap(), 0);
        assert_eq!(q.evaluate(&[1]).unwrap(), 2);

        // x1^2 * x2 at (2, 3) over F_7: 4*3 = 12 = 5.
        let r = SparsePolynomial::from_terms(f(7), 2, 3, [(vec![2, 1], 1)]).unwrap();
        assert_eq!(r.evaluate(&[2, 3]).unwrap(), 5);
        assert_eq!(r.total_degree(), Some(3));
    }

    #[test]
    fn term_validation() {
        assert!(SparsePolynomial::from_terms(f(5), 2, 3, [(vec![2, 2], 1)]).is_err());
        assert!(SparsePolynomial::from_terms(f(5), 2, 3, [(vec![1], 1)]).is_err());
        // A coefficient reducing to zero is dropped.
        let q = SparsePolynomial::from_terms(f(5), 1, 3, [(vec![1], 5)]).unwrap();
        assert!(q.terms().is_empty());
    }

    #[test]
    fn sampling_is_deterministic_and_seed_sensitive() {
        let a = PolynomialMap::sample(f(7), 2, 3, 4, 11);
        let b = PolynomialMap::sample(f(7), 2, 3, 4, 11);
        let c = PolynomialMap::sample(f(7), 2, 3, 4, 12);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn image_set_examples() {
        // Constant map: image is a single point.
        let c0 = SparsePolynomial::from_terms(f(5), 1, 2, [(vec![0], 3)]).unwrap();
        let c1 = SparsePolynomial::from_terms(f(5), 1, 2, [(vec![0], 1)]).unwrap();
        let m = PolynomialMap::new(vec![c0, c1]).unwrap();
        let img = m.image_set(1000).unwrap();
        assert_eq!(img.points(), &[vec![3, 1]]);

        // Coordinate map: image is everything, in input order.
        let x = SparsePolynomial::from_terms(f(3), 1, 2, [(vec![1], 1)]).unwrap();
        let m = PolynomialMap::new(vec![x.clone(), x]).unwrap();
        let img = m.image_set(1000).unwrap();
        assert_eq!(img.points(), &[vec![0, 0], vec![1, 1], vec![2, 2]]);
    }

    #[test]
    fn image_respects_budget() {
        let m = PolynomialMap::sample(f(53), 3, 2, 4, 1);
        assert!(matches!(
            m.image_set(1000),
            Err(Error::BudgetExceeded { cap: 1000, .. })
        ));
    }

    #[test]
    fn variety_examples() {
        // The zero polynomial vanishes everywhere.
        let z = SparsePolynomial::zero(f(5), 2, 1);
        assert_eq!(variety_count(&[z], 1000).unwrap(), 25);
        // x1 vanishes on a coordinate hyperplane.
        let x1 = SparsePolynomial::from_terms(f(5), 2, 1, [(vec![1, 0], 1)]).unwrap();
        assert_eq!(variety_count(&[x1.clone()], 1000).unwrap(), 5);
        // x^2 - 1 over F_7 has roots 1 and 6.
        let q =
            SparsePolynomial::from_terms(f(7), 1, 2, [(vec![2], 1), (vec![0], -1)]).unwrap();
        assert_eq!(variety_count(&[q], 1000).unwrap(), 2);
        // Two constraints cut the plane down to a point.
        let x2 = SparsePolynomial::from_terms(f(5), 2, 1, [(vec![0, 1], 1)]).unwrap();
        assert_eq!(variety_count(&[x1, x2], 1000).unwrap(), 1);
    }

    #[test]
    fn construction_degree_examples() {
        assert_eq!(construction_degree(3, 1), 5);
        assert_eq!(construction_degree(3, 2), 9);
        assert_eq!(construction_degree(4, 3), 16);
    }

    #[test]
    fn construct_evasive_small_case() {
        let c = construct_evasive(7, 3, 1, 5, 1 << 22).unwrap();
        assert_eq!(c.degree, 5);
        assert!(c.points.len() <= 7);
        assert_eq!(c.points.dim(), 3);
        let cert = c.certificate.expect("flat enumeration is affordable");
        assert_eq!(cert.k, 2);
        assert_eq!(cert.oracle, OracleKind::Enumeration);
        assert!(cert.verify(&c.points).unwrap());
        // Cross-check the certified bound with the other oracle.
        let other = max_intersection_subsets(&c.points, 2, Flavor::Affine, 1 << 22).unwrap();
        assert_eq!(other.c_max, cert.c_max);
    }

    #[test]
    fn map_text_round_trip() {
        let m = PolynomialMap::sample(f(7), 2, 3, 9, 3);
        let text = m.to_text();
        assert!(text.starts_with("polymap p=7 k=2 d=3 degree=9\n"));
        assert_eq!(PolynomialMap::from_text(&text).unwrap(), m);
        // A map with a zero component survives the round trip.
        let z = PolynomialMap::new(vec![
            SparsePolynomial::zero(f(7), 1, 2),
            SparsePolynomial::from_terms(f(7), 1, 2, [(vec![2], 3)]).unwrap(),
        ])
        .unwrap();
        assert_eq!(PolynomialMap::from_text(&z.to_text()).unwrap(), z);
    }

    #[test]
    fn map_text_errors_name_lines() {
        let bad = "polymap p=7 k=1 d=1 degree=2\n3*4,1\n";
        assert!(matches!(PolynomialMap::from_text(bad), Err(Error::Parse { line: 2, .. })));
        let short = "polymap p=7 k=1 d=2 degree=2\n0\n";
        assert!(matches!(PolynomialMap::from_text(short), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn moment_report_structure() {
        let r = moment_diagnostic(13, 1, 3, 2, 200, 7, 1 << 22).unwrap();
        assert_eq!(r.trials, 200);
        assert_eq!(r.histogram.values().sum::<u64>(), 200);
        assert_eq!(r.moment_bound, 8);
        assert!(r.within_regime);
        // Exact sum matches the histogram recomputation.
        assert_eq!(r.moment_sum, r.power_sum(2));
        // Degree-3 polynomials over F_13 have at most 3 roots unless zero.
        assert!(r.histogram.keys().all(|&n| n <= 3 || n == 13));
        let again = moment_diagnostic(13, 1, 3, 2, 200, 7, 1 << 22).unwrap();
        assert_eq!(r.histogram, again.histogram);
    }

    #[test]
    fn moment_mean_is_close_to_one() {
        // E[N] is exactly 1: each of the p inputs survives with probability
        // 1/p. With 500 trials the sample mean should sit within 5 standard
        // errors.
        let r = moment_diagnostic(53, 1, 4, 1, 500, 123, 1 << 22).unwrap();
        let se = r.standard_error();
        assert!((r.empirical_moment - 1.0).abs() <= 5.0 * se, "mean {}", r.empirical_moment);
    }

    #[test]
    fn baseline_is_deterministic_and_distinct() {
        let a = random_baseline(7, 2, 10, 9).unwrap();
        let b = random_baseline(7, 2, 10, 9).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 10);
        let full = random_baseline(3, 2, 9, 1).unwrap();
        assert_eq!(full.len(), 9);
        assert!(random_baseline(3, 2, 10, 1).is_err());
    }
}
