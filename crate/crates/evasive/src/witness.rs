//! Constructive non-evasiveness witnesses.
//!
//! Three pipelines live here, one per upper-bound argument:
//!
//! * [`find_box`] locates a combinatorial box `S_1 x ... x S_r` inside a
//!   dense r-partite hypergraph (the Erdős box / Kővári–Sós–Turán style
//!   lemma with parts of different sizes).
//! * [`lowerbound_witness`] splits the coordinates of `F_p^d` into blocks,
//!   reads a dense point set as an r-partite hypergraph, and converts a
//!   box into many points inside one low-dimensional affine flat.
//! * [`hamming_witness`] and [`parity_check_code`] form the coding-theory
//!   bridge: points become parity-check columns, evasiveness becomes
//!   minimum distance, and a greedy decomposition produces `k + C + 1`
//!   points spanning at most `k` dimensions.
//!
//! Hypergraph text format: header `hypergraph r=<r> sizes=<n1,n2,...>`,
//! then one edge per line as `r` space-separated vertex indices.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;

use crate::error::{charge, Error, Result};
use crate::evasive::{is_evasive, Flavor};
use crate::field::FieldMatrix;
use crate::points::{parse_num, Domain, PointSet};
use crate::subspace::{affine_dim, AffineFlat, Combinations, LinearSubspace};

/// An r-partite r-uniform hypergraph; edges are r-tuples of per-part
/// vertex indices, kept deduplicated and sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RPartiteHypergraph {
    part_sizes: Vec<usize>,
    edges: BTreeSet<Vec<usize>>,
}

impl RPartiteHypergraph {
    pub fn new(
        part_sizes: Vec<usize>,
        raw_edges: impl IntoIterator<Item = Vec<usize>>,
    ) -> Result<Self> {
        if part_sizes.is_empty() {
            return Err(Error::EmptyInput("hypergraph with no parts"));
        }
        let mut edges = BTreeSet::new();
        for edge in raw_edges {
            if edge.len() != part_sizes.len() {
                return Err(Error::DimensionMismatch {
                    expected: part_sizes.len(),
                    got: edge.len(),
                });
            }
            for (i, (&v, &size)) in edge.iter().zip(&part_sizes).enumerate() {
                if v >= size {
                    return Err(Error::InvalidParams(format!(
                        "edge coordinate {v} out of range for part {i} of size {size}"
                    )));
                }
            }
            edges.insert(edge);
        }
        Ok(RPartiteHypergraph { part_sizes, edges })
    }

    pub fn complete(part_sizes: Vec<usize>) -> Result<Self> {
        let mut edges = vec![Vec::new()];
        for &size in &part_sizes {
            let mut grown = Vec::with_capacity(edges.len() * size);
            for prefix in &edges {
                for v in 0..size {
                    let mut e = prefix.clone();
                    e.push(v);
                    grown.push(e);
                }
            }
            edges = grown;
        }
        RPartiteHypergraph::new(part_sizes, edges)
    }

    pub fn r(&self) -> usize {
        self.part_sizes.len()
    }

    pub fn part_sizes(&self) -> &[usize] {
        &self.part_sizes
    }

    pub fn edges(&self) -> &BTreeSet<Vec<usize>> {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, edge: &[usize]) -> bool {
        self.edges.contains(edge)
    }

    /// Exact check of the box lemma's hypothesis for target sizes `sizes`:
    /// the part-size conditions `|V_i| >= s_i^2 |V_r|^(1/(s_i...s_{r-1}))`
    /// and the edge-count threshold, both compared in integer arithmetic
    /// after clearing the fractional exponents.
    pub fn hypothesis_met(&self, sizes: &[usize]) -> Result<bool> {
        if sizes.len() != self.r() {
            return Err(Error::DimensionMismatch { expected: self.r(), got: sizes.len() });
        }
        if sizes.iter().any(|&s| s < 1) {
            return Err(Error::InvalidParams("box sizes must be at least 1".into()));
        }
        let r = self.r();
        let last = self.part_sizes[r - 1];
        for i in 0..r.saturating_sub(1) {
            // |V_i|^(s_i...s_{r-1}) >= (s_i^2)^(s_i...s_{r-1}) * |V_r|.
            let m_i: u64 = sizes[i..r - 1].iter().map(|&s| s as u64).product();
            let m_i = u32::try_from(m_i).map_err(|_| Error::Overflow)?;
            let lhs = BigUint::from(self.part_sizes[i]).pow(m_i);
            let rhs = BigUint::from(sizes[i] * sizes[i]).pow(m_i) * BigUint::from(last);
            if lhs < rhs {
                return Ok(false);
            }
        }
        Ok(meets_edge_threshold(self.edge_count(), &self.part_sizes, sizes)?)
    }

    pub fn to_text(&self) -> String {
        let sizes: Vec<String> = self.part_sizes.iter().map(|s| s.to_string()).collect();
        let mut out = format!("hypergraph r={} sizes={}\n", self.r(), sizes.join(","));
        for edge in &self.edges {
            let coords: Vec<String> = edge.iter().map(|v| v.to_string()).collect();
            out.push_str(&coords.join(" "));
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
            lines.next().ok_or(Error::EmptyInput("hypergraph file has no header"))?;
        let perr = |no: usize, msg: String| Error::Parse { line: no + 1, msg };
        let mut fields = header.split_whitespace();
        if fields.next() != Some("hypergraph") {
            return Err(perr(header_no, "expected header starting with 'hypergraph'".into()));
        }
        let (mut r, mut sizes) = (None, None);
        for field in fields {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| perr(header_no, format!("bad header field '{field}'")))?;
            match key {
                "r" => r = Some(parse_num::<usize>(value).map_err(|m| perr(header_no, m))?),
                "sizes" => {
                    sizes = Some(
                        value
                            .split(',')
                            .map(parse_num::<usize>)
                            .collect::<std::result::Result<Vec<_>, _>>()
                            .map_err(|m| perr(header_no, m))?,
                    )
                }
                other => return Err(perr(header_no, format!("unknown header key '{other}'"))),
            }
        }
        let (Some(r), Some(sizes)) = (r, sizes) else {
            return Err(perr(header_no, "header needs r= and sizes=".into()));
        };
        if sizes.len() != r {
            return Err(perr(header_no, format!("r={r} but {} sizes", sizes.len())));
        }
        let mut edges = Vec::new();
        for (no, line) in lines {
            let edge: Vec<usize> = line
                .split_whitespace()
                .map(parse_num::<usize>)
                .collect::<std::result::Result<_, _>>()
                .map_err(|m| perr(no, m))?;
            if edge.len() != r {
                return Err(perr(no, format!("edge has {} coordinates, expected {r}", edge.len())));
            }
            edges.push(edge);
        }
        RPartiteHypergraph::new(sizes, edges).map_err(|e| match e {
            Error::InvalidParams(msg) => Error::Parse { line: header_no + 1, msg },
            other => other,
        })
    }
}

/// Exact form of the lemma's edge-count threshold
/// `|E| >= 2 s_r^(1/m) |V_1|...|V_{r-1}| |V_r|^(1 - 1/m)` with
/// `m = s_1...s_{r-1}`: both sides are raised to the m-th power. For
/// `r = 1` the threshold degenerates to `|E| >= 2 s_1`.
pub fn meets_edge_threshold(
    edge_count: usize,
    part_sizes: &[usize],
    sizes: &[usize],
) -> Result<bool> {
    let r = sizes.len();
    if part_sizes.len() != r || r == 0 {
        return Err(Error::DimensionMismatch { expected: r.max(1), got: part_sizes.len() });
    }
    let s_r = sizes[r - 1];
    if r == 1 {
        return Ok(edge_count >= 2 * s_r);
    }
    let m: u64 = sizes[..r - 1].iter().map(|&s| s as u64).product();
    let m = u32::try_from(m).map_err(|_| Error::Overflow)?;
    let lhs = BigUint::from(edge_count).pow(m);
    let mut rhs = BigUint::from(2u32).pow(m) * BigUint::from(s_r);
    for &v in &part_sizes[..r - 1] {
        rhs *= BigUint::from(v).pow(m);
    }
    rhs *= BigUint::from(part_sizes[r - 1]).pow(m - 1);
    Ok(lhs >= rhs)
}

/// A verified box `S_1 x ... x S_r` inside a hypergraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxWitness {
    parts: Vec<Vec<usize>>,
}

impl BoxWitness {
    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    /// Exhaustively checks that every tuple of the box is an edge.
    pub fn validate(&self, h: &RPartiteHypergraph) -> Result<bool> {
        if self.parts.len() != h.r() {
            return Err(Error::DimensionMismatch { expected: h.r(), got: self.parts.len() });
        }
        let mut tuples = vec![Vec::new()];
        for part in &self.parts {
            let mut grown = Vec::with_capacity(tuples.len() * part.len());
            for prefix in &tuples {
                for &v in part {
                    let mut t = prefix.clone();
                    t.push(v);
                    grown.push(t);
                }
            }
            tuples = grown;
        }
        Ok(tuples.iter().all(|t| h.contains(t)))
    }
}

/// Searches for a box with part sizes `sizes`. The search follows the
/// lemma's induction: pick an `s_1`-subset `W` of the first part, restrict
/// to its common neighborhood `N(W)`, and recurse. Candidates whose
/// `|N(W)|` meets the next level's edge threshold are tried first (that is
/// the proof's pigeonhole pick); the remaining candidates are still tried
/// afterwards, so the search is complete and `Ok(None)` genuinely means no
/// box exists. `exhaustive` skips the threshold ordering and scans in
/// plain lexicographic order. Each evaluated candidate subset costs one
/// budget unit.
pub fn find_box(
    h: &RPartiteHypergraph,
    sizes: &[usize],
    exhaustive: bool,
    budget: u64,
) -> Result<Option<BoxWitness>> {
    if sizes.len() != h.r() {
        return Err(Error::DimensionMismatch { expected: h.r(), got: sizes.len() });
    }
    if sizes.iter().any(|&s| s < 1) {
        return Err(Error::InvalidParams("box sizes must be at least 1".into()));
    }
    let mut search = BoxSearch { exhaustive, budget_left: budget, budget };
    let parts = search.run(&h.part_sizes, &h.edges, sizes)?;
    Ok(parts.map(|parts| BoxWitness { parts }))
}

struct BoxSearch {
    exhaustive: bool,
    budget_left: u64,
    budget: u64,
}

impl BoxSearch {
    fn run(
        &mut self,
        part_sizes: &[usize],
        edges: &BTreeSet<Vec<usize>>,
        sizes: &[usize],
    ) -> Result<Option<Vec<Vec<usize>>>> {
        let s_1 = sizes[0];
        if sizes.len() == 1 {
            // Base case: any s_1 distinct edge-vertices work; take the
            // smallest ones.
            let vertices: Vec<usize> = edges.iter().map(|e| e[0]).collect();
            if vertices.len() < s_1 {
                return Ok(None);
            }
            return Ok(Some(vec![vertices[..s_1].to_vec()]));
        }
        // Group edges by their first-part vertex; only covered vertices can
        // appear in a box.
        let mut suffixes: BTreeMap<usize, BTreeSet<Vec<usize>>> = BTreeMap::new();
        for edge in edges {
            suffixes.entry(edge[0]).or_default().insert(edge[1..].to_vec());
        }
        let covered: Vec<usize> = suffixes.keys().copied().collect();
        if covered.len() < s_1 {
            return Ok(None);
        }
        let mut preferred = Vec::new();
        let mut fallback = Vec::new();
        for subset in Combinations::new(covered.len(), s_1) {
            if self.budget_left == 0 {
                return Err(Error::BudgetExceeded {
                    needed: format!("more than {}", self.budget),
                    cap: self.budget,
                });
            }
            self.budget_left -= 1;
            let w: Vec<usize> = subset.iter().map(|&i| covered[i]).collect();
            let mut common = suffixes[&w[0]].clone();
            for &v in &w[1..] {
                common = common.intersection(&suffixes[&v]).cloned().collect();
                if common.is_empty() {
                    break;
                }
            }
            if common.is_empty() {
                continue;
            }
            let good = !self.exhaustive
                && meets_edge_threshold(common.len(), &part_sizes[1..], &sizes[1..])?;
            if good {
                preferred.push((w, common));
            } else {
                fallback.push((w, common));
            }
        }
        for (w, common) in preferred.into_iter().chain(fallback) {
            if let Some(mut rest) = self.run(&part_sizes[1..], &common, &sizes[1..])? {
                let mut parts = vec![w];
                parts.append(&mut rest);
                return Ok(Some(parts));
            }
        }
        Ok(None)
    }
}

/// The parameter schedule of the dense-set lower-bound pipeline, fixed by
/// `d`, `k`, and the density shortfall `epsilon`.
#[derive(Debug, Clone, PartialEq)]
pub struct LowerBoundParams {
    pub epsilon: f64,
    /// Recursion depth `r = floor(log2(1/epsilon)) - 1`.
    pub r: usize,
    /// Coordinate block widths `t_1, ..., t_{r-1}`; the final block gets
    /// the remaining `d - T` coordinates.
    pub t: Vec<usize>,
    /// Box part sizes: `s_1 = ... = s_{r-1} = 2`, `s_r = k - r + 2`.
    pub s: Vec<usize>,
    pub d: usize,
    pub k: usize,
}

impl LowerBoundParams {
    pub fn new(d: usize, k: usize, epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::InvalidParams(format!(
                "epsilon must lie strictly between 0 and 1, got {epsilon}"
            )));
        }
        if k < 1 || d < 2 {
            return Err(Error::InvalidParams(format!("need k >= 1 and d >= 2, got k={k} d={d}")));
        }
        // floor(log2(1/epsilon)) = largest j with epsilon * 2^j <= 1;
        // doubling an f64 is exact, so the loop computes it exactly.
        let mut j = 0usize;
        let mut scaled = epsilon;
        while scaled * 2.0 <= 1.0 && j < 64 {
            scaled *= 2.0;
            j += 1;
        }
        if j < 2 {
            return Err(Error::InvalidParams(format!(
                "epsilon={epsilon} gives recursion depth {}; need at least 1 (epsilon <= 1/4)",
                j as i64 - 1
            )));
        }
        let r = j - 1;
        if r > k {
            return Err(Error::InvalidParams(format!(
                "recursion depth r={r} exceeds k={k}; the statement is vacuous there"
            )));
        }
        // t_i = ceil(d * 2^(i+1-r) / 3) for i in 1..r, written with the
        // power of two moved into the denominator.
        let t: Vec<usize> = (1..r).map(|i| d.div_ceil(3 << (r - 1 - i))).collect();
        let total: usize = t.iter().sum();
        if total >= d {
            return Err(Error::InvalidParams(format!(
                "blocks t={t:?} already use {total} of d={d} coordinates; d is too small for r={r}"
            )));
        }
        let mut s = vec![2; r - 1];
        s.push(k - r + 2);
        Ok(LowerBoundParams { epsilon, r, t, s, d, k })
    }

    /// All r block widths, the last being `d - T`.
    pub fn blocks(&self) -> Vec<usize> {
        let total: usize = self.t.iter().sum();
        let mut blocks = self.t.clone();
        blocks.push(self.d - total);
        blocks
    }

    /// `prod s_i = 2^(r-1) (k - r + 2)`, the number of points the witness
    /// puts inside one flat.
    pub fn box_size(&self) -> usize {
        self.s.iter().product()
    }

    /// The non-evasiveness threshold `(k - log2(1/epsilon)) / (8 epsilon)`
    /// the witness beats whenever the hypothesis holds.
    pub fn beaten_c(&self) -> f64 {
        (self.k as f64 - (1.0 / self.epsilon).log2()) / (8.0 * self.epsilon)
    }
}

/// Successful output of [`lowerbound_witness`].
#[derive(Debug, Clone)]
pub struct LowerBoundWitness {
    pub params: LowerBoundParams,
    /// Per-block vertex-space sizes `p^{block}` of the derived hypergraph.
    pub part_sizes: Vec<usize>,
    pub edge_count: usize,
    /// Whether the box lemma's hypothesis held exactly (advisory; the
    /// search is complete either way).
    pub hypothesis_met: bool,
    pub box_parts: Vec<Vec<usize>>,
    /// The `prod s_i` points of `S` covered by the flat.
    pub points: Vec<Vec<i64>>,
    pub flat: AffineFlat,
}

/// Runs the lower-bound pipeline on a prime-field point set: split
/// coordinates into blocks, view `S` as an r-partite hypergraph, find a
/// box, and return the box's points together with the at-most-k-dimensional
/// affine flat, built as
/// `(w_0' + sum u_i') + span{v_i' - u_i'} + span{w_j' - w_0'}`, that
/// contains them all.
pub fn lowerbound_witness(
    s: &PointSet,
    k: usize,
    epsilon: f64,
    budget: u64,
) -> Result<LowerBoundWitness> {
    let field = s.domain().require_field()?;
    let d = s.dim();
    let params = LowerBoundParams::new(d, k, epsilon)?;
    let blocks = params.blocks();
    let p = field.p();

    let mut part_sizes = Vec::with_capacity(blocks.len());
    let mut total_vertices: u128 = 0;
    for &width in &blocks {
        let mut size: u128 = 1;
        for _ in 0..width {
            size = size.saturating_mul(p as u128);
        }
        total_vertices += size;
        let size = usize::try_from(size).map_err(|_| Error::Overflow)?;
        part_sizes.push(size);
    }
    charge(total_vertices, budget)?;

    let edges: Vec<Vec<usize>> = (0..s.len())
        .map(|i| {
            let coords = s.fp_point(i);
            let mut edge = Vec::with_capacity(blocks.len());
            let mut offset = 0;
            for &width in &blocks {
                edge.push(block_rank(&coords[offset..offset + width], p));
                offset += width;
            }
            edge
        })
        .collect();
    let h = RPartiteHypergraph::new(part_sizes.clone(), edges)?;
    let hypothesis_met = h.hypothesis_met(&params.s)?;
    let Some(found) = find_box(&h, &params.s, false, budget)? else {
        return Err(Error::WitnessNotFound(format!(
            "no {:?}-box in the block hypergraph ({} edges over parts {:?}, hypothesis met: {})",
            params.s,
            h.edge_count(),
            part_sizes,
            hypothesis_met
        )));
    };
    debug_assert!(found.validate(&h)?);

    // Materialize the box as points of F_p^d, in tuple-lexicographic order.
    let box_parts = found.parts().to_vec();
    let mut tuples = vec![Vec::new()];
    for part in &box_parts {
        let mut grown = Vec::with_capacity(tuples.len() * part.len());
        for prefix in &tuples {
            for &v in part {
                let mut t = prefix.clone();
                t.push(v);
                grown.push(t);
            }
        }
        tuples = grown;
    }
    let points: Vec<Vec<i64>> = tuples
        .iter()
        .map(|tuple| {
            let mut coords = Vec::with_capacity(d);
            for (&rank, &width) in tuple.iter().zip(&blocks) {
                coords.extend(block_unrank(rank, width, p));
            }
            coords.iter().map(|&c| c as i64).collect()
        })
        .collect();

    let flat = if params.r == 1 {
        // Degenerate depth: the box is just s_1 = k + 1 points, and any
        // k + 1 points fit in a flat of dimension at most k.
        let as_u64: Vec<Vec<u64>> =
            points.iter().map(|pt| pt.iter().map(|&c| c as u64).collect()).collect();
        AffineFlat::affine_span(field, &as_u64)?
    } else {
        let r = params.r;
        let embed = |part: usize, rank: usize| -> Vec<u64> {
            let mut v = vec![0u64; d];
            let offset: usize = blocks[..part].iter().sum();
            let width = blocks[part];
            v[offset..offset + width].copy_from_slice(&block_unrank(rank, width, p));
            v
        };
        // base = w_0' + sum_i u_i'; blocks are disjoint, so the sum just
        // fills each block.
        let mut base = embed(r - 1, box_parts[r - 1][0]);
        for i in 0..r - 1 {
            let u = embed(i, box_parts[i][0]);
            for (b, u) in base.iter_mut().zip(u) {
                *b = field.add(*b, u);
            }
        }
        let mut generators = Vec::new();
        for i in 0..r - 1 {
            let u = embed(i, box_parts[i][0]);
            let v = embed(i, box_parts[i][1]);
            generators.push(
                v.iter().zip(&u).map(|(&a, &b)| field.sub(a, b)).collect::<Vec<u64>>(),
            );
        }
        let w0 = embed(r - 1, box_parts[r - 1][0]);
        for &w in &box_parts[r - 1][1..] {
            let wj = embed(r - 1, w);
            generators.push(
                wj.iter().zip(&w0).map(|(&a, &b)| field.sub(a, b)).collect::<Vec<u64>>(),
            );
        }
        let direction = LinearSubspace::span(field, d, &generators)?;
        AffineFlat::new(direction, &base)?
    };

    // Soundness checks: every box point sits on the flat, the flat is low
    // dimensional, and independently the points alone span at most k
    // affine dimensions.
    assert!(flat.dim() <= k, "witness flat has dimension {} > k = {k}", flat.dim());
    for pt in &points {
        let coords: Vec<u64> = pt.iter().map(|&c| c as u64).collect();
        assert!(flat.contains(&coords)?, "witness flat misses a box point");
    }
    let as_set = PointSet::new(Domain::Field(field), d, points.clone())?;
    assert!(affine_dim(&as_set)? <= k);
    assert_eq!(points.len(), params.box_size());

    Ok(LowerBoundWitness {
        params,
        part_sizes,
        edge_count: h.edge_count(),
        hypothesis_met,
        box_parts,
        points,
        flat,
    })
}

/// Mixed-radix rank of a coordinate block, first coordinate most
/// significant, matching lexicographic order on the block.
fn block_rank(coords: &[u64], p: u64) -> usize {
    coords.iter().fold(0usize, |acc, &c| acc * p as usize + c as usize)
}

fn block_unrank(rank: usize, width: usize, p: u64) -> Vec<u64> {
    let mut coords = vec![0u64; width];
    let mut rest = rank;
    for slot in coords.iter_mut().rev() {
        *slot = (rest % p as usize) as u64;
        rest /= p as usize;
    }
    coords
}

/// Greedy decomposition behind the Hamming-type bound: `C + 1` pairwise
/// disjoint subsets `W_i` of `S` with `|W_i| = k_i + 1` and
/// `linear_dim(W_i) <= k_i`, where `k = k_1 + ... + k_{C+1}` and each
/// `k_i` is `floor(k/(C+1))` or `ceil(k/(C+1))` (the larger values come
/// first). Their union is `k + C + 1` points spanning at most `k`
/// dimensions. Each `W_i` is found by a pruned subset search on whatever
/// points remain, so failure (`WitnessNotFound`) is a legal outcome for
/// sparse sets.
pub fn hamming_witness(
    s: &PointSet,
    k: usize,
    c: usize,
    budget: u64,
) -> Result<Vec<Vec<Vec<i64>>>> {
    s.domain().require_field()?;
    if 2 * (c + 1) > k {
        return Err(Error::InvalidParams(format!(
            "need C <= k/2 - 1, got C={c} k={k}"
        )));
    }
    let parts = c + 1;
    let base = k / parts;
    let remainder = k % parts;
    let mut working = s.clone();
    let mut found = Vec::with_capacity(parts);
    for i in 0..parts {
        let k_i = if i < remainder { base + 1 } else { base };
        let (evasive, witness) = is_evasive(&working, k_i, k_i, Flavor::Linear, budget)?;
        if evasive {
            return Err(Error::WitnessNotFound(format!(
                "no {} points of the remaining {} span at most {k_i} dimensions (part {} of {parts})",
                k_i + 1,
                working.len(),
                i + 1
            )));
        }
        let part = witness.expect("non-evasive search returns its witness");
        let keep: Vec<Vec<i64>> = working
            .points()
            .iter()
            .filter(|pt| !part.contains(pt))
            .cloned()
            .collect();
        working = PointSet::new(s.domain(), s.dim(), keep)?;
        found.push(part);
    }
    Ok(found)
}

/// Shape of the linear code whose parity-check columns are the points of a
/// set: length `|S|`, dimension `|S| - rank`, and the exact minimum
/// distance found by enumerating all `p^dimension` codewords (`None` for
/// the trivial code).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeSummary {
    pub p: u64,
    pub length: usize,
    pub dimension: usize,
    pub min_distance: Option<usize>,
}

/// Builds the parity-check matrix whose columns are the points of `s` and
/// measures the kernel code. Codeword enumeration charges `p^dimension`
/// budget units.
pub fn parity_check_code(s: &PointSet, budget: u64) -> Result<CodeSummary> {
    let field = s.domain().require_field()?;
    if s.is_empty() {
        return Err(Error::EmptyInput("code of an empty point set"));
    }
    let d = s.dim();
    let n = s.len();
    let rows: Vec<Vec<i64>> =
        (0..d).map(|i| (0..n).map(|j| s.point(j)[i]).collect()).collect();
    let matrix = FieldMatrix::from_rows_dim(field, &rows, n)?;
    let kernel = matrix.kernel_basis();
    let dimension = kernel.len();
    if dimension == 0 {
        return Ok(CodeSummary { p: field.p(), length: n, dimension, min_distance: None });
    }
    let mut count: u128 = 1;
    for _ in 0..dimension {
        count = count.saturating_mul(field.p() as u128);
    }
    charge(count, budget)?;
    // Odometer over all coefficient vectors, skipping zero; weight of the
    // resulting combination of kernel basis vectors.
    let mut coeffs = vec![0u64; dimension];
    let mut min_weight = usize::MAX;
    'outer: loop {
        let mut rolled = true;
        for c in coeffs.iter_mut().rev() {
            *c += 1;
            if *c < field.p() {
                rolled = false;
                break;
            }
            *c = 0;
        }
        if rolled {
            break 'outer;
        }
        let mut word = vec![0u64; n];
        for (c, basis) in coeffs.iter().zip(&kernel) {
            if *c == 0 {
                continue;
            }
            for (w, &b) in word.iter_mut().zip(basis) {
                *w = field.add(*w, field.mul(*c, b));
            }
        }
        let weight = word.iter().filter(|&&w| w != 0).count();
        min_weight = min_weight.min(weight);
    }
    Ok(CodeSummary { p: field.p(), length: n, dimension, min_distance: Some(min_weight) })
}

/// The sphere-packing size test `set_size <= 2k p^(d/rho - 1)` with
/// `rho = floor((k+1)/2)`, decided exactly by clearing the rational
/// exponent: `set_size^rho * p^max(0, rho-d) <= (2k)^rho * p^max(0, d-rho)`.
pub fn hamming_bound_check(set_size: u64, p: u64, d: usize, k: usize) -> Result<bool> {
    if k < 1 || p < 2 || d < 1 {
        return Err(Error::InvalidParams(format!(
            "need k >= 1, p >= 2, d >= 1, got k={k} p={p} d={d}"
        )));
    }
    let rho = (k + 1) / 2;
    let rho_u32 = u32::try_from(rho).map_err(|_| Error::Overflow)?;
    let mut lhs = BigUint::from(set_size).pow(rho_u32);
    let mut rhs = BigUint::from(2 * k as u64).pow(rho_u32);
    if rho > d {
        lhs *= BigUint::from(p).pow(u32::try_from(rho - d).map_err(|_| Error::Overflow)?);
    } else {
        rhs *= BigUint::from(p).pow(u32::try_from(d - rho).map_err(|_| Error::Overflow)?);
    }
    Ok(lhs <= rhs)
}
