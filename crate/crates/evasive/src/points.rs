//! Point sets over a prime field or the integer lattice, and their text
//! format.
//!
//! The text format is line-oriented:
//!
//! ```text
//! pointset domain=fp:7 d=3 count=2
//! # comment lines start with '#'
//! 0 1 2
//! 6 6 0
//! ```
//!
//! `domain` is `fp:<p>` or `z`; points are whitespace-separated coordinates,
//! one point per line, exactly `count` of them. Field coordinates must be
//! canonical (`0 <= x < p`).

use std::fmt;

use crate::error::{Error, Result};
use crate::field::PrimeField;

/// The coordinate domain of a point set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Field(PrimeField),
    Integers,
}

impl Domain {
    pub fn field(&self) -> Option<PrimeField> {
        match self {
            Domain::Field(f) => Some(*f),
            Domain::Integers => None,
        }
    }

    /// The field, or a domain-mismatch error for integer points.
    pub fn require_field(&self) -> Result<PrimeField> {
        self.field().ok_or(Error::DomainMismatch { required: "prime-field" })
    }

    pub fn require_integers(&self) -> Result<()> {
        match self {
            Domain::Integers => Ok(()),
            Domain::Field(_) => Err(Error::DomainMismatch { required: "integer" }),
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Field(f) => write!(out, "fp:{}", f.p()),
            Domain::Integers => write!(out, "z"),
        }
    }
}

/// A finite, duplicate-free, ordered list of points of fixed dimension.
///
/// Order is insertion order; all constructions in this crate produce it
/// deterministically, so a point set written to text and read back is
/// byte-stable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    domain: Domain,
    dim: usize,
    points: Vec<Vec<i64>>,
}

impl PointSet {
    /// Builds a point set, validating dimensions and canonical field
    /// coordinates, and dropping duplicate points (first occurrence wins).
    pub fn new(domain: Domain, dim: usize, points: Vec<Vec<i64>>) -> Result<Self> {
        let mut set = PointSet { domain, dim, points: Vec::with_capacity(points.len()) };
        for p in points {
            set.push(p)?;
        }
        Ok(set)
    }

    pub fn empty(domain: Domain, dim: usize) -> Self {
        PointSet { domain, dim, points: Vec::new() }
    }

    /// Appends a point unless it is already present. Returns whether it was
    /// inserted.
    pub fn push(&mut self, point: Vec<i64>) -> Result<bool> {
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: point.len() });
        }
        if let Domain::Field(f) = self.domain {
            if point.iter().any(|&c| c < 0 || c as u64 >= f.p()) {
                return Err(Error::InvalidParams(format!(
                    "field coordinate out of range [0, {}): {:?}",
                    f.p(),
                    point
                )));
            }
        }
        if self.points.contains(&point) {
            return Ok(false);
        }
        self.points.push(point);
        Ok(true)
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &[i64] {
        &self.points[i]
    }

    /// Point `i` as canonical field elements. Panics if the domain is not a
    /// field (callers check the domain first).
    pub fn fp_point(&self, i: usize) -> Vec<u64> {
        debug_assert!(matches!(self.domain, Domain::Field(_)));
        self.points[i].iter().map(|&c| c as u64).collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "pointset domain={} d={} count={}\n",
            self.domain,
            self.dim,
            self.points.len()
        );
        for p in &self.points {
            let coords: Vec<String> = p.iter().map(|c| c.to_string()).collect();
            out.push_str(&coords.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (header_no, header) = lines
            .by_ref()
            .find(|(_, l)| !skip_line(l))
            .ok_or(Error::EmptyInput("point-set file has no header"))?;
        let mut domain = None;
        let mut dim = None;
        let mut count = None;
        let mut fields = header.split_whitespace();
        if fields.next() != Some("pointset") {
            return Err(parse_err(header_no, "expected header starting with 'pointset'"));
        }
        for field in fields {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| parse_err(header_no, format!("bad header field '{field}'")))?;
            match key {
                "domain" => {
                    domain = Some(parse_domain(value).map_err(|m| parse_err(header_no, m))?)
                }
                "d" => {
                    dim = Some(parse_num::<usize>(value).map_err(|m| parse_err(header_no, m))?)
                }
                "count" => {
                    count = Some(parse_num::<usize>(value).map_err(|m| parse_err(header_no, m))?)
                }
                other => return Err(parse_err(header_no, format!("unknown header key '{other}'"))),
            }
        }
        let domain = domain.ok_or_else(|| parse_err(header_no, "missing domain="))?;
        let dim = dim.ok_or_else(|| parse_err(header_no, "missing d="))?;
        let count = count.ok_or_else(|| parse_err(header_no, "missing count="))?;

        let mut set = PointSet::empty(domain, dim);
        for (no, line) in lines {
            if skip_line(line) {
                continue;
            }
            let coords: Vec<i64> = line
                .split_whitespace()
                .map(|t| parse_num::<i64>(t))
                .collect::<std::result::Result<_, _>>()
                .map_err(|m| parse_err(no, m))?;
            if coords.len() != dim {
                return Err(parse_err(no, format!("expected {dim} coordinates")));
            }
            let inserted = set.push(coords).map_err(|e| parse_err(no, e.to_string()))?;
            if !inserted {
                return Err(parse_err(no, "duplicate point"));
            }
        }
        if set.len() != count {
            return Err(Error::Parse {
                line: header_no + 1,
                msg: format!("count={} but file holds {} points", count, set.len()),
            });
        }
        Ok(set)
    }
}

fn skip_line(line: &str) -> bool {
    let t = line.trim();
    t.is_empty() || t.starts_with('#')
}

/// Parse error with 1-based line number.
fn parse_err(line_idx: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line: line_idx + 1, msg: msg.into() }
}

pub(crate) fn parse_domain(token: &str) -> std::result::Result<Domain, String> {
    if token == "z" {
        return Ok(Domain::Integers);
    }
    if let Some(p) = token.strip_prefix("fp:") {
        let p = parse_num::<u64>(p)?;
        let field = PrimeField::new(p).map_err(|e| e.to_string())?;
        return Ok(Domain::Field(field));
    }
    Err(format!("bad domain '{token}' (expected 'fp:<p>' or 'z')"))
}

pub(crate) fn parse_num<T: std::str::FromStr>(token: &str) -> std::result::Result<T, String> {
    token.parse().map_err(|_| format!("bad number '{token}'"))
}
