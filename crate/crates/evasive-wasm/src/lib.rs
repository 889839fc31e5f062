//! Browser bindings for the core toolkit. Three demo operations are
//! exported with plain-number parameters and JSON-string results, so the
//! page needs no framework and no BigInt plumbing: [`construct_demo`]
//! samples a certified evasive set over a prime field, [`lift_demo`] moves
//! one into an integer grid, and [`moments_demo`] runs the zero-count
//! moment diagnostic. Failures are returned as `{"error": ...}` objects
//! rather than thrown, so the page can render them inline.
//!
//! The crate also compiles as a plain rlib; the functions are ordinary
//! string-returning Rust on every target, which is how the tests drive
//! them.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use evasive::error::Error;
use evasive::evasive::Certificate;
use evasive::lift::{lift_affine, lift_linear, LiftReport};
use evasive::points::PointSet;
use evasive::polymap::{construct_evasive, moment_diagnostic};

fn finish(result: Result<Value, Error>) -> String {
    let value = match result {
        Ok(v) => v,
        Err(e) => json!({ "error": e.to_string() }),
    };
    value.to_string()
}

fn points_json(s: &PointSet) -> Value {
    Value::from(s.points().to_vec())
}

fn certificate_json(cert: Option<&Certificate>, s: &PointSet) -> Value {
    match cert {
        Some(c) => json!({
            "k": c.k,
            "flavor": c.flavor.as_str(),
            "oracle": c.oracle.as_str(),
            "c_max": c.c_max,
            "verified": c.verify(s).unwrap_or(false),
        }),
        None => Value::Null,
    }
}

/// Samples the degree-`(d+1)k+1` construction over `F_p` and reports the
/// image with its certificate (when flat enumeration fits the budget).
#[wasm_bindgen]
pub fn construct_demo(p: u32, d: u32, k: u32, seed: u32, budget: u32) -> String {
    finish(
        construct_evasive(p as u64, d as usize, k as usize, seed as u64, budget as u64).map(
            |c| {
                json!({
                    "p": p,
                    "d": d,
                    "k": k,
                    "degree": c.degree,
                    "size": c.points.len(),
                    "meets_size_target": c.meets_size_target,
                    "certificate": certificate_json(c.certificate.as_ref(), &c.points),
                    "points": points_json(&c.points),
                })
            },
        ),
    )
}

fn lift_json(mode: &str, rep: LiftReport) -> Value {
    json!({
        "mode": mode,
        "n": rep.n,
        "d": rep.d,
        "k": rep.k,
        "p": rep.p,
        "degree": rep.degree,
        "source_size": rep.source_size,
        "lifted_size": rep.lifted.len(),
        "distinct_representatives": rep.distinct_representatives,
        "sign_pattern": rep.sign_pattern,
        "target_size": rep.target_size,
        "certificate": certificate_json(rep.certificate.as_ref(), &rep.lifted),
        "points": points_json(&rep.lifted),
    })
}

/// Lifts a fresh construction into the grid `[n]^d` (`mode = "affine"`,
/// evasive for `k`-flats) or `{-n..n}^d` sign-bucketed to one orthant
/// (`mode = "linear"`, evasive for `k`-subspaces).
#[wasm_bindgen]
pub fn lift_demo(mode: &str, n: u32, d: u32, k: u32, seed: u32, budget: u32) -> String {
    let run = || -> Result<Value, Error> {
        let rep = match mode {
            "affine" => lift_affine(n as u64, d as usize, k as usize, seed as u64, budget as u64)?,
            "linear" => lift_linear(n as u64, d as usize, k as usize, seed as u64, budget as u64)?,
            other => {
                return Err(Error::InvalidParams(format!(
                    "mode must be \"affine\" or \"linear\", got {other:?}"
                )))
            }
        };
        Ok(lift_json(mode, rep))
    };
    finish(run())
}

/// Runs `trials` random degree-`degree` polynomials over `F_p^k` and
/// reports the `s`-th empirical moment of their zero counts against the
/// `s^(s+1)` bound.
#[wasm_bindgen]
pub fn moments_demo(
    p: u32,
    k: u32,
    degree: u32,
    s: u32,
    trials: u32,
    seed: u32,
    budget: u32,
) -> String {
    finish(
        moment_diagnostic(
            p as u64,
            k as usize,
            degree,
            s,
            trials as u64,
            seed as u64,
            budget as u64,
        )
        .map(|r| {
            let histogram: Vec<(u64, u64)> =
                r.histogram.iter().map(|(&n, &c)| (n, c)).collect();
            json!({
                "p": r.p,
                "k": r.k,
                "degree": r.degree,
                "s": r.s,
                "trials": r.trials,
                "histogram": histogram,
                "moment_sum": r.moment_sum.to_string(),
                "empirical_moment": r.empirical_moment,
                "moment_bound": r.moment_bound,
                "standard_error": r.standard_error(),
                "within_regime": r.within_regime,
            })
        }),
    )
}
