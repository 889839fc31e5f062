//! The bindings are ordinary string-returning functions on every target,
//! so these tests drive them exactly as the page's JavaScript would and
//! check the JSON against the library called directly.

use evasive::error::DEFAULT_BUDGET;
use evasive::polymap::construct_evasive;
use evasive_wasm::{construct_demo, lift_demo, moments_demo};
use serde_json::Value;

const BUDGET: u32 = DEFAULT_BUDGET as u32;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).expect("bindings return valid JSON")
}

#[test]
fn construct_matches_direct_library_call() {
    let v = parse(&construct_demo(7, 3, 2, 1, BUDGET));
    let direct = construct_evasive(7, 3, 2, 1, DEFAULT_BUDGET as u64).unwrap();
    assert_eq!(v["size"].as_u64().unwrap() as usize, direct.points.len());
    assert_eq!(v["degree"].as_u64().unwrap(), u64::from(direct.degree));
    assert_eq!(v["points"].as_array().unwrap().len(), direct.points.len());
    let cert = &v["certificate"];
    assert_eq!(cert["flavor"], "affine");
    assert_eq!(cert["verified"], true);
    assert_eq!(
        cert["c_max"].as_u64().unwrap() as usize,
        direct.certificate.unwrap().c_max
    );
}

#[test]
fn errors_come_back_as_json() {
    let v = parse(&construct_demo(6, 3, 2, 1, BUDGET));
    assert!(v["error"].as_str().unwrap().contains('6'));
    let v = parse(&lift_demo("diagonal", 8, 3, 1, 1, BUDGET));
    assert!(v["error"].as_str().unwrap().contains("diagonal"));
    let v = parse(&moments_demo(13, 0, 4, 1, 10, 1, BUDGET));
    assert!(v["error"].is_string());
}

#[test]
fn affine_lift_stays_in_grid() {
    let v = parse(&lift_demo("affine", 8, 3, 1, 1, BUDGET));
    assert_eq!(v["mode"], "affine");
    let p = v["p"].as_u64().unwrap();
    assert!(p > 4 && p <= 8);
    for pt in v["points"].as_array().unwrap() {
        for c in pt.as_array().unwrap() {
            let c = c.as_i64().unwrap();
            assert!((1..=8).contains(&c));
        }
    }
    assert_eq!(
        v["lifted_size"].as_u64().unwrap() as usize,
        v["points"].as_array().unwrap().len()
    );
}

#[test]
fn linear_lift_reports_sign_pattern() {
    let v = parse(&lift_demo("linear", 6, 3, 1, 1, BUDGET));
    assert_eq!(v["sign_pattern"].as_array().unwrap().len(), 3);
    assert!(v["distinct_representatives"].as_u64().unwrap() >= 1);
}

#[test]
fn moments_histogram_is_consistent() {
    let v = parse(&moments_demo(13, 1, 4, 2, 500, 1, BUDGET));
    let total: u64 = v["histogram"]
        .as_array()
        .unwrap()
        .iter()
        .map(|bin| bin[1].as_u64().unwrap())
        .sum();
    assert_eq!(total, 500);
    assert_eq!(v["within_regime"], true);
}

#[test]
fn outputs_are_deterministic() {
    assert_eq!(construct_demo(7, 3, 2, 5, BUDGET), construct_demo(7, 3, 2, 5, BUDGET));
    assert_eq!(
        lift_demo("linear", 6, 3, 1, 5, BUDGET),
        lift_demo("linear", 6, 3, 1, 5, BUDGET)
    );
    assert_eq!(
        moments_demo(13, 1, 4, 1, 200, 5, BUDGET),
        moments_demo(13, 1, 4, 1, 200, 5, BUDGET)
    );
}
