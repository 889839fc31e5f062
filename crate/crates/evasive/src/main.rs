//! Command-line surface: reproducible experiments over the library with a
//! single seed, explicit budgets, and machine-readable JSON reports.
//!
//! Every run prints one `RunReport` to stdout: `format_version`, the
//! subcommand, its parameters, the three budget caps, the outputs, and a
//! trailing `timing_ms` (the only non-reproducible field). Data files
//! (point sets, maps, hyperplanes) are written separately and are
//! byte-identical across runs with the same arguments and seed. The exit
//! code is 0 exactly when every certificate the run produced re-verified.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use evasive::error::{Result, DEFAULT_BUDGET};
use evasive::evasive::{max_intersection_enum, max_intersection_subsets, Certificate, Flavor};
use evasive::incidence::{
    build_config, check_bipartite_free, count_incidences, hyperplanes_to_text,
    incidence_exponent_report,
};
use evasive::lift::{covering_bound_certificate, covering_witness, lift_affine, lift_linear};
use evasive::points::PointSet;
use evasive::polymap::{construct_evasive, construction_degree, moment_diagnostic};
use evasive::witness::{
    find_box, hamming_witness, lowerbound_witness, parity_check_code, RPartiteHypergraph,
};

#[derive(Parser)]
#[command(
    name = "evasive",
    version,
    about = "Build, certify, and transfer subspace-evasive point sets"
)]
struct Cli {
    /// Cap on flat/subspace enumeration work (oracle and construction
    /// scans).
    #[arg(long, global = true, env = "EVASIVE_BUDGET", default_value_t = DEFAULT_BUDGET)]
    max_flats: u64,
    /// Cap on subset-search work (growth oracle, box and freeness
    /// searches, lifts).
    #[arg(long, global = true, env = "EVASIVE_BUDGET", default_value_t = DEFAULT_BUDGET)]
    max_subsets: u64,
    /// Cap on sampling work (moment trials).
    #[arg(long, global = true, env = "EVASIVE_BUDGET", default_value_t = DEFAULT_BUDGET)]
    max_trials: u64,
    /// Also write the JSON report to this path.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a random degree-((d+1)k+1) polynomial map F_p^k -> F_p^d
    /// and write its image with an evasiveness certificate.
    Construct {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        seed: u64,
        /// Point-set file to write.
        #[arg(long)]
        out: PathBuf,
        /// Optionally write the sampled map itself.
        #[arg(long)]
        map_out: Option<PathBuf>,
    },
    /// Recompute the exact c_max of a point-set file with one or both
    /// oracles.
    Verify {
        #[arg(long)]
        input: PathBuf,
        /// Flat dimension to test.
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum)]
        flavor: FlavorArg,
        #[arg(long, value_enum, default_value_t = OracleArg::Both)]
        oracle: OracleArg,
    },
    /// Carry a prime-field construction into the integer grid [n]^d.
    Lift {
        #[arg(long, value_enum)]
        mode: LiftMode,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: usize,
        /// Flat dimension the lifted set evades.
        #[arg(long)]
        k: usize,
        #[arg(long)]
        seed: u64,
        /// Point-set file for the lifted set.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Projective covering witness for [-n, n]^d with a certified lower
    /// bound against k-dimensional subspace covers.
    Cover {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        /// Point-set file for the class representatives.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the point/hyperplane configuration with |P|*|N| incidences
    /// and a certified K_{c1+1,c2+1}-free incidence graph.
    Incidence {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        points_out: Option<PathBuf>,
        #[arg(long)]
        hyperplanes_out: Option<PathBuf>,
    },
    /// Combinatorial witnesses: boxes in hypergraphs, non-evasiveness
    /// flats, Hamming-ball part systems.
    Witness {
        #[command(subcommand)]
        mode: WitnessMode,
    },
    /// Sample the zero-count moments E[N^s] of random polynomial systems
    /// against the s^(s+1) bound.
    Moments {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        /// Degree bound of the sampled polynomials; defaults to the
        /// construction degree (d+1)k+1.
        #[arg(long)]
        degree: Option<u32>,
    },
}

#[derive(Subcommand)]
enum WitnessMode {
    /// Find an s_1 x ... x s_r combinatorial box inside a dense r-partite
    /// hypergraph file.
    Box {
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated part sizes of the box, e.g. 2,2.
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        /// Explore all branches instead of preferring threshold-heavy
        /// candidates first.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Exhibit prod(s_i) points of a point-set file inside one affine flat
    /// of dimension at most k.
    Lower {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        epsilon: f64,
        /// Point-set file for the covered points.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Split k into C+1 direction budgets and greedily peel low-dimension
    /// parts, exhibiting the Hamming-ball obstruction.
    Hamming {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        /// The C of the obstruction; needs 2(C+1) <= k.
        #[arg(long)]
        c: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Affine,
    Linear,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Flavor {
        match f {
            FlavorArg::Affine => Flavor::Affine,
            FlavorArg::Linear => Flavor::Linear,
        }
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum OracleArg {
    Enum,
    Subset,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum LiftMode {
    Affine,
    Linear,
}

/// The one report every run prints; field order is serialization order,
/// so the non-reproducible `timing_ms` always comes last.
#[derive(Serialize)]
struct RunReport {
    format_version: u32,
    command: &'static str,
    params: Value,
    budget: Value,
    outputs: Value,
    timing_ms: u128,
}

/// What a handler hands back to `main`: the report pieces plus whether
/// every certificate it produced re-verified.
struct Outcome {
    command: &'static str,
    params: Value,
    outputs: Value,
    pass: bool,
}

fn main() {
    let cli = Cli::parse();
    let started = Instant::now();
    let budget = json!({
        "max_flats": cli.max_flats,
        "max_subsets": cli.max_subsets,
        "max_trials": cli.max_trials,
    });
    let report_path = cli.report.clone();
    match run(cli) {
        Ok(outcome) => {
            let report = RunReport {
                format_version: 1,
                command: outcome.command,
                params: outcome.params,
                budget,
                outputs: outcome.outputs,
                timing_ms: started.elapsed().as_millis(),
            };
            let text = serde_json::to_string_pretty(&report).expect("report serializes");
            if let Some(path) = report_path {
                if let Err(e) = std::fs::write(&path, format!("{text}\n")) {
                    eprintln!("error: writing {}: {e}", path.display());
                    std::process::exit(1);
                }
            }
            println!("{text}");
            if !outcome.pass {
                std::process::exit(1);
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}

/// Renders a certificate and re-verifies its witness against the set it
/// certifies; the boolean feeds the exit code.
fn certificate_json(cert: &Certificate, s: &PointSet) -> Result<(Value, bool)> {
    let verified = cert.verify(s)?;
    let value = json!({
        "k": cert.k,
        "flavor": cert.flavor.as_str(),
        "c_max": cert.c_max,
        "oracle": cert.oracle.as_str(),
        "verified": verified,
    });
    Ok((value, verified))
}

fn optional_certificate_json(
    cert: Option<&Certificate>,
    s: &PointSet,
) -> Result<(Value, bool)> {
    match cert {
        Some(c) => certificate_json(c, s),
        None => Ok((Value::Null, true)),
    }
}

fn read_points(path: &PathBuf) -> Result<PointSet> {
    PointSet::from_text(&std::fs::read_to_string(path)?)
}

fn write_text(path: &PathBuf, text: &str) -> Result<()> {
    std::fs::write(path, text)?;
    Ok(())
}

fn path_value(path: &Option<PathBuf>) -> Value {
    match path {
        Some(p) => Value::String(p.display().to_string()),
        None => Value::Null,
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Construct { p, d, k, seed, out, map_out } => {
            let c = construct_evasive(p, d, k, seed, cli.max_flats)?;
            write_text(&out, &c.points.to_text())?;
            if let Some(path) = &map_out {
                write_text(path, &c.map.to_text())?;
            }
            let (cert, pass) = optional_certificate_json(c.certificate.as_ref(), &c.points)?;
            Ok(Outcome {
                command: "construct",
                params: json!({
                    "p": p, "d": d, "k": k, "seed": seed,
                    "out": out.display().to_string(),
                    "map_out": path_value(&map_out),
                }),
                outputs: json!({
                    "degree": c.degree,
                    "image_size": c.points.len(),
                    "meets_size_target": c.meets_size_target,
                    "certificate": cert,
                }),
                pass,
            })
        }
        Command::Verify { input, k, flavor, oracle } => {
            let s = read_points(&input)?;
            let flavor = Flavor::from(flavor);
            let mut outputs = BTreeMap::new();
            let mut pass = true;
            let mut c_values = Vec::new();
            if oracle == OracleArg::Enum || oracle == OracleArg::Both {
                let cert = max_intersection_enum(&s, k, flavor, cli.max_flats)?;
                let (value, ok) = certificate_json(&cert, &s)?;
                c_values.push(cert.c_max);
                outputs.insert("enumeration".to_string(), value);
                pass &= ok;
            }
            if oracle == OracleArg::Subset || oracle == OracleArg::Both {
                let cert = max_intersection_subsets(&s, k, flavor, cli.max_subsets)?;
                let (value, ok) = certificate_json(&cert, &s)?;
                c_values.push(cert.c_max);
                outputs.insert("subset".to_string(), value);
                pass &= ok;
            }
            if oracle == OracleArg::Both {
                let agree = c_values[0] == c_values[1];
                outputs.insert("oracles_agree".to_string(), json!(agree));
                pass &= agree;
            }
            outputs.insert("size".to_string(), json!(s.len()));
            Ok(Outcome {
                command: "verify",
                params: json!({
                    "input": input.display().to_string(),
                    "k": k,
                    "flavor": flavor.as_str(),
                    "oracle": match oracle {
                        OracleArg::Enum => "enum",
                        OracleArg::Subset => "subset",
                        OracleArg::Both => "both",
                    },
                }),
                outputs: json!(outputs),
                pass,
            })
        }
        Command::Lift { mode, n, d, k, seed, out } => {
            let (name, rep) = match mode {
                LiftMode::Affine => ("affine", lift_affine(n, d, k, seed, cli.max_subsets)?),
                LiftMode::Linear => ("linear", lift_linear(n, d, k, seed, cli.max_subsets)?),
            };
            if let Some(path) = &out {
                write_text(path, &rep.lifted.to_text())?;
            }
            let (cert, pass) = optional_certificate_json(rep.certificate.as_ref(), &rep.lifted)?;
            Ok(Outcome {
                command: "lift",
                params: json!({
                    "mode": name, "n": n, "d": d, "k": k, "seed": seed,
                    "out": path_value(&out),
                }),
                outputs: json!({
                    "p": rep.p,
                    "degree": rep.degree,
                    "source_size": rep.source_size,
                    "lifted_size": rep.lifted.len(),
                    "distinct_representatives": rep.distinct_representatives,
                    "sign_pattern": rep.sign_pattern,
                    "target_size": rep.target_size,
                    "certificate": cert,
                }),
                pass,
            })
        }
        Command::Cover { n, d, k, out } => {
            let w = covering_witness(n, d, cli.max_subsets)?;
            let validated = w.validate()?;
            let bound = covering_bound_certificate(&w, k, cli.max_flats)?;
            if let Some(path) = &out {
                write_text(path, &w.representatives.to_text())?;
            }
            Ok(Outcome {
                command: "cover",
                params: json!({
                    "n": n, "d": d, "k": k,
                    "out": path_value(&out),
                }),
                outputs: json!({
                    "p": w.p,
                    "class_count": w.representatives.len(),
                    "witness_validated": validated,
                    "per_subspace_max": bound.per_subspace_max,
                    "class_cap": bound.class_cap,
                    "lower_bound": bound.lower_bound,
                }),
                pass: validated,
            })
        }
        Command::Incidence { d, n, m, seed, points_out, hyperplanes_out } => {
            let cfg = build_config(d, n, m, seed, cli.max_subsets)?;
            if let Some(path) = &points_out {
                write_text(path, &cfg.points.to_text())?;
            }
            if let Some(path) = &hyperplanes_out {
                write_text(path, &hyperplanes_to_text(cfg.d, &cfg.hyperplanes)?)?;
            }
            let validated = cfg.validate();
            let incidences = count_incidences(&cfg);
            let product_ok =
                incidences == cfg.points.len() as u128 * cfg.normals.len() as u128;
            let h_bound_ok = cfg.hyperplanes.len() as u128
                <= cfg.d as u128 * cfg.m0 as u128 * cfg.n0 as u128 * cfg.normals.len() as u128;
            let (free, free_value) = match (cfg.c1, cfg.c2) {
                (Some(c1), Some(c2)) => {
                    let (free, violation) =
                        check_bipartite_free(&cfg, c1 + 1, c2 + 1, cli.max_subsets)?;
                    (
                        free,
                        json!({
                            "a": c1 + 1,
                            "b": c2 + 1,
                            "free": free,
                            "violation": violation.map(|v| json!({
                                "hyperplanes": v.hyperplane_indices,
                                "points": v.point_indices,
                            })),
                        }),
                    )
                }
                _ => (true, Value::Null),
            };
            let exponents = incidence_exponent_report(&cfg);
            Ok(Outcome {
                command: "incidence",
                params: json!({
                    "d": d, "n": n, "m": m, "seed": seed,
                    "points_out": path_value(&points_out),
                    "hyperplanes_out": path_value(&hyperplanes_out),
                }),
                outputs: json!({
                    "k": cfg.k,
                    "n0": cfg.n0,
                    "m0": cfg.m0,
                    "points": cfg.points.len(),
                    "normals": cfg.normals.len(),
                    "hyperplanes": cfg.hyperplanes.len(),
                    "c1": cfg.c1,
                    "c2": cfg.c2,
                    "incidences": incidences.to_string(),
                    "incidences_equal_product": product_ok,
                    "hyperplane_bound_ok": h_bound_ok,
                    "bipartite_freeness": free_value,
                    "config_validated": validated,
                    "target_exponent": exponents.target_exponent,
                    "realized_exponent": exponents.realized_exponent,
                }),
                pass: validated && product_ok && h_bound_ok && free,
            })
        }
        Command::Witness { mode } => run_witness(mode, cli.max_subsets),
        Command::Moments { p, d, k, s, trials, seed, degree } => {
            let degree = degree.unwrap_or(construction_degree(d, k));
            let report = moment_diagnostic(p, k, degree, s, trials, seed, cli.max_trials)?;
            let histogram: Vec<Value> =
                report.histogram.iter().map(|(&n, &c)| json!([n, c])).collect();
            let mean = report.power_sum(1).to_string();
            Ok(Outcome {
                command: "moments",
                params: json!({
                    "p": p, "d": d, "k": k, "s": s, "trials": trials, "seed": seed,
                    "degree": degree,
                }),
                outputs: json!({
                    "histogram": histogram,
                    "moment_sum": report.moment_sum.to_string(),
                    "empirical_moment": report.empirical_moment,
                    "moment_bound": report.moment_bound,
                    "within_regime": report.within_regime,
                    "standard_error": report.standard_error(),
                    "zero_count_sum": mean,
                }),
                pass: true,
            })
        }
    }
}

fn run_witness(mode: WitnessMode, budget: u64) -> Result<Outcome> {
    match mode {
        WitnessMode::Box { input, sizes, exhaustive } => {
            let h = RPartiteHypergraph::from_text(&std::fs::read_to_string(&input)?)?;
            let hypothesis_met = h.hypothesis_met(&sizes)?;
            let witness = find_box(&h, &sizes, exhaustive, budget)?;
            let (found, verified, parts) = match &witness {
                Some(w) => (true, w.validate(&h)?, json!(w.parts())),
                None => (false, false, Value::Null),
            };
            // A complete search coming back empty under the met hypothesis
            // would contradict the existence statement.
            let pass = if found { verified } else { !hypothesis_met };
            Ok(Outcome {
                command: "witness-box",
                params: json!({
                    "input": input.display().to_string(),
                    "sizes": sizes,
                    "exhaustive": exhaustive,
                }),
                outputs: json!({
                    "edge_count": h.edge_count(),
                    "hypothesis_met": hypothesis_met,
                    "found": found,
                    "box": parts,
                    "verified": if found { json!(verified) } else { Value::Null },
                }),
                pass,
            })
        }
        WitnessMode::Lower { input, k, epsilon, out } => {
            let s = read_points(&input)?;
            let w = lowerbound_witness(&s, k, epsilon, budget)?;
            let contained = w
                .points
                .iter()
                .map(|pt| {
                    let coords: Vec<u64> = pt.iter().map(|&c| c as u64).collect();
                    w.flat.contains(&coords)
                })
                .collect::<Result<Vec<bool>>>()?
                .into_iter()
                .all(|b| b);
            if let Some(path) = &out {
                let points = PointSet::new(s.domain(), s.dim(), w.points.clone())?;
                write_text(path, &points.to_text())?;
            }
            Ok(Outcome {
                command: "witness-lower",
                params: json!({
                    "input": input.display().to_string(),
                    "k": k,
                    "epsilon": epsilon,
                    "out": path_value(&out),
                }),
                outputs: json!({
                    "r": w.params.r,
                    "blocks": w.params.blocks(),
                    "box_sizes": w.params.s,
                    "box_size": w.params.box_size(),
                    "beaten_c": w.params.beaten_c(),
                    "part_sizes": w.part_sizes,
                    "edge_count": w.edge_count,
                    "hypothesis_met": w.hypothesis_met,
                    "flat_dim": w.flat.dim(),
                    "points": w.points.len(),
                    "verified": contained,
                }),
                pass: contained,
            })
        }
        WitnessMode::Hamming { input, k, c } => {
            let s = read_points(&input)?;
            let parts = hamming_witness(&s, k, c, budget)?;
            let code = parity_check_code(&s, budget)?;
            let union: usize = parts.iter().map(|p| p.len()).sum();
            Ok(Outcome {
                command: "witness-hamming",
                params: json!({
                    "input": input.display().to_string(),
                    "k": k,
                    "c": c,
                }),
                outputs: json!({
                    "parts": parts.len(),
                    "part_sizes": parts.iter().map(|p| p.len()).collect::<Vec<_>>(),
                    "union_size": union,
                    "code": {
                        "p": code.p,
                        "length": code.length,
                        "dimension": code.dimension,
                        "min_distance": code.min_distance,
                    },
                }),
                pass: true,
            })
        }
    }
}

