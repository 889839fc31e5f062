//! Construction and certification of subspace-evasive point sets.
//!
//! A set `S` in `F_p^d` (or in the integer lattice `Z^d`) is `(k, c)`-evasive
//! when every `k`-dimensional affine flat — or linear subspace, depending on
//! the flavor — contains at most `c` of its points. This crate builds such
//! sets by evaluating random low-degree polynomial maps, certifies the
//! evasiveness bound with two independent brute-force oracles, and carries
//! the sets into the integer lattice, where they yield box-free incidence
//! configurations and covering lower bounds.
//!
//! Module map:
//! - [`field`]: prime-field and exact integer linear algebra;
//! - [`points`]: point sets and their text format;
//! - [`subspace`]: canonical subspaces/flats and exhaustive enumeration;
//! - [`evasive`]: the two evasiveness oracles and certificates;
//! - [`polymap`]: random polynomial maps, image sets, moment diagnostics;
//! - [`witness`]: box witnesses in dense hypergraphs, evasiveness lower
//!   bounds, and the coding-theory bridge;
//! - [`lift`]: lattice lifts and covering witnesses;
//! - [`incidence`]: point-hyperplane incidence configurations;
//! - [`seed`]: deterministic seed derivation.
//!
//! All randomized operations take a single `u64` seed; per-subtask
//! generators are derived as SHA-256 hashes of `(seed, label)` feeding
//! ChaCha12, so every result is reproducible from the one seed.

pub mod error;
pub mod evasive;
pub mod field;
pub mod incidence;
pub mod lift;
pub mod points;
pub mod polymap;
pub mod seed;
pub mod subspace;
pub mod witness;

pub use error::{Error, Result, DEFAULT_BUDGET};
