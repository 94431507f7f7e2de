//! Exact solver for the symmetric system
//!
//! ```text
//! X + Y + Z = s
//! X^3 + Y^3 + Z^3 = c
//! ```
//!
//! over the integers, for arbitrary-precision `s` and `c`.
//!
//! The solver isolates one coordinate as a pivot `Z`, divides the cubic
//! constraint by the linear one and substitutes `Y = s - Z - X`. What is left
//! is a quadratic in `X` whose constant term is an integer only when
//! `3(s - Z)` divides `c - s^3`. Enumerating those divisors bounds the pivot,
//! and a discriminant test on each candidate yields the integer roots. When
//! `c = s^3` the remainder vanishes and the system has the infinite family of
//! permutations of `(s, t, -t)`.
//!
//! The crate is `no_std` and only needs `alloc`. IO, the batch scanner and the
//! command-line front end live in the companion `cubesum` crate.

#![no_std]

extern crate alloc;

mod error;
/// Integer square roots, factorization and divisor enumeration.
pub mod intmath;
/// Box-bounded brute-force enumeration used as ground truth.
pub mod oracle;
/// The divisibility-reduction solver.
pub mod solver;
/// Step-by-step derivation traces and their renderings.
pub mod trace;

pub use error::{Error, Result};
pub use num_bigint::BigInt;
pub use oracle::brute_force;
pub use solver::{
    candidate_zs, completeness_bound, solve, solve_quadratic_for_x, verify, CandidateZ,
    SolutionSet, Triple, TripleSystem,
};
pub use trace::{derive_trace, render, solve_linear_diophantus, TraceFormat, TraceStep};
