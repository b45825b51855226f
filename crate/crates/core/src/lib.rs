//! Explicit edge colorings of the complete bipartite graph `K_{n,n}` in which
//! every 4-cycle carries at least three distinct colors, together with the
//! tooling needed to trust them: an exhaustive verifier (naive and fast), a
//! proof-region coverage map, an exact backtracking search for tiny
//! instances, and a command-line front end.
//!
//! Indices in the public API are 1-based (row `i`, column `l`), matching the
//! usual matrix notation for the construction. Storage is row-major and
//! 0-based internally.

pub mod calibrate;
pub mod cli;
pub mod coloring;
pub mod coverage;
pub mod grid;
pub mod io;
pub mod search;
pub mod tables;
pub mod verifier;

pub use coloring::{
    body_entry, build_matrix, classify, first_column, last_row, sigma_power, BuildError,
    ColoringMatrix, ExponentRule, InterpretationConfig, ResidueRule, TypeClass, TypeTag, Variant,
};
pub use grid::{Color, ColorGrid};
pub use verifier::{
    classify_quadruple, verify_fast, verify_naive, VerificationReport, VerifyOptions, Violation,
};
