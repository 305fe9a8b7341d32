//! Complex schemes of nonsingular plane real curves.
//!
//! A scheme is the nesting forest of ovals, each carrying the sign of its
//! complex orientation, plus a pseudoline for odd degree. The crate parses
//! and prints them in ASCII Viro notation, evaluates the two orientation
//! inequalities for odd degree, builds the Hilbert-type M-curve family and
//! its tripling, searches swap orbits of parallel ovals, and re-checks the
//! integer arithmetic of the inequality proof by exhaustion.

pub mod cli;
pub mod constructions;
pub mod enumeration;
mod error;
pub mod moves;
pub mod notation;
pub mod proof;
pub mod scheme;

pub use error::{Error, Result};
pub use notation::{decode_json, encode_json, parse_viro, print_viro};
pub use scheme::{
    canonicalize, check_theorem_1_1, depth, gabard_bound, genus, lambda_counts, stats, validate, ComplexScheme,
    LambdaCounts, OvalNode, OvalPath, SchemeStats, Sign, Theorem11Report, Violation,
};
