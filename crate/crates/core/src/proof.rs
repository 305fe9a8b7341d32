//! Exhaustive check of the integer system behind the odd-degree inequality
//! proof, and the arithmetic of the degree 9 special case.
//!
//! For `m = 2k + 1` the genus is `g = k(2k - 1)`; write `a = (k² + k)/2`.
//! Assuming the left side of the failing inequality counts `r0`
//! components, the proof needs
//!
//! ```text
//! r0 <= a - s - 1                          (failing inequality)
//! r1  = g - 2s + 1 - r0                    (the remaining components)
//! (k - 1)(2k + 1) >= (a - 1) + (2 r1 - 1)  (Bezout with the curve D0)
//! ```
//!
//! The separating-morphism degree `n` and fiber counts `n0`, `n1` are
//! eliminated before iteration through `r1 <= n1 = n - n0` and
//! `n <= ⌊(g + r + 1)/2⌋`, which give `r0 >= n0 - s`.

use serde::Serialize;

use crate::notation::parse_viro;
use crate::scheme::{gabard_bound, stats};

/// One integer assignment of the proof's unknowns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProofParams {
    pub k: i64,
    pub g: i64,
    pub a: i64,
    pub s: i64,
    pub r0: i64,
    pub r1: i64,
    pub l: i64,
    pub r: i64,
}

impl ProofParams {
    pub fn new(k: i64, s: i64, r0: i64) -> ProofParams {
        let g = k * (2 * k - 1);
        let a = (k * k + k) / 2;
        let l = g - 2 * s;
        let r = l + 1;
        ProofParams { k, g, a, s, r0, r1: r - r0, l, r }
    }

    /// `r0 <= a - s - 1`
    pub fn failing_inequality_holds(&self) -> bool {
        self.r0 < self.a - self.s
    }

    /// `(k - 1)(2k + 1) >= (a - 1) + (2 r1 - 1)`
    pub fn bezout_holds(&self) -> bool {
        (self.k - 1) * (2 * self.k + 1) >= (self.a - 1) + (2 * self.r1 - 1)
    }
}

/// `-k² + 5k - 10`; the proof ends by showing it would have to be `>= 0`.
pub fn contradiction_value(k: i64) -> i64 {
    -k * k + 5 * k - 10
}

/// Every `(s, r0)` with `0 <= s <= a - 1`, `0 <= r0 <= a - s - 1` and `r1 >= 0`.
pub fn candidates(k: i64) -> impl Iterator<Item = ProofParams> {
    let a = (k * k + k) / 2;
    (0..a)
        .flat_map(move |s| (0..(a - s)).map(move |r0| ProofParams::new(k, s, r0)))
        .filter(|p| p.r1 >= 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Constraints {
    pub bezout: bool,
}

impl Default for Constraints {
    fn default() -> Self {
        Constraints { bezout: true }
    }
}

/// Assignments satisfying the whole system; the proof requires none exist.
pub fn feasible_assignments(k: i64) -> Vec<ProofParams> {
    feasible_assignments_with(k, Constraints::default())
}

pub fn feasible_assignments_with(k: i64, constraints: Constraints) -> Vec<ProofParams> {
    candidates(k)
        .filter(|p| p.failing_inequality_holds())
        .filter(|p| !constraints.bezout || p.bezout_holds())
        .collect()
}

/// The relaxed lower bound `r1 >= g - 2a + 3` used in the written argument.
pub fn chained_r1_bound(k: i64) -> i64 {
    let g = k * (2 * k - 1);
    let a = (k * k + k) / 2;
    g - 2 * a + 3
}

pub const ELIMINATION_STEPS: [&str; 4] = [
    "r1 <= n1 = n - n0",
    "n <= floor((g + r + 1)/2)",
    "r0 = r - r1 >= r - n + n0 >= n0 - s",
    "r0 <= a - s - 1 gives n0 <= a - 1",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProofRow {
    pub k: i64,
    pub g: i64,
    pub a: i64,
    pub contradiction_value: i64,
    pub candidates: usize,
    pub feasible: usize,
    pub feasible_without_bezout: usize,
    /// Smallest `r1` over the candidates (absent when there are none).
    pub min_r1: Option<i64>,
    /// Largest `r1` the Bezout inequality allows.
    pub max_r1_allowed: i64,
    pub chained_r1_bound: i64,
    pub chain_consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProofReport {
    pub eliminations: Vec<&'static str>,
    pub rows: Vec<ProofRow>,
    pub verified: bool,
}

pub fn prove_row(k: i64) -> ProofRow {
    let a = (k * k + k) / 2;
    let bound = chained_r1_bound(k);
    // (k-1)(2k+1) - (a-1) + 1 >= 2 r1
    let max_r1_allowed = ((k - 1) * (2 * k + 1) - (a - 1) + 1).div_euclid(2);
    let mut row = ProofRow {
        k,
        g: k * (2 * k - 1),
        a,
        contradiction_value: contradiction_value(k),
        candidates: 0,
        feasible: 0,
        feasible_without_bezout: 0,
        min_r1: None,
        max_r1_allowed,
        chained_r1_bound: bound,
        chain_consistent: true,
    };
    for p in candidates(k) {
        row.candidates += 1;
        row.min_r1 = Some(row.min_r1.map_or(p.r1, |m| m.min(p.r1)));
        if p.failing_inequality_holds() {
            row.feasible_without_bezout += 1;
            row.feasible += usize::from(p.bezout_holds());
            row.chain_consistent &= p.r1 >= bound;
        }
    }
    row
}

pub fn prove(k_max: i64) -> ProofReport {
    let rows: Vec<ProofRow> = (1..=k_max).map(prove_row).collect();
    let verified = rows.iter().all(|r| r.feasible == 0 && r.contradiction_value < 0 && r.chain_consistent);
    ProofReport { eliminations: ELIMINATION_STEPS.to_vec(), rows, verified }
}

/// Arithmetic of the direct argument for the degree 9 scheme
/// `J u 9- u 1-<1+<1->>`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Example34Trace {
    pub scheme: &'static str,
    pub degree: u32,
    pub g: u64,
    pub r: u64,
    pub l: u64,
    pub s: u64,
    pub gabard_degree: u64,
    /// Fiber points forced onto the ovals (one per oval at least).
    pub fiber_points_on_ovals_min: u64,
    pub fiber_points_on_pseudoline_max: u64,
    /// Degree of the auxiliary curve `D0` (a cubic).
    pub auxiliary_degree: u64,
    /// `deg D0 · m`
    pub bezout_budget: u64,
    /// Even intersection with every oval: `2l`.
    pub forced_on_ovals: u64,
    pub forced_on_pseudoline: u64,
    pub forced: u64,
    pub contradiction: bool,
}

pub const SCHEME_ONE: &str = "J u 9- u 1-<1+<1->>";

pub fn example_3_4_trace() -> Example34Trace {
    let scheme = parse_viro(SCHEME_ONE, 9).expect("fixed scheme parses");
    let st = stats(&scheme).expect("fixed scheme is valid");
    let k = st.k.expect("odd degree");
    let gabard = gabard_bound(st.g, st.r);
    let on_pseudoline = gabard - st.l;
    let auxiliary_degree = k - 1;
    let budget = auxiliary_degree * u64::from(st.degree);
    let forced_on_ovals = 2 * st.l;
    let forced = forced_on_ovals + on_pseudoline;
    Example34Trace {
        scheme: SCHEME_ONE,
        degree: st.degree,
        g: st.g,
        r: st.r,
        l: st.l,
        s: st.s,
        gabard_degree: gabard,
        fiber_points_on_ovals_min: st.l,
        fiber_points_on_pseudoline_max: on_pseudoline,
        auxiliary_degree,
        bezout_budget: budget,
        forced_on_ovals,
        forced_on_pseudoline: on_pseudoline,
        forced,
        contradiction: forced > budget,
    }
}
