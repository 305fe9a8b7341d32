//! Complex schemes as signed nesting forests, their statistics, and the
//! odd-degree orientation inequalities.
//!
//! A scheme is stored fully expanded: one [`OvalNode`] per oval. Children are
//! kept in canonical order (negative before positive, then structural
//! lexicographic order on the subtrees), so two schemes describing the same
//! unordered forest compare equal once canonicalized.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "-")]
    Negative,
    #[serde(rename = "+")]
    Positive,
}

impl Sign {
    pub fn negate(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Negative => '-',
            Sign::Positive => '+',
        }
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        self.negate()
    }
}

/// One oval together with the ovals it immediately surrounds.
///
/// The derived `Ord` (sign first, then children lexicographically) is the
/// canonical sibling order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OvalNode {
    pub sign: Sign,
    #[serde(default)]
    pub children: Vec<OvalNode>,
}

impl OvalNode {
    pub fn leaf(sign: Sign) -> OvalNode {
        OvalNode { sign, children: Vec::new() }
    }

    pub fn new(sign: Sign, children: Vec<OvalNode>) -> OvalNode {
        OvalNode { sign, children }
    }

    /// Number of ovals in this subtree, including this one.
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(OvalNode::size).sum::<usize>()
    }

    pub fn canonicalize(&mut self) {
        canonicalize_forest(&mut self.children);
    }

    fn is_canonical(&self) -> bool {
        is_canonical_forest(&self.children)
    }
}

pub(crate) fn canonicalize_forest(forest: &mut [OvalNode]) {
    for node in forest.iter_mut() {
        node.canonicalize();
    }
    forest.sort();
}

fn is_canonical_forest(forest: &[OvalNode]) -> bool {
    forest.windows(2).all(|w| w[0] <= w[1]) && forest.iter().all(OvalNode::is_canonical)
}

/// Splits a canonical sibling list into runs of identical subtrees.
pub(crate) fn sibling_runs(forest: &[OvalNode]) -> Vec<&[OvalNode]> {
    forest.chunk_by(|a, b| a == b).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexScheme {
    pub degree: u32,
    pub pseudoline: bool,
    pub ovals: Vec<OvalNode>,
}

impl ComplexScheme {
    /// Builds a scheme and puts it in canonical form.
    pub fn new(degree: u32, pseudoline: bool, ovals: Vec<OvalNode>) -> ComplexScheme {
        let mut scheme = ComplexScheme { degree, pseudoline, ovals };
        scheme.canonicalize_in_place();
        scheme
    }

    /// A scheme at `degree` whose pseudoline flag follows the degree parity.
    pub fn with_degree(degree: u32, ovals: Vec<OvalNode>) -> ComplexScheme {
        ComplexScheme::new(degree, degree % 2 == 1, ovals)
    }

    pub fn canonicalize_in_place(&mut self) {
        canonicalize_forest(&mut self.ovals);
    }

    pub fn is_canonical(&self) -> bool {
        is_canonical_forest(&self.ovals)
    }

    /// Number of ovals `l`.
    pub fn oval_count(&self) -> usize {
        self.ovals.iter().map(OvalNode::size).sum()
    }

    /// Number of real components `r` (ovals plus the pseudoline, if any).
    pub fn component_count(&self) -> usize {
        self.oval_count() + usize::from(self.pseudoline)
    }

    /// Resolves a notation path to the expanded sibling index at every level.
    pub fn resolve(&self, path: &OvalPath) -> Result<Vec<usize>> {
        if path.0.is_empty() {
            return Err(Error::InvalidPath(path.clone()));
        }
        let mut level: &[OvalNode] = &self.ovals;
        let mut expanded = Vec::with_capacity(path.0.len());
        for &group in &path.0 {
            let mut offset = 0;
            let mut found = None;
            for (i, run) in sibling_runs(level).into_iter().enumerate() {
                if i == group {
                    found = Some(offset);
                    break;
                }
                offset += run.len();
            }
            let idx = found.ok_or_else(|| Error::InvalidPath(path.clone()))?;
            expanded.push(idx);
            level = &level[idx].children;
        }
        Ok(expanded)
    }

    pub fn node(&self, path: &OvalPath) -> Result<&OvalNode> {
        let expanded = self.resolve(path)?;
        Ok(node_at(&self.ovals, &expanded))
    }

    pub(crate) fn node_mut_expanded(&mut self, expanded: &[usize]) -> &mut OvalNode {
        let (first, rest) = expanded.split_first().expect("non-empty path");
        let mut node = &mut self.ovals[*first];
        for &i in rest {
            node = &mut node.children[i];
        }
        node
    }

    /// Visits every oval in canonical preorder with its depth.
    pub fn for_each_oval<F: FnMut(&OvalNode, usize)>(&self, mut f: F) {
        fn walk<F: FnMut(&OvalNode, usize)>(forest: &[OvalNode], depth: usize, f: &mut F) {
            for node in forest {
                f(node, depth);
                walk(&node.children, depth + 1, f);
            }
        }
        walk(&self.ovals, 0, &mut f);
    }
}

fn node_at<'a>(forest: &'a [OvalNode], expanded: &[usize]) -> &'a OvalNode {
    let (first, rest) = expanded.split_first().expect("non-empty path");
    rest.iter().fold(&forest[*first], |n, &i| &n.children[i])
}

/// Address of an oval: at each nesting level, the index of the run of
/// identical siblings as they appear in the canonical notation. Copies inside
/// one run are interchangeable, so the first copy stands for the run.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct OvalPath(pub Vec<usize>);

impl OvalPath {
    pub fn new(indices: Vec<usize>) -> OvalPath {
        OvalPath(indices)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for OvalPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        f.write_str(&parts.join("."))
    }
}

impl FromStr for OvalPath {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err("empty path".to_string());
        }
        s.split('.')
            .map(|part| part.parse::<usize>().map_err(|_| format!("bad path component {part:?}")))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(OvalPath)
    }
}

impl Serialize for OvalPath {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for OvalPath {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Vec::<usize>::deserialize(d).map(OvalPath)
    }
}

pub fn canonicalize(scheme: &ComplexScheme) -> ComplexScheme {
    let mut out = scheme.clone();
    out.canonicalize_in_place();
    out
}

pub fn genus(degree: u32) -> u64 {
    let m = u64::from(degree);
    if m < 2 {
        return 0;
    }
    (m - 1) * (m - 2) / 2
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    ZeroDegree,
    MissingPseudoline { degree: u32 },
    UnexpectedPseudoline { degree: u32 },
    HarnackExceeded { r: u64, bound: u64 },
    NegativeDeficit { g: u64, r: u64 },
    OddDeficit { g: u64, r: u64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroDegree => write!(f, "degree must be positive"),
            Violation::MissingPseudoline { degree } => {
                write!(f, "odd degree {degree} requires the pseudoline J")
            }
            Violation::UnexpectedPseudoline { degree } => {
                write!(f, "even degree {degree} has no pseudoline J")
            }
            Violation::HarnackExceeded { r, bound } => {
                write!(f, "r = {r} exceeds the Harnack bound g + 1 = {bound}")
            }
            Violation::NegativeDeficit { g, r } => {
                write!(f, "deficit (g + 1 - r)/2 is negative (g = {g}, r = {r})")
            }
            Violation::OddDeficit { g, r } => {
                write!(f, "g + 1 - r is odd (g = {g}, r = {r}), so the deficit s is not an integer")
            }
        }
    }
}

/// Lists every validity problem; an empty list means the scheme is valid.
///
/// The deficit is `s = (g + 1 - r)/2`, which for odd degree is `(g - l)/2`.
pub fn validate(scheme: &ComplexScheme) -> Vec<Violation> {
    let mut out = Vec::new();
    let degree = scheme.degree;
    if degree == 0 {
        out.push(Violation::ZeroDegree);
        return out;
    }
    let odd = degree % 2 == 1;
    match (odd, scheme.pseudoline) {
        (true, false) => out.push(Violation::MissingPseudoline { degree }),
        (false, true) => out.push(Violation::UnexpectedPseudoline { degree }),
        _ => {}
    }
    let g = genus(degree);
    let r = scheme.component_count() as u64;
    if r > g + 1 {
        out.push(Violation::HarnackExceeded { r, bound: g + 1 });
        out.push(Violation::NegativeDeficit { g, r });
    } else if (g + 1 - r) % 2 == 1 {
        out.push(Violation::OddDeficit { g, r });
    }
    out
}

pub fn depth(scheme: &ComplexScheme, path: &OvalPath) -> Result<usize> {
    scheme.resolve(path).map(|expanded| expanded.len() - 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash, Serialize, Deserialize)]
pub struct LambdaCounts {
    /// positive even ovals
    pub lp_plus: u64,
    /// negative even ovals
    pub lp_minus: u64,
    /// positive odd ovals
    pub ln_plus: u64,
    /// negative odd ovals
    pub ln_minus: u64,
}

impl LambdaCounts {
    pub fn total(&self) -> u64 {
        self.lp_plus + self.lp_minus + self.ln_plus + self.ln_minus
    }

    pub(crate) fn add(&mut self, depth: usize, sign: Sign) {
        match (depth.is_multiple_of(2), sign) {
            (true, Sign::Positive) => self.lp_plus += 1,
            (true, Sign::Negative) => self.lp_minus += 1,
            (false, Sign::Positive) => self.ln_plus += 1,
            (false, Sign::Negative) => self.ln_minus += 1,
        }
    }
}

pub fn lambda_counts(scheme: &ComplexScheme) -> LambdaCounts {
    let mut counts = LambdaCounts::default();
    scheme.for_each_oval(|node, depth| counts.add(depth, node.sign));
    counts
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeStats {
    pub degree: u32,
    pub pseudoline: bool,
    pub l: u64,
    pub r: u64,
    pub g: u64,
    /// `m = 2k + 1`; absent for even degree.
    pub k: Option<u64>,
    pub s: u64,
    pub lambdas: LambdaCounts,
}

pub fn stats(scheme: &ComplexScheme) -> Result<SchemeStats> {
    let violations = validate(scheme);
    if !violations.is_empty() {
        return Err(Error::InvalidScheme(violations));
    }
    let g = genus(scheme.degree);
    let r = scheme.component_count() as u64;
    Ok(SchemeStats {
        degree: scheme.degree,
        pseudoline: scheme.pseudoline,
        l: scheme.oval_count() as u64,
        r,
        g,
        k: (scheme.degree % 2 == 1).then(|| u64::from(scheme.degree - 1) / 2),
        s: (g + 1 - r) / 2,
        lambdas: lambda_counts(scheme),
    })
}

/// Both sides of the two inequalities, with integer margins.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem11Report {
    pub degree: u32,
    pub k: i64,
    pub l: i64,
    pub s: i64,
    pub lambdas: LambdaCounts,
    /// `Λᵖ₊ + Λⁿ₋ + 1`
    pub left_lhs: i64,
    pub left_rhs: i64,
    pub left_margin: i64,
    /// `Λⁿ₊ + Λᵖ₋`
    pub right_lhs: i64,
    pub right_rhs: i64,
    pub right_margin: i64,
    /// `(k² + k)/2 − s`, equal to `left_rhs` for every valid scheme.
    pub deficit_form_rhs: i64,
    pub left_holds: bool,
    pub right_holds: bool,
    pub both_hold: bool,
}

pub fn check_theorem_1_1(scheme: &ComplexScheme) -> Result<Theorem11Report> {
    if scheme.degree.is_multiple_of(2) {
        return Err(Error::EvenDegree(scheme.degree));
    }
    if scheme.degree == 1 {
        return Err(Error::KZero);
    }
    let st = stats(scheme)?;
    let k = st.k.expect("odd degree") as i64;
    let l = st.l as i64;
    let s = st.s as i64;
    let lam = st.lambdas;

    // l - k^2 + 2k = k^2 + k - 2s, always even here
    let twice_rhs = l - k * k + 2 * k;
    debug_assert_eq!(twice_rhs % 2, 0);
    let rhs = twice_rhs / 2;
    let deficit_form_rhs = (k * k + k) / 2 - s;

    let left_lhs = (lam.lp_plus + lam.ln_minus + 1) as i64;
    let right_lhs = (lam.ln_plus + lam.lp_minus) as i64;
    let left_margin = left_lhs - rhs;
    let right_margin = right_lhs - rhs;
    Ok(Theorem11Report {
        degree: scheme.degree,
        k,
        l,
        s,
        lambdas: lam,
        left_lhs,
        left_rhs: rhs,
        left_margin,
        right_lhs,
        right_rhs: rhs,
        right_margin,
        deficit_form_rhs,
        left_holds: left_margin >= 0,
        right_holds: right_margin >= 0,
        both_hold: left_margin >= 0 && right_margin >= 0,
    })
}

/// Upper bound `⌊(g + r + 1)/2⌋` on the degree of a separating morphism.
pub fn gabard_bound(g: u64, r: u64) -> u64 {
    (g + r).div_ceil(2)
}
