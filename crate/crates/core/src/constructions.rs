//! Hilbert-type M-curve family with oval bookkeeping, and the tripling
//! construction that turns a degree `d` scheme into a degree `3d` one.
//!
//! The Hilbert states keep a chain of encircling ovals around a fixed conic
//! `E`. Every other oval is empty and sits directly inside the first `j`
//! encirclers of the chain: ovals in the disk `Δ` bounded by `E` are inside
//! the whole chain, while ovals outside `Δ` (and the oval `V` crossing `E`)
//! are inside the chain as it was when they were created.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scheme::{check_theorem_1_1, genus, ComplexScheme, OvalNode, Sign, Theorem11Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LocationTag {
    /// Position in the encircler chain, 0 = outermost.
    Encircler { index: usize },
    InDisk,
    OutsideDisk,
    CrossingV,
}

/// A non-encircler oval of a Hilbert state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlacedOval {
    pub sign: Sign,
    pub tag: LocationTag,
    /// Number of encirclers (counted from the outermost) containing this oval.
    pub enclosed_by: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertState {
    degree: u32,
    chain: Vec<Sign>,
    placed: Vec<PlacedOval>,
}

#[derive(Serialize)]
struct HilbertStateJson<'a> {
    degree: u32,
    pseudoline: bool,
    ovals: &'a [OvalNode],
    tags: &'a [LocationTag],
    lambda_minus_disk: usize,
    encirclers: usize,
    v_sign: Option<Sign>,
    v_crossings_with_e: u64,
}

impl HilbertState {
    /// Assembles a state without checking it; [`hilbert_step`] rejects
    /// states that break the construction invariants.
    pub fn from_parts(degree: u32, chain: Vec<Sign>, placed: Vec<PlacedOval>) -> HilbertState {
        HilbertState { degree, chain, placed }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn chain(&self) -> &[Sign] {
        &self.chain
    }

    pub fn placed(&self) -> &[PlacedOval] {
        &self.placed
    }

    pub fn encircler_count(&self) -> usize {
        self.chain.len()
    }

    pub fn crossing_oval(&self) -> Option<&PlacedOval> {
        self.placed.iter().find(|o| o.tag == LocationTag::CrossingV)
    }

    /// Intersection count of `V` with the conic, `2d`.
    pub fn crossing_points(&self) -> u64 {
        2 * u64::from(self.degree)
    }

    /// Negative ovals inside the disk `Δ`.
    pub fn lambda_minus_disk(&self) -> usize {
        self.placed
            .iter()
            .filter(|o| o.tag == LocationTag::InDisk && o.sign == Sign::Negative)
            .count()
    }

    pub fn scheme(&self) -> ComplexScheme {
        self.layout().0
    }

    /// Location tags in canonical preorder of [`HilbertState::scheme`].
    pub fn tags(&self) -> Vec<LocationTag> {
        self.layout().1
    }

    fn layout(&self) -> (ComplexScheme, Vec<LocationTag>) {
        let mut chain_children: Vec<Vec<Tagged>> = vec![Vec::new(); self.chain.len()];
        let mut top = Vec::new();
        for o in &self.placed {
            let leaf = Tagged { node: OvalNode::leaf(o.sign), tag: o.tag, children: Vec::new() };
            match o.enclosed_by {
                0 => top.push(leaf),
                j => chain_children[j - 1].push(leaf),
            }
        }
        // Build the chain from the innermost encircler outwards.
        let mut inner: Option<Tagged> = None;
        for (index, (&sign, mut children)) in self.chain.iter().zip(chain_children).enumerate().rev() {
            children.extend(inner.take());
            inner = Some(Tagged::assemble(sign, LocationTag::Encircler { index }, children));
        }
        top.extend(inner);
        top.sort_by(|a, b| (&a.node, a.tag).cmp(&(&b.node, b.tag)));

        let mut tags = Vec::with_capacity(self.len());
        for t in &top {
            t.preorder_tags(&mut tags);
        }
        let ovals = top.into_iter().map(|t| t.node).collect();
        (ComplexScheme::with_degree(self.degree, ovals), tags)
    }

    fn len(&self) -> usize {
        self.chain.len() + self.placed.len()
    }

    pub fn to_json(&self) -> String {
        let (scheme, tags) = self.layout();
        let doc = HilbertStateJson {
            degree: self.degree,
            pseudoline: scheme.pseudoline,
            ovals: &scheme.ovals,
            tags: &tags,
            lambda_minus_disk: self.lambda_minus_disk(),
            encirclers: self.encircler_count(),
            v_sign: self.crossing_oval().map(|v| v.sign),
            v_crossings_with_e: self.crossing_points(),
        };
        serde_json::to_string(&doc).expect("state serializes")
    }

    /// Counts of placed ovals by (tag kind, sign); handy for reports.
    pub fn census(&self) -> BTreeMap<(LocationTag, Sign), usize> {
        let mut out = BTreeMap::new();
        for (index, &sign) in self.chain.iter().enumerate() {
            *out.entry((LocationTag::Encircler { index }, sign)).or_default() += 1;
        }
        for o in &self.placed {
            *out.entry((o.tag, o.sign)).or_default() += 1;
        }
        out
    }
}

#[derive(Clone)]
struct Tagged {
    node: OvalNode,
    tag: LocationTag,
    children: Vec<Tagged>,
}

impl Tagged {
    fn assemble(sign: Sign, tag: LocationTag, mut children: Vec<Tagged>) -> Tagged {
        children.sort_by(|a, b| (&a.node, a.tag).cmp(&(&b.node, b.tag)));
        let node = OvalNode::new(sign, children.iter().map(|c| c.node.clone()).collect());
        Tagged { node, tag, children }
    }

    fn preorder_tags(&self, out: &mut Vec<LocationTag>) {
        out.push(self.tag);
        for c in &self.children {
            c.preorder_tags(out);
        }
    }
}

fn placed(sign: Sign, tag: LocationTag, enclosed_by: usize, count: usize) -> impl Iterator<Item = PlacedOval> {
    std::iter::repeat_n(PlacedOval { sign, tag, enclosed_by }, count)
}

/// The degree 7 M-curve `C₇` that starts the family.
pub fn hilbert_base() -> HilbertState {
    use LocationTag::*;
    let mut ovals = Vec::new();
    ovals.extend(placed(Sign::Positive, CrossingV, 1, 1));
    ovals.extend(placed(Sign::Negative, InDisk, 1, 5));
    ovals.extend(placed(Sign::Positive, InDisk, 1, 3));
    ovals.extend(placed(Sign::Positive, OutsideDisk, 1, 5));
    HilbertState { degree: 7, chain: vec![Sign::Negative], placed: ovals }
}

fn expected_chain_len(degree: u32) -> Option<usize> {
    let d = degree as usize;
    match d % 4 {
        // d = 4p - 1: 2p - 3 encirclers
        3 if d >= 7 => Some(d.div_ceil(2) - 3),
        // d = 4p + 1: 2p - 2 encirclers
        1 if d >= 9 => Some((d - 1) / 2 - 2),
        _ => None,
    }
}

fn check_state(state: &HilbertState) -> Result<()> {
    let malformed = |msg: String| Err(Error::MalformedState(msg));
    let Some(chain_len) = expected_chain_len(state.degree) else {
        return malformed(format!("degree {} is not 4p-1 or 4p+1 with p >= 2", state.degree));
    };
    if state.chain.len() != chain_len {
        return malformed(format!(
            "degree {} needs {chain_len} encirclers, found {}",
            state.degree,
            state.chain.len()
        ));
    }
    let crossings = state.placed.iter().filter(|o| o.tag == LocationTag::CrossingV).count();
    if crossings != 1 {
        return malformed(format!("expected exactly one crossing oval, found {crossings}"));
    }
    for o in &state.placed {
        if matches!(o.tag, LocationTag::Encircler { .. }) {
            return malformed("encirclers belong to the chain, not the placed ovals".into());
        }
        if o.enclosed_by > chain_len {
            return malformed(format!("oval enclosed by {} of {chain_len} encirclers", o.enclosed_by));
        }
        if o.tag == LocationTag::InDisk && o.enclosed_by != chain_len {
            return malformed("ovals in the disk must lie inside every encircler".into());
        }
    }
    let l = state.len() as u64;
    if l != genus(state.degree) {
        return malformed(format!("{l} ovals is not an M-curve of degree {}", state.degree));
    }
    Ok(())
}

/// Advances `C_d` to `C_{d+2}`: the old crossing oval goes away and four
/// groups of ovals are added, with signs set by `d mod 4`.
pub fn hilbert_step(state: &HilbertState) -> Result<HilbertState> {
    check_state(state)?;
    let d = state.degree as usize;
    // positive new disk ovals when d = 4p - 1, negative when d = 4p + 1
    let disk_sign = if d % 4 == 3 { Sign::Positive } else { Sign::Negative };
    let chain_len = state.chain.len() + 1;

    let mut chain = state.chain.clone();
    chain.push(disk_sign);

    let mut ovals: Vec<PlacedOval> = state
        .placed
        .iter()
        .filter(|o| o.tag != LocationTag::CrossingV)
        .map(|o| match o.tag {
            LocationTag::InDisk => PlacedOval { enclosed_by: chain_len, ..*o },
            _ => *o,
        })
        .collect();
    ovals.extend(placed(disk_sign, LocationTag::InDisk, chain_len, d));
    ovals.extend(placed(-disk_sign, LocationTag::OutsideDisk, chain_len, d - 2));
    ovals.extend(placed(-disk_sign, LocationTag::CrossingV, chain_len, 1));

    Ok(HilbertState { degree: state.degree + 2, chain, placed: ovals })
}

/// `C_{4p-1}` for `p >= 2`.
pub fn hilbert_family(p: u32) -> Result<HilbertState> {
    if p < 2 {
        return Err(Error::ParameterOutOfRange { p, min: 2 });
    }
    let mut state = hilbert_base();
    for _ in 2..p {
        state = hilbert_step(&hilbert_step(&state)?)?;
    }
    Ok(state)
}

/// The intermediate curve `C_{4p+1}` between `C_{4p-1}` and `C_{4p+3}`.
pub fn hilbert_intermediate(p: u32) -> Result<HilbertState> {
    hilbert_step(&hilbert_family(p)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Goodness {
    /// counted by `Λᵖ₋ + Λⁿ₊`
    Good,
    /// counted by `Λᵖ₊ + Λⁿ₋`
    Bad,
}

pub fn goodness(depth: usize, sign: Sign) -> Goodness {
    match (depth.is_multiple_of(2), sign) {
        (true, Sign::Negative) | (false, Sign::Positive) => Goodness::Good,
        _ => Goodness::Bad,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodBadPartition {
    /// One entry per oval, in canonical preorder.
    pub classes: Vec<Goodness>,
    pub good: usize,
    pub bad: usize,
}

pub fn classify_good_bad(scheme: &ComplexScheme) -> GoodBadPartition {
    let mut classes = Vec::with_capacity(scheme.oval_count());
    scheme.for_each_oval(|node, depth| classes.push(goodness(depth, node.sign)));
    let good = classes.iter().filter(|&&c| c == Goodness::Good).count();
    GoodBadPartition { bad: classes.len() - good, good, classes }
}

/// A sign relative to the sign `σ` of the oval being tripled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relative {
    Same,
    Opposite,
}

impl Relative {
    fn apply(self, sign: Sign) -> Sign {
        match self {
            Relative::Same => sign,
            Relative::Opposite => -sign,
        }
    }
}

/// Signs of the three concentric ovals replacing one oval, outer to inner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleRule {
    pub good: [Relative; 3],
    pub bad: [Relative; 3],
}

impl Default for TripleRule {
    fn default() -> Self {
        use Relative::*;
        TripleRule { good: [Same, Opposite, Same], bad: [Same, Same, Opposite] }
    }
}

/// Replaces every oval by three concentric copies and adds `d²` empty
/// negative ovals next to the pseudoline.
pub fn triple(scheme: &ComplexScheme, rule: &TripleRule) -> Result<ComplexScheme> {
    if scheme.degree.is_multiple_of(2) {
        return Err(Error::EvenDegree(scheme.degree));
    }
    if scheme.degree == 1 {
        return Err(Error::KZero);
    }
    fn go(node: &OvalNode, depth: usize, rule: &TripleRule) -> OvalNode {
        let pattern = match goodness(depth, node.sign) {
            Goodness::Good => rule.good,
            Goodness::Bad => rule.bad,
        };
        let [outer, middle, inner] = pattern.map(|r| r.apply(node.sign));
        let children = node.children.iter().map(|c| go(c, depth + 1, rule)).collect();
        OvalNode::new(outer, vec![OvalNode::new(middle, vec![OvalNode::new(inner, children)])])
    }
    let d = scheme.degree as usize;
    let mut ovals: Vec<OvalNode> = scheme.ovals.iter().map(|o| go(o, 0, rule)).collect();
    ovals.extend(std::iter::repeat_n(OvalNode::leaf(Sign::Negative), d * d));
    Ok(ComplexScheme::new(scheme.degree * 3, true, ovals))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnrealizableExample {
    pub p: u32,
    pub source: ComplexScheme,
    pub scheme: ComplexScheme,
    pub report: Theorem11Report,
}

/// The tripled degree `12p - 3` scheme violating the left inequality by one.
pub fn unrealizable_example(p: u32) -> Result<UnrealizableExample> {
    let source = match p {
        0 => return Err(Error::ParameterOutOfRange { p, min: 1 }),
        1 => ComplexScheme::with_degree(3, vec![OvalNode::leaf(Sign::Negative)]),
        _ => hilbert_family(p)?.scheme(),
    };
    let scheme = triple(&source, &TripleRule::default())?;
    let report = check_theorem_1_1(&scheme)?;
    Ok(UnrealizableExample { p, source, scheme, report })
}
