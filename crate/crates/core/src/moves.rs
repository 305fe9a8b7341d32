//! Swapping of parallel ovals and a breadth-first search over its orbit.
//!
//! A pair is swappable when an oval has exactly one child and the two have
//! opposite signs; the annulus between them then holds no other oval.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::notation::print_viro;
use crate::scheme::{check_theorem_1_1, sibling_runs, ComplexScheme, OvalNode, OvalPath};

pub const DEFAULT_MAX_STATES: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SwapMove {
    /// The outer oval of the pair.
    pub parent_path: OvalPath,
}

impl SwapMove {
    pub fn new(parent_path: OvalPath) -> SwapMove {
        SwapMove { parent_path }
    }
}

fn is_swappable(node: &OvalNode) -> bool {
    matches!(node.children.as_slice(), [child] if child.sign != node.sign)
}

/// All swappable pairs, in preorder of their outer oval.
pub fn swappable_pairs(scheme: &ComplexScheme) -> Vec<SwapMove> {
    fn walk(forest: &[OvalNode], prefix: &mut Vec<usize>, out: &mut Vec<SwapMove>) {
        for (i, run) in sibling_runs(forest).into_iter().enumerate() {
            prefix.push(i);
            let node = &run[0];
            if is_swappable(node) {
                out.push(SwapMove::new(OvalPath(prefix.clone())));
            }
            walk(&node.children, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    walk(&scheme.ovals, &mut Vec::new(), &mut out);
    out
}

/// Reverses the signs of both ovals of the pair.
pub fn swap(scheme: &ComplexScheme, mv: &SwapMove) -> Result<ComplexScheme> {
    swap_tracked(scheme, mv).map(|(out, _)| out)
}

/// Like [`swap`], also returning the move that addresses the same pair in
/// the result, whose canonical order may differ.
pub fn swap_tracked(scheme: &ComplexScheme, mv: &SwapMove) -> Result<(ComplexScheme, SwapMove)> {
    let expanded = scheme.resolve(&mv.parent_path)?;
    let mut out = scheme.clone();
    let node = out.node_mut_expanded(&expanded);
    if !is_swappable(node) {
        return Err(Error::NotSwappable(mv.parent_path.clone()));
    }
    node.sign = -node.sign;
    node.children[0].sign = -node.children[0].sign;
    // only the subtrees along the path changed; re-sort them bottom-up
    let path = resort_along(&mut out.ovals, &expanded);
    debug_assert!(out.is_canonical());
    Ok((out, SwapMove::new(OvalPath(path))))
}

fn resort_along(forest: &mut [OvalNode], expanded: &[usize]) -> Vec<usize> {
    let (&i, rest) = expanded.split_first().expect("non-empty path");
    let mut path = if rest.is_empty() { Vec::new() } else { resort_along(&mut forest[i].children, rest) };
    let target = forest[i].clone();
    forest.sort();
    let run = sibling_runs(forest).iter().position(|r| r[0] == target).expect("node still present");
    path.insert(0, run);
    path
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    AlreadySatisfies,
    Reached,
    Unreachable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// Each move's path refers to the scheme produced by the previous move.
    pub moves: Vec<SwapMove>,
    pub scheme: ComplexScheme,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub witness: Option<Witness>,
    /// Distinct states visited.
    pub explored: usize,
}

struct Visited {
    scheme: ComplexScheme,
    parent: Option<(usize, SwapMove)>,
}

/// Looks for the fewest swaps leading to a scheme that satisfies both
/// inequalities. Among the states at the first successful distance the one
/// with the smallest canonical text wins.
pub fn swap_search(scheme: &ComplexScheme, max_states: usize) -> Result<SearchOutcome> {
    let start = crate::scheme::canonicalize(scheme);
    if check_theorem_1_1(&start)?.both_hold {
        return Ok(SearchOutcome {
            status: SearchStatus::AlreadySatisfies,
            witness: Some(Witness { moves: Vec::new(), scheme: start }),
            explored: 1,
        });
    }

    let mut seen: HashSet<ComplexScheme> = HashSet::new();
    seen.insert(start.clone());
    let mut states = vec![Visited { scheme: start, parent: None }];
    let mut frontier = vec![0usize];

    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &idx in &frontier {
            for mv in swappable_pairs(&states[idx].scheme) {
                let child = swap(&states[idx].scheme, &mv)?;
                if seen.contains(&child) {
                    continue;
                }
                if seen.len() >= max_states {
                    return Err(Error::LimitExceeded(max_states));
                }
                seen.insert(child.clone());
                states.push(Visited { scheme: child, parent: Some((idx, mv)) });
                next.push(states.len() - 1);
            }
        }

        let mut hits = Vec::new();
        for &idx in &next {
            if check_theorem_1_1(&states[idx].scheme)?.both_hold {
                hits.push((print_viro(&states[idx].scheme), idx));
            }
        }
        if let Some((_, best)) = hits.into_iter().min() {
            return Ok(SearchOutcome {
                status: SearchStatus::Reached,
                witness: Some(trace_back(&states, best)),
                explored: seen.len(),
            });
        }
        frontier = next;
    }

    Ok(SearchOutcome { status: SearchStatus::Unreachable, witness: None, explored: seen.len() })
}

fn trace_back(states: &[Visited], mut idx: usize) -> Witness {
    let scheme = states[idx].scheme.clone();
    let mut moves = Vec::new();
    while let Some((parent, mv)) = &states[idx].parent {
        moves.push(mv.clone());
        idx = *parent;
    }
    moves.reverse();
    Witness { moves, scheme }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse_viro;
    use crate::scheme::{depth, lambda_counts};

    const SCHEME_ONE: &str = "J u 9- u 1-<1+<1->>";

    fn path(s: &str) -> OvalPath {
        s.parse().unwrap()
    }

    #[test]
    fn pairs_of_scheme_one() {
        let s = parse_viro(SCHEME_ONE, 9).unwrap();
        let moves = swappable_pairs(&s);
        assert_eq!(moves, vec![SwapMove::new(path("1")), SwapMove::new(path("1.0"))]);
        assert!(swappable_pairs(&parse_viro("J", 3).unwrap()).is_empty());
        assert!(swappable_pairs(&parse_viro("J u 1-<1+ u 1+>", 7).unwrap()).is_empty());
        assert!(swappable_pairs(&parse_viro("J u 1-<1->", 5).unwrap()).is_empty());
    }

    #[test]
    fn swapped_variants_satisfy_both() {
        let s = parse_viro(SCHEME_ONE, 9).unwrap();
        let outer = swap(&s, &SwapMove::new(path("1"))).unwrap();
        assert_eq!(print_viro(&outer), "J u 9- u 1+<1-<1->>");
        let inner = swap(&s, &SwapMove::new(path("1.0"))).unwrap();
        assert_eq!(print_viro(&inner), "J u 9- u 1-<1-<1+>>");
        for v in [&outer, &inner] {
            let rep = check_theorem_1_1(v).unwrap();
            assert_eq!(rep.left_margin, 1);
            assert!(rep.both_hold);
        }
    }

    #[test]
    fn tracked_path_follows_resorting() {
        // the swapped oval moves from after "1-<1+>" to before it
        let s = parse_viro("J u 1-<1+> u 1+<1->", 7).unwrap();
        let (t, back) = swap_tracked(&s, &SwapMove::new(path("1"))).unwrap();
        assert_eq!(print_viro(&t), "J u 2-<1+>");
        assert_eq!(back, SwapMove::new(path("0")));
        assert_eq!(swap(&t, &back).unwrap(), s);
    }

    #[test]
    fn swap_twice_is_identity() {
        let s = parse_viro(SCHEME_ONE, 9).unwrap();
        let mv = SwapMove::new(path("1"));
        let once = swap(&s, &mv).unwrap();
        // outer oval keeps its path: the nest still sorts after the 9 empty ovals
        assert_eq!(swap(&once, &mv).unwrap(), s);
    }

    #[test]
    fn swap_keeps_depths_and_counts() {
        let s = parse_viro(SCHEME_ONE, 9).unwrap();
        let t = swap(&s, &SwapMove::new(path("1.0"))).unwrap();
        assert_eq!(t.oval_count(), s.oval_count());
        assert_eq!(depth(&t, &path("1.0.0")).unwrap(), 2);
        assert_eq!(lambda_counts(&t).total(), 12);
    }

    #[test]
    fn swap_errors() {
        let s = parse_viro(SCHEME_ONE, 9).unwrap();
        assert_eq!(swap(&s, &SwapMove::new(path("0"))), Err(Error::NotSwappable(path("0"))));
        assert_eq!(swap(&s, &SwapMove::new(path("5"))), Err(Error::InvalidPath(path("5"))));
        assert_eq!(swap(&s, &SwapMove::new(path("1.0.0"))), Err(Error::NotSwappable(path("1.0.0"))));
    }

    #[test]
    fn search_scheme_one() {
        let s = parse_viro(SCHEME_ONE, 9).unwrap();
        let out = swap_search(&s, DEFAULT_MAX_STATES).unwrap();
        assert_eq!(out.status, SearchStatus::Reached);
        let w = out.witness.unwrap();
        assert_eq!(w.moves, vec![SwapMove::new(path("1"))]);
        assert_eq!(print_viro(&w.scheme), "J u 9- u 1+<1-<1->>");
    }

    #[test]
    fn search_already_and_unreachable() {
        let ok = parse_viro("J u 9- u 1+<1-<1->>", 9).unwrap();
        assert_eq!(swap_search(&ok, 10).unwrap().status, SearchStatus::AlreadySatisfies);
        let flat = parse_viro("J u 12-", 9).unwrap();
        let out = swap_search(&flat, 10).unwrap();
        assert_eq!(out.status, SearchStatus::Unreachable);
        assert_eq!(out.explored, 1);
        assert!(out.witness.is_none());
    }

    #[test]
    fn search_limit() {
        let s = parse_viro(SCHEME_ONE, 9).unwrap();
        assert_eq!(swap_search(&s, 1), Err(Error::LimitExceeded(1)));
    }

    #[test]
    fn search_preconditions() {
        assert!(swap_search(&parse_viro("J", 1).unwrap(), 10).is_err());
        assert!(swap_search(&parse_viro("1-", 4).unwrap(), 10).is_err());
    }
}
