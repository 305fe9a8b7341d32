//! Exhaustive generation of signed nesting forests.
//!
//! Trees with `n` nodes are a sign plus a forest of `n - 1` nodes; a forest
//! is a non-decreasing sequence of trees, which picks each multiset of
//! subtrees exactly once.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::constructions::{goodness, Goodness};
use crate::scheme::{check_theorem_1_1, genus, validate, ComplexScheme, LambdaCounts, OvalNode, Sign, Theorem11Report, Violation};

pub const DEFAULT_CEILING: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Filters {
    pub valid_only: bool,
    pub violating_left: bool,
    pub violating_right: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationSpec {
    pub ovals: usize,
    pub degree: Option<u32>,
    pub filters: Filters,
    pub ceiling: usize,
}

impl EnumerationSpec {
    pub fn new(ovals: usize, degree: Option<u32>) -> EnumerationSpec {
        EnumerationSpec { ovals, degree, filters: Filters::default(), ceiling: DEFAULT_CEILING }
    }

    pub fn with_filters(mut self, filters: Filters) -> EnumerationSpec {
        self.filters = filters;
        self
    }
}

/// Caps on the number of bad (`Λᵖ₊ + Λⁿ₋`) and good (`Λᵖ₋ + Λⁿ₊`) ovals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Budget {
    bad: usize,
    good: usize,
}

impl Budget {
    const UNLIMITED: Budget = Budget { bad: usize::MAX, good: usize::MAX };
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Counted {
    node: OvalNode,
    size: usize,
    bad: usize,
}

impl Counted {
    fn good(&self) -> usize {
        self.size - self.bad
    }
}

/// Canonical trees by root depth parity and size, within a budget.
struct Catalog {
    budget: Budget,
    /// trees[parity][n], sorted
    trees: [Vec<Vec<Counted>>; 2],
}

impl Catalog {
    fn build(max: usize, budget: Budget) -> Catalog {
        let mut catalog = Catalog { budget, trees: [vec![Vec::new()], vec![Vec::new()]] };
        for n in 1..=max {
            for parity in 0..2 {
                let mut trees = Vec::new();
                for sign in [Sign::Negative, Sign::Positive] {
                    let root_bad = usize::from(goodness(parity, sign) == Goodness::Bad);
                    for (children, bad) in catalog.forests(1 - parity, n - 1) {
                        let t = Counted { node: OvalNode::new(sign, children), size: n, bad: bad + root_bad };
                        if t.bad <= budget.bad && t.good() <= budget.good {
                            trees.push(t);
                        }
                    }
                }
                trees.sort();
                catalog.trees[parity].push(trees);
            }
        }
        catalog
    }

    /// Forests of `n` ovals whose roots sit at depth parity `parity`.
    fn forests(&self, parity: usize, n: usize) -> Vec<(Vec<OvalNode>, usize)> {
        let available = self.trees[parity].len() - 1;
        let mut pool: Vec<&Counted> = self.trees[parity][1..=n.min(available)].iter().flatten().collect();
        pool.sort_by(|a, b| a.node.cmp(&b.node));
        let mut by_size = vec![Vec::new(); n + 1];
        for (i, t) in pool.iter().enumerate() {
            by_size[t.size].push(i);
        }
        let mut out = Vec::new();
        let mut walk = Walk { pool: &pool, by_size: &by_size, budget: self.budget, current: Vec::new(), out: &mut out };
        walk.extend(0, n, 0, 0);
        out.sort();
        out
    }
}

struct Walk<'a> {
    pool: &'a [&'a Counted],
    /// pool indices of the trees of each size, ascending
    by_size: &'a [Vec<usize>],
    budget: Budget,
    current: Vec<OvalNode>,
    out: &'a mut Vec<(Vec<OvalNode>, usize)>,
}

impl Walk<'_> {
    fn extend(&mut self, min: usize, remaining: usize, bad: usize, good: usize) {
        if remaining == 0 {
            self.out.push((self.current.clone(), bad));
            return;
        }
        for size in 1..=remaining.min(self.by_size.len() - 1) {
            let indices = &self.by_size[size];
            let from = indices.partition_point(|&i| i < min);
            for &i in &indices[from..] {
                let tree = self.pool[i];
                let (b, g) = (bad + tree.bad, good + tree.good());
                if b <= self.budget.bad && g <= self.budget.good {
                    self.current.push(tree.node.clone());
                    self.extend(i, remaining - size, b, g);
                    self.current.pop();
                }
            }
        }
    }
}

fn forests_within(l: usize, budget: Budget) -> Vec<Vec<OvalNode>> {
    Catalog::build(l, budget).forests(0, l).into_iter().map(|(f, _)| f).collect()
}

/// Every signed forest with `l` ovals exactly once, in canonical order.
pub fn enumerate_forests(l: usize) -> Result<Vec<Vec<OvalNode>>> {
    enumerate_forests_with_ceiling(l, DEFAULT_CEILING)
}

pub fn enumerate_forests_with_ceiling(l: usize, ceiling: usize) -> Result<Vec<Vec<OvalNode>>> {
    if l > ceiling {
        return Err(Error::CeilingExceeded { requested: l, ceiling });
    }
    Ok(forests_within(l, Budget::UNLIMITED))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumeratedScheme {
    pub scheme: ComplexScheme,
    pub violations: Vec<Violation>,
    /// Present for valid schemes of odd degree at least 3.
    pub report: Option<Theorem11Report>,
}

/// Oval-class caps implied by the violation filters, or `None` when no
/// forest with `l` ovals can pass them at this degree.
fn violation_budget(l: usize, degree: u32, filters: &Filters) -> Option<Budget> {
    let g = genus(degree) as i64;
    let l = l as i64;
    if l > g || (g - l) % 2 == 1 {
        return None;
    }
    let k = i64::from(degree - 1) / 2;
    let rhs = (l - k * k + 2 * k) / 2;
    let mut budget = Budget::UNLIMITED;
    // left fails: bad + 1 < rhs
    if filters.violating_left {
        budget.bad = usize::try_from(rhs - 2).ok()?;
    }
    // right fails: good < rhs
    if filters.violating_right {
        budget.good = usize::try_from(rhs - 1).ok()?;
    }
    Some(budget)
}

pub fn enumerate_schemes(spec: &EnumerationSpec) -> Result<Vec<EnumeratedScheme>> {
    let degree = spec.degree.ok_or(Error::DegreeRequired)?;
    if degree == 0 {
        return Err(Error::ZeroDegree);
    }
    let wants_report = spec.filters.violating_left || spec.filters.violating_right;
    if wants_report && degree % 2 == 0 {
        return Err(Error::EvenDegree(degree));
    }
    if wants_report && degree == 1 {
        return Err(Error::KZero);
    }
    if spec.ovals > spec.ceiling {
        return Err(Error::CeilingExceeded { requested: spec.ovals, ceiling: spec.ceiling });
    }
    let budget = if wants_report {
        match violation_budget(spec.ovals, degree, &spec.filters) {
            Some(b) => b,
            None => return Ok(Vec::new()),
        }
    } else {
        Budget::UNLIMITED
    };
    let forests = forests_within(spec.ovals, budget);
    let mut out = Vec::new();
    for forest in forests {
        let scheme = ComplexScheme::with_degree(degree, forest);
        let violations = validate(&scheme);
        let report = if violations.is_empty() && degree % 2 == 1 && degree > 1 {
            Some(check_theorem_1_1(&scheme)?)
        } else {
            None
        };
        let f = &spec.filters;
        if f.valid_only && !violations.is_empty() {
            continue;
        }
        if f.violating_left && !report.as_ref().is_some_and(|r| !r.left_holds) {
            continue;
        }
        if f.violating_right && !report.as_ref().is_some_and(|r| !r.right_holds) {
            continue;
        }
        out.push(EnumeratedScheme { scheme, violations, report });
    }
    Ok(out)
}

/// Recomputes the four counts from an explicit containment matrix, without
/// recursion on depth.
pub fn lambda_counts_oracle(scheme: &ComplexScheme) -> LambdaCounts {
    // preorder spans: node i contains j iff start_i < start_j < end_i
    let mut spans: Vec<(usize, usize, Sign)> = Vec::new();
    fn flatten(forest: &[OvalNode], spans: &mut Vec<(usize, usize, Sign)>) {
        for node in forest {
            let at = spans.len();
            spans.push((at, 0, node.sign));
            flatten(&node.children, spans);
            spans[at].1 = spans.len();
        }
    }
    flatten(&scheme.ovals, &mut spans);
    let l = spans.len();
    let mut contains = vec![vec![false; l]; l];
    for (i, &(start_i, end_i, _)) in spans.iter().enumerate() {
        for (j, &(start_j, _, _)) in spans.iter().enumerate() {
            contains[i][j] = start_i < start_j && start_j < end_i;
        }
    }
    let mut counts = LambdaCounts::default();
    for (j, &(_, _, sign)) in spans.iter().enumerate() {
        let surrounding = (0..l).filter(|&i| contains[i][j]).count();
        counts.add(surrounding, sign);
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::{parse_viro, print_forest};
    use crate::scheme::lambda_counts;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_forests(0).unwrap(), vec![Vec::<OvalNode>::new()]);
        assert_eq!(enumerate_forests(1).unwrap().len(), 2);
        let two: Vec<String> = enumerate_forests(2).unwrap().iter().map(|f| print_forest(f)).collect();
        assert_eq!(two, ["2-", "1- u 1+", "1-<1->", "1-<1+>", "2+", "1+<1->", "1+<1+>"]);
    }

    #[test]
    fn ceiling() {
        assert_eq!(enumerate_forests(9), Err(Error::CeilingExceeded { requested: 9, ceiling: 8 }));
        assert!(enumerate_forests_with_ceiling(4, 3).is_err());
        assert_eq!(enumerate_forests_with_ceiling(3, 3).unwrap().len(), enumerate_forests(3).unwrap().len());
    }

    #[test]
    fn strictly_increasing() {
        for l in 0..=6 {
            let f = enumerate_forests(l).unwrap();
            assert!(f.windows(2).all(|w| w[0] < w[1]), "l = {l}");
            assert!(f.iter().all(|x| x.iter().map(OvalNode::size).sum::<usize>() == l));
        }
    }

    #[test]
    fn scheme_one_among_left_violators() {
        let spec = EnumerationSpec {
            ceiling: 12,
            ..EnumerationSpec::new(12, Some(9)).with_filters(Filters { violating_left: true, ..Default::default() })
        };
        let found = enumerate_schemes(&spec).unwrap();
        let one = parse_viro("J u 9- u 1-<1+<1->>", 9).unwrap();
        assert!(found.iter().any(|e| e.scheme == one));
        assert!(found.iter().all(|e| e.report.as_ref().is_some_and(|r| r.left_margin < 0)));
        // every oval must be good, so signs are forced by depth: one per unlabeled
        // forest on 12 nodes, i.e. rooted trees on 13 nodes
        assert_eq!(found.len(), 12486);
    }

    #[test]
    fn valid_only_fixes_deficit() {
        let spec = EnumerationSpec::new(6, Some(9)).with_filters(Filters { valid_only: true, ..Default::default() });
        let all = enumerate_schemes(&spec).unwrap();
        assert!(!all.is_empty());
        assert!(all.iter().all(|e| crate::scheme::stats(&e.scheme).unwrap().s == 11));
    }

    #[test]
    fn pruned_matches_filtered() {
        for degree in [5u32, 7] {
            for l in 0..=6 {
                for filters in [
                    Filters { violating_left: true, ..Default::default() },
                    Filters { violating_right: true, ..Default::default() },
                ] {
                    let pruned = enumerate_schemes(&EnumerationSpec::new(l, Some(degree)).with_filters(filters)).unwrap();
                    let full: Vec<_> = enumerate_schemes(&EnumerationSpec::new(l, Some(degree)))
                        .unwrap()
                        .into_iter()
                        .filter(|e| match &e.report {
                            Some(r) => (filters.violating_left && !r.left_holds) || (filters.violating_right && !r.right_holds),
                            None => false,
                        })
                        .collect();
                    assert_eq!(pruned, full, "degree {degree}, l {l}, {filters:?}");
                }
            }
        }
    }

    #[test]
    fn degree_seven_two_ovals_all_invalid() {
        let all = enumerate_schemes(&EnumerationSpec::new(2, Some(7))).unwrap();
        assert_eq!(all.len(), 7);
        assert!(all.iter().all(|e| !e.violations.is_empty() && e.report.is_none()));
        let valid = enumerate_schemes(
            &EnumerationSpec::new(2, Some(7)).with_filters(Filters { valid_only: true, ..Default::default() }),
        )
        .unwrap();
        assert!(valid.is_empty());
    }

    #[test]
    fn needs_degree() {
        assert_eq!(enumerate_schemes(&EnumerationSpec::new(2, None)), Err(Error::DegreeRequired));
    }

    #[test]
    fn oracle_matches_on_examples() {
        let one = parse_viro("J u 9- u 1-<1+<1->>", 9).unwrap();
        let o = lambda_counts_oracle(&one);
        assert_eq!((o.lp_plus, o.lp_minus, o.ln_plus, o.ln_minus), (0, 11, 1, 0));
        assert_eq!(lambda_counts_oracle(&parse_viro("J", 3).unwrap()), LambdaCounts::default());
        assert_eq!(lambda_counts_oracle(&one), lambda_counts(&one));
    }
}
