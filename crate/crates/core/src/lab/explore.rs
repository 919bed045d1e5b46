//! Search for a tree ↔ tableau correspondence compatible with the product.
//!
//! For a candidate correspondence `φ` (trees of canopy `s` onto tableaux of
//! shape `s`), the product is described by tableaux when, for every pair
//! `(T1, T2)` and connector `±1`, the trees of `T1 * T2` in that connector
//! class are exactly `φ⁻¹` of the valid completions of
//! `φ(T1) · (±1) · φ(T2)` under a placement strategy. The explorer fixes `φ`
//! size by size: each class equation narrows the possible images of the trees
//! of its shape, and the surviving bijections per shape are counted as
//! bipartite matchings. The findings describe the search. They are not a
//! claim that a correspondence exists.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::hash::{embed_with, EmbeddingStrategy, Strategy};
use crate::lr::{split_by_canopy, LrEngine};
use crate::sign::{Sign, SignWord};
use crate::tableau::{enumerate_tableaux, Shape, Tableau};
use crate::tree::{canopy, trees_up_to, BinaryTree};

/// Partial correspondences carried from one size to the next.
const MAX_BRANCHES: usize = 64;
/// Matchings kept per shape for branching.
const KEEP_MATCHINGS: usize = 8;
/// Matchings counted per shape before giving up on an exact count.
const COUNT_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeFinding {
    pub shape: SignWord,
    pub trees: usize,
    pub tableaux: usize,
    /// Fewest and most consistent bijections over the examined branches.
    pub min_bijections: u64,
    pub max_bijections: u64,
    /// `unique`, `ambiguous` or `contradiction`.
    pub status: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contradiction {
    pub left: String,
    pub right: String,
    pub connector: i8,
    pub shape: SignWord,
    pub oracle_class_size: usize,
    pub candidate_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeFinding {
    pub size: usize,
    pub branches_examined: usize,
    pub branches_surviving: usize,
    pub constraints_examined: u64,
    pub shapes: Vec<ShapeFinding>,
    /// Class-size mismatches (at most a few per size).
    pub contradictions: Vec<Contradiction>,
    pub contradiction_count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchReport {
    pub strategy: String,
    pub n_max: usize,
    pub constraints_examined: u64,
    pub sizes: Vec<SizeFinding>,
    /// Correspondences consistent with every class equation up to the last
    /// size reached (capped at the branch limit).
    pub surviving_assignments: usize,
    pub truncated: bool,
    /// One surviving correspondence, as `(tree, tableau)` text pairs.
    pub sample_assignment: Option<Vec<(String, String)>>,
}

type Assignment = HashMap<BinaryTree, Tableau>;

/// Per shape: the number of bijections and up to `KEEP_MATCHINGS` of them.
type ShapeMatchings = BTreeMap<SignWord, (u64, Vec<Vec<(BinaryTree, Tableau)>>)>;

struct BranchOutcome {
    constraints: u64,
    contradictions: Vec<Contradiction>,
    per_shape: ShapeMatchings,
}

/// Explores correspondences for trees of size up to `n_max` (at most 6).
pub fn explore_correspondence(n_max: usize, strategy: Strategy) -> Result<MatchReport> {
    let n_max = n_max.min(6);
    let trees = trees_up_to(n_max);
    let mut engine = LrEngine::new();
    let mut branches: Vec<Assignment> = vec![[(BinaryTree::single(), Tableau::empty())].into()];
    let mut report = MatchReport {
        strategy: strategy.name().to_string(),
        n_max,
        constraints_examined: 0,
        sizes: Vec::new(),
        surviving_assignments: 0,
        truncated: false,
        sample_assignment: None,
    };
    for n in 2..=n_max {
        let mut by_shape: BTreeMap<SignWord, Vec<BinaryTree>> = BTreeMap::new();
        for t in &trees[n] {
            by_shape.entry(canopy(t)?).or_default().push(t.clone());
        }
        let mut finding = SizeFinding {
            size: n,
            branches_examined: branches.len(),
            branches_surviving: 0,
            constraints_examined: 0,
            shapes: Vec::new(),
            contradictions: Vec::new(),
            contradiction_count: 0,
        };
        let mut bounds: BTreeMap<SignWord, (u64, u64)> = BTreeMap::new();
        let mut next = Vec::new();
        for branch in &branches {
            let outcome = examine(&mut engine, &strategy, &trees, n, &by_shape, branch)?;
            finding.constraints_examined += outcome.constraints;
            finding.contradiction_count += outcome.contradictions.len() as u64;
            for c in outcome.contradictions.iter().take(4) {
                if finding.contradictions.len() < 8 && !finding.contradictions.contains(c) {
                    finding.contradictions.push(c.clone());
                }
            }
            for (shape, (count, _)) in &outcome.per_shape {
                let e = bounds.entry(shape.clone()).or_insert((u64::MAX, 0));
                e.0 = e.0.min(*count);
                e.1 = e.1.max(*count);
            }
            if !outcome.contradictions.is_empty() || outcome.per_shape.values().any(|(c, _)| *c == 0) {
                continue;
            }
            finding.branches_surviving += 1;
            let (extended, cut) = extend(branch, &outcome.per_shape, MAX_BRANCHES.saturating_sub(next.len()));
            report.truncated |= cut;
            next.extend(extended);
        }
        report.constraints_examined += finding.constraints_examined;
        for (shape, trees_here) in &by_shape {
            let (lo, hi) = bounds.get(shape).copied().unwrap_or((0, 0));
            let status = match (lo, hi) {
                (_, 0) => "contradiction",
                (1, 1) => "unique",
                _ => "ambiguous",
            };
            finding.shapes.push(ShapeFinding {
                shape: shape.clone(),
                trees: trees_here.len(),
                tableaux: enumerate_tableaux(&Shape::new(shape.clone())).len(),
                min_bijections: if lo == u64::MAX { 0 } else { lo },
                max_bijections: hi,
                status: status.to_string(),
            });
        }
        report.sizes.push(finding);
        branches = next;
        if branches.is_empty() {
            break;
        }
    }
    report.surviving_assignments = branches.len();
    report.sample_assignment = branches.first().map(|a| {
        let mut pairs: Vec<(String, String)> = a.iter().map(|(t, c)| (t.to_string(), c.to_string())).collect();
        pairs.sort_by(|x, y| (x.0.len(), &x.0).cmp(&(y.0.len(), &y.0)));
        pairs
    });
    Ok(report)
}

fn examine(
    engine: &mut LrEngine,
    strategy: &dyn EmbeddingStrategy,
    trees: &[Vec<BinaryTree>],
    n: usize,
    by_shape: &BTreeMap<SignWord, Vec<BinaryTree>>,
    branch: &Assignment,
) -> Result<BranchOutcome> {
    let tableaux: BTreeMap<SignWord, Vec<Tableau>> =
        by_shape.keys().map(|s| (s.clone(), enumerate_tableaux(&Shape::new(s.clone())))).collect();
    // allowed[tree] = indices into tableaux[canopy(tree)]
    let mut allowed: HashMap<BinaryTree, BTreeSet<usize>> = HashMap::new();
    for (shape, ts) in by_shape {
        for t in ts {
            allowed.insert(t.clone(), (0..tableaux[shape].len()).collect());
        }
    }
    let mut constraints = 0;
    let mut contradictions = Vec::new();
    for n1 in 1..n {
        for t1 in &trees[n1] {
            for t2 in &trees[n - n1] {
                let product = engine.product(t1, t2)?;
                let classes = split_by_canopy(t1, t2, &product)?;
                for link in [Sign::Up, Sign::Down] {
                    constraints += 1;
                    let shape = canopy(t1)?.join(link, &canopy(t2)?);
                    let class: BTreeSet<&BinaryTree> = classes[&shape].basis().collect();
                    let candidates: BTreeSet<Tableau> =
                        embed_with(strategy, &branch[t1], Some(link), &branch[t2]).completions().into_iter().collect();
                    if class.len() != candidates.len() {
                        contradictions.push(Contradiction {
                            left: t1.to_string(),
                            right: t2.to_string(),
                            connector: link.value(),
                            shape,
                            oracle_class_size: class.len(),
                            candidate_size: candidates.len(),
                        });
                        continue;
                    }
                    let inside: BTreeSet<usize> = tableaux[&shape]
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| candidates.contains(c))
                        .map(|(i, _)| i)
                        .collect();
                    for t in &by_shape[&shape] {
                        let a = allowed.get_mut(t).expect("every tree has a domain");
                        if class.contains(t) {
                            a.retain(|i| inside.contains(i));
                        } else {
                            a.retain(|i| !inside.contains(i));
                        }
                    }
                }
            }
        }
    }
    let mut per_shape = BTreeMap::new();
    for (shape, ts) in by_shape {
        let domains: Vec<Vec<usize>> = ts.iter().map(|t| allowed[t].iter().copied().collect()).collect();
        let (count, kept) = matchings(&domains, tableaux[shape].len());
        let kept = kept
            .into_iter()
            .map(|m| ts.iter().cloned().zip(m.into_iter().map(|i| tableaux[shape][i].clone())).collect())
            .collect();
        per_shape.insert(shape.clone(), (count, kept));
    }
    Ok(BranchOutcome { constraints, contradictions, per_shape })
}

/// Counts perfect matchings of trees onto tableaux (capped) and keeps the
/// first few.
fn matchings(domains: &[Vec<usize>], targets: usize) -> (u64, Vec<Vec<usize>>) {
    fn go(
        domains: &[Vec<usize>],
        i: usize,
        used: &mut [bool],
        current: &mut Vec<usize>,
        count: &mut u64,
        kept: &mut Vec<Vec<usize>>,
    ) {
        if *count >= COUNT_CAP {
            return;
        }
        if i == domains.len() {
            *count += 1;
            if kept.len() < KEEP_MATCHINGS {
                kept.push(current.clone());
            }
            return;
        }
        for &j in &domains[i] {
            if !used[j] {
                used[j] = true;
                current.push(j);
                go(domains, i + 1, used, current, count, kept);
                current.pop();
                used[j] = false;
            }
        }
    }
    if domains.len() != targets {
        return (0, Vec::new());
    }
    let mut count = 0;
    let mut kept = Vec::new();
    go(domains, 0, &mut vec![false; targets], &mut Vec::new(), &mut count, &mut kept);
    (count, kept)
}

/// Every combination of kept per-shape matchings, up to `room` new branches.
fn extend(
    branch: &Assignment,
    per_shape: &ShapeMatchings,
    room: usize,
) -> (Vec<Assignment>, bool) {
    let mut out = vec![branch.clone()];
    let mut cut = false;
    for (count, kept) in per_shape.values() {
        cut |= *count > kept.len() as u64;
        let mut grown = Vec::new();
        'outer: for partial in &out {
            for m in kept {
                if grown.len() >= room {
                    cut = true;
                    break 'outer;
                }
                let mut a = partial.clone();
                a.extend(m.iter().cloned());
                grown.push(a);
            }
        }
        out = grown;
    }
    (out, cut)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_two_is_forced() {
        for strategy in Strategy::ALL {
            let r = explore_correspondence(2, strategy).unwrap();
            let s2 = &r.sizes[0];
            assert!(s2.contradictions.is_empty());
            assert!(s2.shapes.iter().all(|s| s.status == "unique"));
            assert_eq!(r.surviving_assignments, 1);
        }
    }

    #[test]
    fn size_three_leaves_the_mixed_shape_open() {
        let r = explore_correspondence(3, Strategy::Identity).unwrap();
        let s3 = &r.sizes[1];
        let mixed = s3.shapes.iter().find(|s| s.shape.to_string() == "+-").unwrap();
        assert_eq!((mixed.trees, mixed.tableaux), (2, 2));
        assert_eq!(mixed.max_bijections, 2);
        assert_eq!(mixed.status, "ambiguous");
    }

    #[test]
    fn reports_are_deterministic() {
        for strategy in Strategy::ALL {
            let a = explore_correspondence(5, strategy).unwrap();
            let b = explore_correspondence(5, strategy).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn matching_counts() {
        assert_eq!(matchings(&[vec![0, 1], vec![0, 1]], 2).0, 2);
        assert_eq!(matchings(&[vec![0], vec![0]], 2).0, 0);
        assert_eq!(matchings(&[vec![0, 1, 2], vec![0, 1, 2], vec![0, 1, 2]], 3).0, 6);
    }
}
