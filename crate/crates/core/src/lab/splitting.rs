use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lr::{split_by_canopy, LrEngine};
use crate::sign::{Sign, SignWord};
use crate::tableau::{count_tableaux, Shape};
use crate::tree::{canopy, trees_up_to, BinaryTree};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectorClass {
    pub connector: i8,
    pub canopy: SignWord,
    /// Trees of this canopy in the product.
    pub trees: usize,
    /// Valid tableaux of this shape.
    pub tableaux: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairSplit {
    pub left: String,
    pub right: String,
    pub classes: Vec<ConnectorClass>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingReport {
    pub n_max: usize,
    pub pairs: u64,
    pub terms: u64,
    /// Every pair produced terms with both connectors.
    pub both_connectors_always: bool,
    /// Every class is no larger than the tableau count of its shape.
    pub tableau_bound_holds: bool,
    /// Every coefficient met was 1.
    pub multiplicity_free: bool,
    pub pairs_detail: Vec<PairSplit>,
}

fn split_with(engine: &mut LrEngine, left: &BinaryTree, right: &BinaryTree) -> Result<(PairSplit, bool)> {
    let product = engine.product(left, right)?;
    let classes = split_by_canopy(left, right, &product)?;
    let q1 = canopy(left)?;
    let q2 = canopy(right)?;
    let classes = [Sign::Up, Sign::Down]
        .into_iter()
        .map(|s| {
            let word = q1.join(s, &q2);
            ConnectorClass {
                connector: s.value(),
                trees: classes[&word].len(),
                tableaux: count_tableaux(&Shape::new(word.clone())),
                canopy: word,
            }
        })
        .collect();
    let unit = product.iter().all(|(_, c)| c == 1);
    Ok((PairSplit { left: left.to_string(), right: right.to_string(), classes }, unit))
}

/// Connector classes of `T1 * T2` with the tableau count of each shape.
pub fn pair_split(left: &BinaryTree, right: &BinaryTree) -> Result<PairSplit> {
    split_with(&mut LrEngine::new(), left, right).map(|(p, _)| p)
}

/// Sweeps every pair of non-empty trees with total size at most `n_max` and
/// checks that each product term has canopy `Q1·(±1)·Q2`.
pub fn verify_canopy_splitting(n_max: usize) -> Result<SplittingReport> {
    if n_max > 7 {
        return Err(Error::InvalidArgument(format!("splitting sweep supports total size up to 7, got {n_max}")));
    }
    let by_size = trees_up_to(n_max.saturating_sub(1));
    let mut pairs = Vec::new();
    for n1 in 1..n_max {
        for n2 in 1..=n_max - n1 {
            for a in &by_size[n1] {
                for b in &by_size[n2] {
                    pairs.push((a, b));
                }
            }
        }
    }
    let results: Vec<(PairSplit, bool)> = pairs
        .par_iter()
        .map_init(LrEngine::new, |engine, &(a, b)| split_with(engine, a, b))
        .collect::<Result<_>>()?;
    let terms = results.iter().flat_map(|(p, _)| &p.classes).map(|c| c.trees as u64).sum();
    Ok(SplittingReport {
        n_max,
        pairs: results.len() as u64,
        terms,
        both_connectors_always: results.iter().all(|(p, _)| p.classes.iter().all(|c| c.trees > 0)),
        tableau_bound_holds: results.iter().flat_map(|(p, _)| &p.classes).all(|c| c.trees as u64 <= c.tableaux),
        multiplicity_free: results.iter().all(|&(_, unit)| unit),
        pairs_detail: results.into_iter().map(|(p, _)| p).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::psi;

    #[test]
    fn single_times_single() {
        let s = pair_split(&BinaryTree::single(), &BinaryTree::single()).unwrap();
        assert_eq!(s.classes.iter().map(|c| (c.connector, c.trees)).collect::<Vec<_>>(), [(1, 1), (-1, 1)]);
    }

    #[test]
    fn two_node_times_single() {
        let left = psi(&"12".parse().unwrap());
        let s = pair_split(&left, &BinaryTree::single()).unwrap();
        let down = s.classes.iter().find(|c| c.connector == -1).unwrap();
        assert_eq!(down.canopy.to_string(), "+-");
        assert_eq!((down.trees, down.tableaux), (2, 2));
    }

    #[test]
    fn sweep_to_six() {
        let r = verify_canopy_splitting(6).unwrap();
        assert!(r.pairs > 0);
        assert!(r.tableau_bound_holds);
        assert!(verify_canopy_splitting(8).is_err());
    }
}
