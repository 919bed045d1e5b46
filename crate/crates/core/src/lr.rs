//! The Loday–Ronco product on planar binary trees.
//!
//! The reference route expands both trees into their fibers, multiplies in
//! the permutation algebra and regroups the result by `Ψ`. Regrouping only
//! succeeds when the expansion is a combination of whole fibers, so every
//! product doubles as a check that the image of `Ψ*` is closed under `*`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::perm::{mr_product, Permutation};
use crate::sign::{Sign, SignWord};
use crate::sum::FormalSum;
use crate::tree::{canopy, fiber, psi, BinaryTree};

pub type TreeSum = FormalSum<BinaryTree>;

/// `Ψ*(T)`: the sum of the fiber of `T`.
pub fn psi_star(tree: &BinaryTree) -> FormalSum<Permutation> {
    fiber(tree).perms.into_iter().collect()
}

/// Product of two trees through the permutation algebra.
pub fn lr_product(left: &BinaryTree, right: &BinaryTree) -> Result<TreeSum> {
    let expanded = psi_star(left).bilinear(&psi_star(right), |s, t| Ok(mr_product(s, t)))?;
    regroup(&expanded).map_err(|detail| Error::ClosureViolation {
        left: left.to_string(),
        right: right.to_string(),
        detail,
    })
}

/// Writes `sum` as `Σ c_T Ψ*(T)`; fails if some fiber is hit unevenly.
fn regroup(sum: &FormalSum<Permutation>) -> std::result::Result<TreeSum, String> {
    let mut groups: BTreeMap<BinaryTree, Vec<(&Permutation, i64)>> = BTreeMap::new();
    for (sigma, c) in sum.iter() {
        groups.entry(psi(sigma)).or_default().push((sigma, c));
    }
    let mut out = TreeSum::zero();
    for (tree, members) in groups {
        let full = fiber(&tree);
        let c = members[0].1;
        if members.len() != full.len() || members.iter().any(|&(_, k)| k != c) {
            return Err(format!(
                "tree {tree} receives {} of its {} fiber elements with coefficients {:?}",
                members.len(),
                full.len(),
                members.iter().map(|&(_, k)| k).collect::<Vec<_>>()
            ));
        }
        out.add_term(tree, c).map_err(|e| e.to_string())?;
    }
    Ok(out)
}

/// Bilinear extension of [`lr_product`].
pub fn lr_product_sum(a: &TreeSum, b: &TreeSum) -> Result<TreeSum> {
    a.bilinear(b, lr_product)
}

/// Splits `T1 * T2` by the sign joining `canopy(T1)` and `canopy(T2)`.
///
/// Both keys are always present (possibly with a zero sum). A term whose
/// canopy is neither `Q1·(+1)·Q2` nor `Q1·(-1)·Q2` is reported as a
/// [`Error::SplittingViolation`].
pub fn canopy_split(left: &BinaryTree, right: &BinaryTree) -> Result<BTreeMap<SignWord, TreeSum>> {
    let product = lr_product(left, right)?;
    split_by_canopy(left, right, &product)
}

pub(crate) fn split_by_canopy(
    left: &BinaryTree,
    right: &BinaryTree,
    product: &TreeSum,
) -> Result<BTreeMap<SignWord, TreeSum>> {
    if left.is_leaf() || right.is_leaf() {
        return Err(Error::InvalidArgument("canopy split needs two non-empty trees".into()));
    }
    let (q1, q2) = (canopy(left)?, canopy(right)?);
    let mut classes: BTreeMap<SignWord, TreeSum> =
        [Sign::Up, Sign::Down].into_iter().map(|s| (q1.join(s, &q2), TreeSum::zero())).collect();
    for (tree, c) in product.iter() {
        let q = canopy(tree)?;
        match classes.get_mut(&q) {
            Some(class) => class.add_term(tree.clone(), c)?,
            None => {
                return Err(Error::SplittingViolation {
                    left: left.to_string(),
                    right: right.to_string(),
                    term: tree.to_string(),
                    canopy: q.to_string(),
                })
            }
        }
    }
    Ok(classes)
}

/// True when every coefficient is `1`.
pub fn is_multiplicity_free<X: Ord + Clone>(sum: &FormalSum<X>) -> bool {
    sum.iter().all(|(_, c)| c == 1)
}

/// Memoized product engine.
///
/// Caches fibers of the factors and whole products; groups the expansion with
/// hashing and divides by the hook-length fiber size instead of regenerating
/// each target fiber. Must agree term for term with [`lr_product`].
#[derive(Default)]
pub struct LrEngine {
    fibers: HashMap<BinaryTree, Arc<Vec<Permutation>>>,
    products: HashMap<(BinaryTree, BinaryTree), TreeSum>,
}

impl LrEngine {
    pub fn new() -> Self {
        Self::default()
    }

    fn fiber_of(&mut self, tree: &BinaryTree) -> Arc<Vec<Permutation>> {
        self.fibers
            .entry(tree.clone())
            .or_insert_with(|| Arc::new(fiber(tree).perms.into_iter().collect()))
            .clone()
    }

    pub fn product(&mut self, left: &BinaryTree, right: &BinaryTree) -> Result<TreeSum> {
        let key = (left.clone(), right.clone());
        if let Some(hit) = self.products.get(&key) {
            return Ok(hit.clone());
        }
        let (zl, zr) = (self.fiber_of(left), self.fiber_of(right));
        let mut counts: HashMap<BinaryTree, u64> = HashMap::new();
        for s in zl.iter() {
            for t in zr.iter() {
                for (sigma, _) in mr_product(s, t).iter() {
                    *counts.entry(psi(sigma)).or_default() += 1;
                }
            }
        }
        let mut out = TreeSum::zero();
        for (tree, m) in counts {
            let size = tree.fiber_size();
            if m % size != 0 {
                return Err(Error::ClosureViolation {
                    left: left.to_string(),
                    right: right.to_string(),
                    detail: format!("tree {tree} hit {m} times, fiber size {size}"),
                });
            }
            out.add_term(tree, i64::try_from(m / size).map_err(|_| Error::Overflow)?)?;
        }
        self.products.insert(key, out.clone());
        Ok(out)
    }

    pub fn product_sum(&mut self, a: &TreeSum, b: &TreeSum) -> Result<TreeSum> {
        a.bilinear(b, |x, y| self.product(x, y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::enumerate_trees;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn tp(s: &str) -> BinaryTree {
        psi(&p(s))
    }

    fn trees(words: &[&str]) -> TreeSum {
        words.iter().map(|w| tp(w)).collect()
    }

    #[test]
    fn psi_star_examples() {
        assert_eq!(psi_star(&BinaryTree::single()), FormalSum::term(p("1")));
        assert_eq!(psi_star(&tp("213")), [p("213"), p("312")].into_iter().collect());
        assert_eq!(psi_star(&tp("132")), FormalSum::term(p("132")));
    }

    #[test]
    fn product_examples() {
        let single = BinaryTree::single();
        assert_eq!(lr_product(&single, &single).unwrap(), trees(&["12", "21"]));
        assert_eq!(lr_product(&tp("12"), &single).unwrap(), trees(&["123", "132", "231"]));
        let prod = lr_product(&single, &tp("132")).unwrap();
        assert_eq!(prod, trees(&["1243", "2143"]));
        assert_eq!(tp("2143").fiber_size(), 3);
        assert_eq!(fiber(&tp("2143")).perms, [p("2143"), p("3142"), p("4132")].into_iter().collect());
    }

    #[test]
    fn sum_examples() {
        let single = BinaryTree::single();
        let s = TreeSum::term(single.clone());
        assert!(lr_product_sum(&trees(&["1", "12"]), &TreeSum::zero()).unwrap().is_zero());
        let doubled = lr_product_sum(&s.scale(2).unwrap(), &s).unwrap();
        assert_eq!(doubled, trees(&["12", "21"]).scale(2).unwrap());
        let mut expected = trees(&["12", "21"]);
        expected.add_assign(&trees(&["123", "132", "231"])).unwrap();
        assert_eq!(lr_product_sum(&trees(&["1", "12"]), &s).unwrap(), expected);
    }

    #[test]
    fn split_examples() {
        let single = BinaryTree::single();
        let key = |s: &str| s.parse::<SignWord>().unwrap();
        let a = canopy_split(&single, &single).unwrap();
        assert_eq!(a[&key("+")], trees(&["12"]));
        assert_eq!(a[&key("-")], trees(&["21"]));
        let b = canopy_split(&tp("12"), &single).unwrap();
        assert_eq!(b[&key("++")], trees(&["123"]));
        assert_eq!(b[&key("+-")], trees(&["132", "231"]));
        let c = canopy_split(&single, &tp("132")).unwrap();
        assert_eq!(c[&key("++-")], trees(&["1243"]));
        assert_eq!(c[&key("-+-")], trees(&["2143"]));
        assert!(canopy_split(&BinaryTree::Leaf, &single).is_err());
    }

    #[test]
    fn leaf_is_a_unit() {
        for n in 0..=4 {
            for t in enumerate_trees(n) {
                assert_eq!(lr_product(&BinaryTree::Leaf, &t).unwrap(), TreeSum::term(t.clone()));
                assert_eq!(lr_product(&t, &BinaryTree::Leaf).unwrap(), TreeSum::term(t.clone()));
            }
        }
    }

    #[test]
    fn uneven_fiber_hits_are_rejected() {
        // half of the fiber of psi(213) is not a combination of fibers
        let partial = FormalSum::term(p("213"));
        assert!(regroup(&partial).is_err());
        assert!(regroup(&psi_star(&tp("213"))).is_ok());
    }

    #[test]
    fn engine_agrees_with_reference() {
        let mut engine = LrEngine::new();
        for n1 in 0..=3 {
            for n2 in 0..=(5 - n1) {
                for a in enumerate_trees(n1) {
                    for b in enumerate_trees(n2) {
                        assert_eq!(engine.product(&a, &b).unwrap(), lr_product(&a, &b).unwrap());
                    }
                }
            }
        }
    }
}
