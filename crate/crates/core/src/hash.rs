//! The `#` product on the span of Catalan alternative tableaux.
//!
//! `C1 # C2` is the sum of all valid tableaux of shape `shape(C1)·shape(C2)`
//! whose cells coming from `C1` and `C2` hold exactly the dots (or the
//! emptiness) they held in the factors. The remaining cells are filled in
//! every valid way. Where the cells of `C2` land is decided by an
//! [`EmbeddingStrategy`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sign::Sign;
use crate::sum::FormalSum;
use crate::tableau::{complete, enumerate_all, Cell, Shape, Slot, Tableau};

pub type TableauSum = FormalSum<Tableau>;

/// Placement of the right factor's cells inside a combined shape.
///
/// The left factor always sits at its own positions.
pub trait EmbeddingStrategy: Send + Sync {
    fn name(&self) -> &'static str;

    /// Image of `cell` (a cell of the right factor, in its own numbering)
    /// when the right factor's steps occupy positions `offset + 1 ..` of
    /// `combined`.
    fn place_right(&self, combined: &Shape, offset: usize, cell: Cell) -> Cell;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Both factors keep their positions; the rectangle between them is free.
    #[default]
    Identity,
    /// The right factor's `j`-th row is moved to the `j`-th row step of the
    /// combined shape; its columns keep their positions.
    Shift,
}

impl Strategy {
    pub const ALL: [Strategy; 2] = [Strategy::Identity, Strategy::Shift];
}

impl EmbeddingStrategy for Strategy {
    fn name(&self) -> &'static str {
        match self {
            Strategy::Identity => "identity",
            Strategy::Shift => "shift",
        }
    }

    fn place_right(&self, combined: &Shape, offset: usize, cell: Cell) -> Cell {
        let col = cell.col + offset;
        match self {
            Strategy::Identity => Cell::new(cell.row + offset, col),
            Strategy::Shift => {
                let rank = (offset + 1..=offset + cell.row).filter(|&p| combined.step(p) == Some(Sign::Up)).count();
                Cell::new(combined.rows()[rank - 1], col)
            }
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identity" => Ok(Strategy::Identity),
            "shift" => Ok(Strategy::Shift),
            other => Err(Error::InvalidArgument(format!("unknown strategy {other:?}"))),
        }
    }
}

/// A combined shape with the factors' cells pinned and the rest free.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub combined_shape: Shape,
    pub fixed: BTreeMap<Cell, Slot>,
    pub free: BTreeSet<Cell>,
}

impl Embedding {
    /// All valid fillings of the free cells, sorted.
    pub fn completions(&self) -> Vec<Tableau> {
        complete(&self.combined_shape, &self.fixed)
    }
}

/// `embed_with` under the default strategy, without a linking step.
pub fn embed(left: &Tableau, right: &Tableau) -> Embedding {
    embed_with(&Strategy::default(), left, None, right)
}

/// Lays out `left · [link] · right`. The optional `link` step belongs to
/// neither factor; all of its cells are free.
pub fn embed_with(strategy: &dyn EmbeddingStrategy, left: &Tableau, link: Option<Sign>, right: &Tableau) -> Embedding {
    let word = match link {
        Some(s) => left.shape().word().join(s, right.shape().word()),
        None => left.shape().word().concat(right.shape().word()),
    };
    let combined = Shape::new(word);
    let offset = left.size() + usize::from(link.is_some());
    let mut fixed = BTreeMap::new();
    for cell in left.shape().cells() {
        fixed.insert(cell, left.slot(cell));
    }
    for cell in right.shape().cells() {
        let image = strategy.place_right(&combined, offset, cell);
        debug_assert!(combined.contains(image));
        let previous = fixed.insert(image, right.slot(cell));
        assert!(previous.is_none(), "strategy {} maps two cells onto {image:?}", strategy.name());
    }
    let free = combined.cells().into_iter().filter(|c| !fixed.contains_key(c)).collect();
    Embedding { combined_shape: combined, fixed, free }
}

/// `C1 # C2` under the default strategy.
pub fn hash_product(left: &Tableau, right: &Tableau) -> TableauSum {
    hash_product_with(&Strategy::default(), left, right)
}

pub fn hash_product_with(strategy: &dyn EmbeddingStrategy, left: &Tableau, right: &Tableau) -> TableauSum {
    let terms = embed_with(strategy, left, None, right).completions();
    let count = terms.len();
    let sum: TableauSum = terms.into_iter().collect();
    assert_eq!(sum.len(), count, "colliding terms in {left} # {right}");
    sum
}

/// Bilinear extension of [`hash_product`].
pub fn hash_product_sum(a: &TableauSum, b: &TableauSum) -> Result<TableauSum> {
    hash_product_sum_with(&Strategy::default(), a, b)
}

pub fn hash_product_sum_with(strategy: &dyn EmbeddingStrategy, a: &TableauSum, b: &TableauSum) -> Result<TableauSum> {
    a.bilinear(b, |x, y| Ok(hash_product_with(strategy, x, y)))
}

/// A triple on which the two bracketings differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssociativityWitness {
    pub first: Tableau,
    pub second: Tableau,
    pub third: Tableau,
    pub left_bracketing_terms: usize,
    pub right_bracketing_terms: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssociativityReport {
    pub strategy: String,
    pub max_total_size: usize,
    pub triples: u64,
    pub failures: u64,
    pub first_failure: Option<AssociativityWitness>,
}

impl AssociativityReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Checks `(a # b) # c = a # (b # c)` for every triple of valid tableaux with
/// total size at most `max_total`.
pub fn associativity_sweep(strategy: Strategy, max_total: usize) -> AssociativityReport {
    let by_size: Vec<Vec<Tableau>> = (0..=max_total).map(enumerate_all).collect();
    let mut triples = Vec::new();
    for s1 in 0..=max_total {
        for s2 in 0..=max_total - s1 {
            for s3 in 0..=max_total - s1 - s2 {
                for a in &by_size[s1] {
                    for b in &by_size[s2] {
                        triples.push((a, b, s3));
                    }
                }
            }
        }
    }
    struct Tally {
        checked: u64,
        failures: u64,
        witness: Option<AssociativityWitness>,
    }
    let tallies: Vec<Tally> = triples
        .par_iter()
        .map(|&(a, b, s3)| {
            let ab = hash_product_with(&strategy, a, b);
            let mut tally = Tally { checked: 0, failures: 0, witness: None };
            for c in &by_size[s3] {
                tally.checked += 1;
                let left = hash_product_sum_with(&strategy, &ab, &TableauSum::term(c.clone())).expect("small coefficients");
                let bc = hash_product_with(&strategy, b, c);
                let right = hash_product_sum_with(&strategy, &TableauSum::term(a.clone()), &bc).expect("small coefficients");
                if left != right {
                    tally.failures += 1;
                    tally.witness.get_or_insert_with(|| AssociativityWitness {
                        first: a.clone(),
                        second: b.clone(),
                        third: c.clone(),
                        left_bracketing_terms: left.len(),
                        right_bracketing_terms: right.len(),
                    });
                }
            }
            tally
        })
        .collect();
    AssociativityReport {
        strategy: strategy.name().to_string(),
        max_total_size: max_total,
        triples: tallies.iter().map(|t| t.checked).sum(),
        failures: tallies.iter().map(|t| t.failures).sum(),
        first_failure: tallies.into_iter().find_map(|t| t.witness),
    }
}

/// Associativity sweeps for every built-in strategy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyComparison {
    pub default_strategy: String,
    pub reports: Vec<AssociativityReport>,
}

pub fn compare_strategies(max_total: usize) -> StrategyComparison {
    StrategyComparison {
        default_strategy: Strategy::default().name().to_string(),
        reports: Strategy::ALL.iter().map(|&s| associativity_sweep(s, max_total)).collect(),
    }
}

/// Sizes of the terms of a sum.
pub fn sizes(sum: &TableauSum) -> BTreeSet<usize> {
    sum.basis().map(Tableau::size).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tab(s: &str) -> Tableau {
        s.parse().unwrap()
    }

    fn sum(items: &[&str]) -> TableauSum {
        items.iter().map(|s| tab(s)).collect()
    }

    #[test]
    fn embed_examples() {
        let c = tab("+-+-:B@1,2;B@1,4;R@3,4");
        let e = embed(&Tableau::empty(), &c);
        assert!(e.free.is_empty());
        assert_eq!(e.fixed, c.shape().cells().into_iter().map(|x| (x, c.slot(x))).collect());

        let red = tab("+-:R@1,2");
        let e = embed_with(&Strategy::Shift, &red, None, &red);
        assert_eq!(e.combined_shape.to_string(), "+-+-");
        assert_eq!(e.fixed, [(Cell::new(1, 2), Slot::Red), (Cell::new(1, 4), Slot::Red)].into());
        assert_eq!(e.free, [Cell::new(3, 4)].into());

        let e = embed(&red, &red);
        assert_eq!(e.fixed, [(Cell::new(1, 2), Slot::Red), (Cell::new(3, 4), Slot::Red)].into());
        assert_eq!(e.free, [Cell::new(1, 4)].into());

        for strategy in Strategy::ALL {
            let e = embed_with(&strategy, &tab("+"), None, &tab("-"));
            assert!(e.fixed.is_empty());
            assert_eq!(e.free, [Cell::new(1, 2)].into());
        }
    }

    #[test]
    fn product_examples() {
        let c = tab("+-+-:B@1,2;B@1,4;R@3,4");
        assert_eq!(hash_product(&Tableau::empty(), &c), TableauSum::term(c.clone()));
        assert_eq!(hash_product(&c, &Tableau::empty()), TableauSum::term(c.clone()));
        assert_eq!(hash_product(&tab("+"), &tab("-")), sum(&["+-:R@1,2", "+-:B@1,2"]));

        let red = tab("+-:R@1,2");
        // shift pins a second red into row 1, right of the first
        assert!(hash_product_with(&Strategy::Shift, &red, &red).is_zero());
        assert_eq!(hash_product(&red, &red), sum(&["+-+-:R@1,2;R@3,4"]));
    }

    #[test]
    fn sum_examples() {
        let c = tab("+-:B@1,2");
        let s = sum(&["+", "-"]);
        assert!(hash_product_sum(&s, &TableauSum::zero()).unwrap().is_zero());
        let scaled = hash_product_sum(&TableauSum::monomial(c.clone(), 3), &s).unwrap();
        assert_eq!(scaled, hash_product_sum(&TableauSum::term(c.clone()), &s).unwrap().scale(3).unwrap());
        let mut expected = hash_product(&tab("+"), &c);
        expected.add_assign(&hash_product(&tab("-"), &c)).unwrap();
        assert_eq!(hash_product_sum(&s, &TableauSum::term(c)).unwrap(), expected);
    }

    #[test]
    fn terms_restrict_to_factors() {
        for a in enumerate_all(3) {
            for b in enumerate_all(2) {
                for t in hash_product(&a, &b).basis() {
                    assert_eq!(t.restrict(1, a.size()), a);
                    assert_eq!(t.restrict(a.size() + 1, b.size()), b);
                }
            }
        }
    }

    #[test]
    fn small_sweeps() {
        assert!(associativity_sweep(Strategy::Identity, 4).passed());
        let shift = associativity_sweep(Strategy::Shift, 3);
        assert!(!shift.passed());
        let w = shift.first_failure.unwrap();
        assert_ne!(w.left_bracketing_terms, w.right_bracketing_terms);
    }

    #[test]
    fn strategy_names_round_trip() {
        for s in Strategy::ALL {
            assert_eq!(s.name().parse::<Strategy>().unwrap(), s);
        }
        assert!("diagonal".parse::<Strategy>().is_err());
    }
}
