use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sign::SignWord;
use crate::tableau::{count_tableaux, Shape};
use crate::tree::{canopy, enumerate_trees};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeCount {
    pub shape: SignWord,
    pub trees: u64,
    pub tableaux: u64,
}

/// Per-shape tree and tableau counts for trees of size `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeCensus {
    pub n: usize,
    pub shapes: Vec<ShapeCount>,
    pub total_trees: u64,
    pub total_tableaux: u64,
}

impl ShapeCensus {
    pub fn all_equal(&self) -> bool {
        self.shapes.iter().all(|s| s.trees == s.tableaux)
    }

    pub fn get(&self, shape: &SignWord) -> Option<&ShapeCount> {
        self.shapes.iter().find(|s| &s.shape == shape)
    }
}

/// Counts trees of size `n` by canopy and valid tableaux by shape, for every
/// word in `{±1}^(n-1)`.
pub fn shape_census(n: usize) -> Result<ShapeCensus> {
    if !(1..=10).contains(&n) {
        return Err(Error::InvalidArgument(format!("census size must be in 1..=10, got {n}")));
    }
    let mut trees: BTreeMap<SignWord, u64> = SignWord::all(n - 1).into_iter().map(|w| (w, 0)).collect();
    for t in enumerate_trees(n) {
        *trees.get_mut(&canopy(&t)?).expect("canopy has length n - 1") += 1;
    }
    let shapes: Vec<ShapeCount> = trees
        .into_par_iter()
        .map(|(shape, trees)| {
            let tableaux = count_tableaux(&Shape::new(shape.clone()));
            ShapeCount { shape, trees, tableaux }
        })
        .collect();
    Ok(ShapeCensus {
        n,
        total_trees: shapes.iter().map(|s| s.trees).sum(),
        total_tableaux: shapes.iter().map(|s| s.tableaux).sum(),
        shapes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_two() {
        let c = shape_census(2).unwrap();
        assert_eq!(c.shapes.len(), 2);
        assert!(c.shapes.iter().all(|s| s.trees == 1 && s.tableaux == 1));
    }

    #[test]
    fn sizes_four_and_five() {
        let c = shape_census(4).unwrap();
        assert_eq!((c.total_trees, c.total_tableaux), (14, 14));
        assert!(c.all_equal());
        // a length-4 shape belongs to trees of size 5
        let c = shape_census(5).unwrap();
        let s = c.get(&"+-+-".parse().unwrap()).unwrap();
        assert_eq!((s.trees, s.tableaux), (5, 5));
        assert_eq!((c.total_trees, c.total_tableaux), (42, 42));
    }

    #[test]
    fn bounds() {
        assert!(shape_census(0).is_err());
        assert!(shape_census(11).is_err());
    }
}
