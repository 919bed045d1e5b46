//! Cross-module checks tying trees, permutations and tableaux together.

mod census;
mod explore;
mod splitting;

pub use census::{shape_census, ShapeCensus, ShapeCount};
pub use explore::{explore_correspondence, Contradiction, MatchReport, ShapeFinding, SizeFinding};
pub use splitting::{pair_split, verify_canopy_splitting, ConnectorClass, PairSplit, SplittingReport};
