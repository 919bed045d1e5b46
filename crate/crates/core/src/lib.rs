//! Exact computation in the Malvenuto–Reutenauer algebra of permutations and
//! the Loday–Ronco algebra of planar binary trees, plus a toolkit for Catalan
//! alternative tableaux and the `#` product on their span.
//!
//! Module map:
//!
//! - [`perm`]: permutations, standardization, the `*` product, Up-Down words.
//! - [`tree`]: planar binary trees, the projection `Ψ`, fibers and canopies.
//! - [`lr`]: the Loday–Ronco product computed through fibers.
//! - [`tableau`]: Catalan alternative tableaux, validity and enumeration.
//! - [`hash`]: embeddings and the `#` product of tableaux.
//! - [`lab`]: cross-module census, canopy-splitting sweep and the
//!   correspondence explorer.

pub mod error;
pub mod hash;
pub mod lab;
pub mod lr;
pub mod perm;
pub mod sign;
pub mod sum;
pub mod tableau;
pub mod tree;

pub use error::{Error, Result};
pub use hash::{hash_product, hash_product_sum, hash_product_with, Embedding, EmbeddingStrategy, Strategy, TableauSum};
pub use lr::{canopy_split, lr_product, lr_product_sum, psi_star, TreeSum};
pub use perm::{instantiate, mr_product, standardize, updown, IntWord, Permutation};
pub use sign::{Sign, SignWord};
pub use sum::FormalSum;
pub use tableau::{Cell, Color, Shape, Tableau};
pub use tree::{canopy, enumerate_trees, fiber, psi, BinaryTree, TreeFiber};

/// Binomial coefficient, exact for the small arguments used here.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// The `n`-th Catalan number `C(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> u64 {
    binomial(2 * n, n) / (n + 1)
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}
