//! Planar binary trees, the projection `Ψ` from permutations, fibers and
//! canopies.
//!
//! `Ψ` builds the increasing binary tree of a permutation (minimum at the
//! root, prefix to the left, suffix to the right, so the in-order reading
//! of labels gives back the permutation) and forgets the labels.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::sign::{Sign, SignWord};

/// A planar binary tree; its size is the number of internal nodes.
///
/// The derived order (`Node` before `Leaf`) is lexicographic order on the
/// string encoding, because `'(' < '.'` and encodings are prefix-free.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BinaryTree {
    Node(Box<BinaryTree>, Box<BinaryTree>),
    Leaf,
}

impl BinaryTree {
    pub fn node(left: BinaryTree, right: BinaryTree) -> Self {
        BinaryTree::Node(Box::new(left), Box::new(right))
    }

    /// The tree with one internal node.
    pub fn single() -> Self {
        Self::node(BinaryTree::Leaf, BinaryTree::Leaf)
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, BinaryTree::Leaf)
    }

    pub fn size(&self) -> usize {
        match self {
            BinaryTree::Leaf => 0,
            BinaryTree::Node(l, r) => l.size() + r.size() + 1,
        }
    }

    pub fn children(&self) -> Option<(&BinaryTree, &BinaryTree)> {
        match self {
            BinaryTree::Leaf => None,
            BinaryTree::Node(l, r) => Some((l, r)),
        }
    }

    /// `|Z_T| = n! / ∏ size(subtree(v))` over internal nodes `v`: the number
    /// of increasing labelings of the tree.
    pub fn fiber_size(&self) -> u64 {
        fn walk(t: &BinaryTree, hooks: &mut u64) -> u64 {
            match t {
                BinaryTree::Leaf => 0,
                BinaryTree::Node(l, r) => {
                    let s = walk(l, hooks) + walk(r, hooks) + 1;
                    *hooks *= s;
                    s
                }
            }
        }
        let mut hooks = 1;
        let n = walk(self, &mut hooks);
        crate::factorial(n) / hooks
    }

    pub fn encode(&self) -> String {
        self.to_string()
    }

    pub fn decode(s: &str) -> Result<Self> {
        s.parse()
    }
}

impl fmt::Display for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BinaryTree::Leaf => write!(f, "."),
            BinaryTree::Node(l, r) => write!(f, "({l}{r})"),
        }
    }
}

impl fmt::Debug for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Decodes `.` / `(LR)`; surrounding whitespace is ignored.
impl FromStr for BinaryTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bytes = s.trim().as_bytes();
        let offset = s.len() - s.trim_start().len();
        let mut pos = 0;
        let tree = parse_tree(bytes, &mut pos).map_err(|e| match e {
            Error::Parse { position, message } => Error::parse(position + offset, message),
            other => other,
        })?;
        if pos != bytes.len() {
            return Err(Error::parse(pos + offset, "trailing input after tree"));
        }
        Ok(tree)
    }
}

fn parse_tree(bytes: &[u8], pos: &mut usize) -> Result<BinaryTree> {
    match bytes.get(*pos) {
        Some(b'.') => {
            *pos += 1;
            Ok(BinaryTree::Leaf)
        }
        Some(b'(') => {
            *pos += 1;
            let left = parse_tree(bytes, pos)?;
            let right = parse_tree(bytes, pos)?;
            match bytes.get(*pos) {
                Some(b')') => {
                    *pos += 1;
                    Ok(BinaryTree::node(left, right))
                }
                Some(&c) => Err(Error::parse(*pos, format!("expected ')', found {:?}", c as char))),
                None => Err(Error::parse(*pos, "expected ')', found end of input")),
            }
        }
        Some(&c) => Err(Error::parse(*pos, format!("expected '.' or '(', found {:?}", c as char))),
        None => Err(Error::parse(*pos, "unexpected end of input")),
    }
}

/// JSON form: `null` for a leaf, `[left, right]` for a node.
impl Serialize for BinaryTree {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            BinaryTree::Leaf => serializer.serialize_none(),
            BinaryTree::Node(l, r) => (l, r).serialize(serializer),
        }
    }
}

impl<'de> Deserialize<'de> for BinaryTree {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        Ok(match Option::<(BinaryTree, BinaryTree)>::deserialize(deserializer)? {
            None => BinaryTree::Leaf,
            Some((l, r)) => BinaryTree::node(l, r),
        })
    }
}

/// All trees with `n` internal nodes, sorted by encoding.
pub fn enumerate_trees(n: usize) -> Vec<BinaryTree> {
    trees_up_to(n).pop().unwrap_or_default()
}

/// `result[k]` holds the sorted trees of size `k`, for `k = 0..=n`.
pub fn trees_up_to(n: usize) -> Vec<Vec<BinaryTree>> {
    let mut by_size: Vec<Vec<BinaryTree>> = vec![vec![BinaryTree::Leaf]];
    for size in 1..=n {
        let mut level = Vec::new();
        for k in 0..size {
            for l in &by_size[k] {
                for r in &by_size[size - 1 - k] {
                    level.push(BinaryTree::node(l.clone(), r.clone()));
                }
            }
        }
        level.sort_unstable();
        by_size.push(level);
    }
    by_size
}

/// `Ψ(σ)`: split at the minimum, recurse on the prefix and suffix.
///
/// Subwords are not re-standardized; only relative order matters.
pub fn psi(sigma: &Permutation) -> BinaryTree {
    fn build(w: &[u32]) -> BinaryTree {
        match w.iter().position_min() {
            None => BinaryTree::Leaf,
            Some(i) => BinaryTree::node(build(&w[..i]), build(&w[i + 1..])),
        }
    }
    build(sigma.word())
}

/// A tree together with its fiber `Z_T = {σ : Ψ(σ) = T}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeFiber {
    pub tree: BinaryTree,
    pub perms: BTreeSet<Permutation>,
}

impl TreeFiber {
    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }
}

/// Generates `Z_T` directly: for `T = (L, R)` of size `n`, every `u·1·v`
/// whose letters split `{2..n}`, with `Std(u) ∈ Z_L` and `Std(v) ∈ Z_R`.
pub fn fiber(tree: &BinaryTree) -> TreeFiber {
    TreeFiber { tree: tree.clone(), perms: fiber_words(tree).into_iter().map(Permutation::from_word_unchecked).collect() }
}

fn fiber_words(tree: &BinaryTree) -> Vec<Vec<u32>> {
    let (l, r) = match tree.children() {
        None => return vec![Vec::new()],
        Some(c) => c,
    };
    let n = tree.size() as u32;
    let left_size = l.size();
    let (zl, zr) = (fiber_words(l), fiber_words(r));
    let mut out = Vec::with_capacity(zl.len() * zr.len());
    for left_letters in (2..=n).combinations(left_size) {
        let right_letters: Vec<u32> = (2..=n).filter(|v| left_letters.binary_search(v).is_err()).collect();
        for u in &zl {
            for v in &zr {
                let mut w = Vec::with_capacity(n as usize);
                w.extend(u.iter().map(|&x| left_letters[x as usize - 1]));
                w.push(1);
                w.extend(v.iter().map(|&x| right_letters[x as usize - 1]));
                out.push(w);
            }
        }
    }
    out
}

/// The canopy: `canopy(L) · [-1 if L is a node] · [+1 if R is a node] · canopy(R)`.
///
/// Equal to the Up-Down sequence of every permutation in the fiber.
pub fn canopy(tree: &BinaryTree) -> Result<SignWord> {
    fn walk(t: &BinaryTree, out: &mut Vec<Sign>) {
        if let BinaryTree::Node(l, r) = t {
            if !l.is_leaf() {
                walk(l, out);
                out.push(Sign::Down);
            }
            if !r.is_leaf() {
                out.push(Sign::Up);
                walk(r, out);
            }
        }
    }
    if tree.is_leaf() {
        return Err(Error::InvalidArgument("canopy of the empty tree".into()));
    }
    let mut out = Vec::with_capacity(tree.size().saturating_sub(1));
    walk(tree, &mut out);
    Ok(out.into())
}
