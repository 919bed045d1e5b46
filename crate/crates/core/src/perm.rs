//! Permutations, standardization and the Malvenuto–Reutenauer product.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::sign::{Sign, SignWord};
use crate::sum::FormalSum;

/// A permutation of `{1..n}` in one-line notation. `n = 0` is the empty
/// permutation `ε`, the unit of the `*` product.
///
/// The derived order is lexicographic on the one-line word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn new(word: Vec<u32>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &v in &word {
            let i = v as usize;
            if i == 0 || i > n || seen[i] {
                return Err(Error::InvalidWord(format!("{word:?} is not a permutation of 1..{n}")));
            }
            seen[i] = true;
        }
        Ok(Permutation(word))
    }

    pub fn empty() -> Self {
        Permutation(Vec::new())
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u32).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn word(&self) -> &[u32] {
        &self.0
    }

    pub fn into_word(self) -> Vec<u32> {
        self.0
    }

    /// All permutations of size `n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        (1..=n as u32).permutations(n).map(Permutation).collect()
    }

    /// Trusted constructor for words already known to be permutations.
    pub(crate) fn from_word_unchecked(word: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(word.clone()).is_ok());
        Permutation(word)
    }
}

impl fmt::Display for Permutation {
    /// Contiguous digits when `n <= 9`, space separated otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        let sep = if self.0.len() <= 9 { "" } else { " " };
        write!(f, "{}", self.0.iter().join(sep))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let word = parse_word(s)?;
        Permutation::new(word)
    }
}

/// Digits separated by whitespace or commas, or a run of single digits.
fn parse_word(s: &str) -> Result<Vec<u32>> {
    let t = s.trim();
    if t.is_empty() || t == "ε" || t == "e" {
        return Ok(Vec::new());
    }
    let t = t.trim_start_matches('[').trim_end_matches(']');
    if !t.contains([' ', ',', '\t']) {
        return t
            .char_indices()
            .map(|(i, c)| c.to_digit(10).ok_or_else(|| Error::parse(i, format!("unexpected {c:?}"))))
            .collect();
    }
    let mut out = Vec::new();
    let mut pos = 0;
    for part in t.split([' ', ',', '\t']) {
        if !part.is_empty() {
            out.push(part.parse().map_err(|_| Error::parse(pos, format!("bad entry {part:?}")))?);
        }
        pos += part.len() + 1;
    }
    Ok(out)
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        Permutation::new(Vec::<u32>::deserialize(deserializer)?).map_err(serde::de::Error::custom)
    }
}

/// A word of pairwise distinct positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntWord(Vec<u32>);

impl IntWord {
    pub fn new(seq: Vec<u32>) -> Result<Self> {
        let mut sorted = seq.clone();
        sorted.sort_unstable();
        if sorted.first() == Some(&0) {
            return Err(Error::InvalidWord(format!("{seq:?} has a non-positive entry")));
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidWord(format!("{seq:?} has repeated entries")));
        }
        Ok(IntWord(seq))
    }

    pub fn seq(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromStr for IntWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IntWord::new(parse_word(s)?)
    }
}

impl fmt::Display for IntWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.iter().join(" "))
    }
}

/// `Std(u)`: the permutation with the same relative order as `u`.
pub fn standardize(u: &IntWord) -> Permutation {
    Permutation(ranks(u.seq()))
}

/// Ranks of distinct values, 1-based. Callers guarantee distinctness.
pub(crate) fn ranks(seq: &[u32]) -> Vec<u32> {
    let mut order: Vec<usize> = (0..seq.len()).collect();
    order.sort_unstable_by_key(|&i| seq[i]);
    let mut out = vec![0; seq.len()];
    for (rank, i) in order.into_iter().enumerate() {
        out[i] = rank as u32 + 1;
    }
    out
}

/// `σ|A`: the word with letters `A` whose standardization is `σ`.
pub fn instantiate(sigma: &Permutation, letters: &[u32]) -> Result<IntWord> {
    if letters.len() != sigma.len() {
        return Err(Error::InvalidArgument(format!(
            "permutation of size {} needs {} letters, got {}",
            sigma.len(),
            sigma.len(),
            letters.len()
        )));
    }
    let mut sorted = letters.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidArgument(format!("letters {letters:?} are not distinct")));
    }
    IntWord::new(sigma.word().iter().map(|&v| sorted[v as usize - 1]).collect())
}

/// The `*` product: sum over `A ⊔ B = {1..k+l}`, `|A| = k`, of `σ|A · τ|B`.
pub fn mr_product(sigma: &Permutation, tau: &Permutation) -> FormalSum<Permutation> {
    let (k, l) = (sigma.len(), tau.len());
    let n = (k + l) as u32;
    let mut out = FormalSum::zero();
    for left in (1..=n).combinations(k) {
        let mut word = Vec::with_capacity(k + l);
        word.extend(sigma.word().iter().map(|&v| left[v as usize - 1]));
        let right: Vec<u32> = (1..=n).filter(|v| left.binary_search(v).is_err()).collect();
        word.extend(tau.word().iter().map(|&v| right[v as usize - 1]));
        let term = Permutation::from_word_unchecked(word);
        assert_eq!(out.coeff(&term), 0, "repeated term {term} in {sigma} * {tau}");
        out.add_term(term, 1).expect("unit coefficients cannot overflow");
    }
    out
}

/// Bilinear extension of [`mr_product`].
pub fn mr_product_sum(a: &FormalSum<Permutation>, b: &FormalSum<Permutation>) -> Result<FormalSum<Permutation>> {
    a.bilinear(b, |s, t| Ok(mr_product(s, t)))
}

/// The Up-Down sequence: entry `i` is `+1` iff `σ(i+1) > σ(i)`.
pub fn updown(sigma: &Permutation) -> Result<SignWord> {
    if sigma.is_empty() {
        return Err(Error::InvalidArgument("Up-Down sequence of the empty permutation".into()));
    }
    Ok(sigma
        .word()
        .windows(2)
        .map(|w| if w[1] > w[0] { Sign::Up } else { Sign::Down })
        .collect::<Vec<_>>()
        .into())
}
