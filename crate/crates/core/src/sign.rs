//! `±1` words: Up-Down sequences of permutations, canopies of trees and
//! tableau shapes all live here.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// `Up` is `+1`, `Down` is `-1`. `Up` sorts first, matching `'+' < '-'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Up,
    Down,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Up => 1,
            Sign::Down => -1,
        }
    }

    pub fn from_value(v: i64) -> Result<Self> {
        match v {
            1 => Ok(Sign::Up),
            -1 => Ok(Sign::Down),
            other => Err(Error::InvalidArgument(format!("sign must be +1 or -1, got {other}"))),
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Up => Sign::Down,
            Sign::Down => Sign::Up,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Up => '+',
            Sign::Down => '-',
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignWord(Vec<Sign>);

impl SignWord {
    pub fn new(signs: Vec<Sign>) -> Self {
        SignWord(signs)
    }

    pub fn empty() -> Self {
        SignWord(Vec::new())
    }

    pub fn from_values(values: &[i64]) -> Result<Self> {
        values.iter().map(|&v| Sign::from_value(v)).collect::<Result<Vec<_>>>().map(SignWord)
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> Vec<i8> {
        self.0.iter().map(|s| s.value()).collect()
    }

    /// `self · [link] · right`.
    pub fn join(&self, link: Sign, right: &SignWord) -> SignWord {
        let mut v = Vec::with_capacity(self.len() + right.len() + 1);
        v.extend_from_slice(&self.0);
        v.push(link);
        v.extend_from_slice(&right.0);
        SignWord(v)
    }

    pub fn concat(&self, right: &SignWord) -> SignWord {
        SignWord(self.0.iter().chain(&right.0).copied().collect())
    }

    /// All `2^m` words of length `m`, in canonical (lexicographic) order.
    pub fn all(m: usize) -> Vec<SignWord> {
        (0u64..1 << m)
            .map(|bits| {
                SignWord(
                    (0..m)
                        .map(|i| if bits >> (m - 1 - i) & 1 == 0 { Sign::Up } else { Sign::Down })
                        .collect(),
                )
            })
            .collect()
    }
}

impl From<Vec<Sign>> for SignWord {
    fn from(v: Vec<Sign>) -> Self {
        SignWord(v)
    }
}

/// `+-+` style; the empty word prints as `()`.
impl fmt::Display for SignWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "()");
        }
        self.0.iter().try_for_each(|s| write!(f, "{}", s.symbol()))
    }
}

/// Accepts `+-+`, `()`/`e`/empty for the empty word, or comma separated
/// `1,-1,1` (optionally bracketed).
impl FromStr for SignWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || t == "()" || t == "e" || t == "ε" || t == "[]" {
            return Ok(SignWord::empty());
        }
        if t.contains(',') || t.contains('1') {
            let inner = t.trim_start_matches(['[', '(']).trim_end_matches([']', ')']);
            return inner
                .split(',')
                .enumerate()
                .map(|(i, part)| {
                    let v: i64 = part
                        .trim()
                        .parse()
                        .map_err(|_| Error::parse(i, format!("bad sign entry {part:?}")))?;
                    Sign::from_value(v)
                })
                .collect::<Result<Vec<_>>>()
                .map(SignWord);
        }
        t.char_indices()
            .map(|(i, c)| match c {
                '+' => Ok(Sign::Up),
                '-' | '−' => Ok(Sign::Down),
                other => Err(Error::parse(i, format!("unexpected {other:?} in sign word"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(SignWord)
    }
}

impl Serialize for SignWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.values().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SignWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<i64>::deserialize(deserializer)?;
        SignWord::from_values(&raw).map_err(serde::de::Error::custom)
    }
}
