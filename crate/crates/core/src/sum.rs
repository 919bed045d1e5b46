//! Finitely supported integer linear combinations.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite integer combination of basis objects.
///
/// Zero coefficients are never stored, and the `BTreeMap` keeps the basis in
/// canonical order, so two equal elements compare equal structurally. All
/// arithmetic is checked and reports [`Error::Overflow`] instead of wrapping.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormalSum<X: Ord> {
    terms: BTreeMap<X, i64>,
}

impl<X: Ord> Default for FormalSum<X> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<X: Ord + Clone> FormalSum<X> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(x: X) -> Self {
        Self::monomial(x, 1)
    }

    pub fn monomial(x: X, coeff: i64) -> Self {
        let mut s = Self::zero();
        if coeff != 0 {
            s.terms.insert(x, coeff);
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of basis elements with a nonzero coefficient.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, x: &X) -> i64 {
        self.terms.get(x).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&X, i64)> {
        self.terms.iter().map(|(x, &c)| (x, c))
    }

    pub fn basis(&self) -> impl Iterator<Item = &X> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, x: X, coeff: i64) -> Result<()> {
        if coeff == 0 {
            return Ok(());
        }
        let updated = self.coeff(&x).checked_add(coeff).ok_or(Error::Overflow)?;
        if updated == 0 {
            self.terms.remove(&x);
        } else {
            self.terms.insert(x, updated);
        }
        Ok(())
    }

    pub fn add_assign(&mut self, other: &Self) -> Result<()> {
        for (x, c) in other.iter() {
            self.add_term(x.clone(), c)?;
        }
        Ok(())
    }

    pub fn add_scaled(&mut self, other: &Self, scale: i64) -> Result<()> {
        for (x, c) in other.iter() {
            self.add_term(x.clone(), c.checked_mul(scale).ok_or(Error::Overflow)?)?;
        }
        Ok(())
    }

    pub fn scale(&self, k: i64) -> Result<Self> {
        let mut out = Self::zero();
        out.add_scaled(self, k)?;
        Ok(out)
    }

    /// Extends a product on basis elements bilinearly.
    pub fn bilinear<Y, Z, F>(&self, other: &FormalSum<Y>, mut product: F) -> Result<FormalSum<Z>>
    where
        Y: Ord + Clone,
        Z: Ord + Clone,
        F: FnMut(&X, &Y) -> Result<FormalSum<Z>>,
    {
        let mut out = FormalSum::zero();
        for (x, a) in self.iter() {
            for (y, b) in other.iter() {
                let ab = a.checked_mul(b).ok_or(Error::Overflow)?;
                out.add_scaled(&product(x, y)?, ab)?;
            }
        }
        Ok(out)
    }

    /// Applies a basis map and collects the images linearly.
    pub fn map_basis<Y: Ord + Clone>(&self, mut f: impl FnMut(&X) -> Y) -> Result<FormalSum<Y>> {
        let mut out = FormalSum::zero();
        for (x, c) in self.iter() {
            out.add_term(f(x), c)?;
        }
        Ok(out)
    }
}

impl<X: Ord + Clone> FromIterator<X> for FormalSum<X> {
    /// Sums the items with coefficient one each.
    ///
    /// Panics on overflow, which needs more than `i64::MAX` repeats.
    fn from_iter<I: IntoIterator<Item = X>>(iter: I) -> Self {
        let mut s = Self::zero();
        for x in iter {
            s.add_term(x, 1).expect("coefficient overflow");
        }
        s
    }
}

impl<X: Ord + Clone> IntoIterator for FormalSum<X> {
    type Item = (X, i64);
    type IntoIter = std::collections::btree_map::IntoIter<X, i64>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<X: Ord + fmt::Display> fmt::Display for FormalSum<X> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (x, &c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match c {
                1 => write!(f, "{x}")?,
                -1 => write!(f, "-{x}")?,
                c => write!(f, "{c}·{x}")?,
            }
        }
        Ok(())
    }
}

impl<X: Ord + fmt::Debug> fmt::Debug for FormalSum<X> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// Parses `"+"`-joined terms, each `basis`, `-basis` or `k·basis` (`k*basis`
/// is accepted too). `"0"` is the zero element.
impl<X> FromStr for FormalSum<X>
where
    X: Ord + Clone + FromStr<Err = Error>,
{
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = Self::zero();
        if s.trim() == "0" {
            return Ok(out);
        }
        let mut offset = 0;
        for raw in s.split('+') {
            let lead = raw.len() - raw.trim_start().len();
            let term = raw.trim();
            let at = offset + lead;
            offset += raw.len() + 1;
            if term.is_empty() {
                return Err(Error::parse(at, "empty term"));
            }
            let (coeff, basis) = match term.find(['·', '*']) {
                Some(i) => {
                    let k: i64 = term[..i]
                        .trim()
                        .parse()
                        .map_err(|_| Error::parse(at, format!("bad coefficient {:?}", &term[..i])))?;
                    let sep = term[i..].chars().next().map_or(1, char::len_utf8);
                    (k, term[i + sep..].trim())
                }
                None => match term.strip_prefix('-') {
                    Some(rest) => (-1, rest.trim()),
                    None => (1, term),
                },
            };
            let x = basis.parse::<X>().map_err(|e| match e {
                Error::Parse { position, message } => Error::parse(at + position, message),
                other => other,
            })?;
            out.add_term(x, coeff)?;
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct WireTerm<X> {
    #[serde(rename = "term")]
    basis: X,
    coeff: i64,
}

#[derive(Serialize, Deserialize)]
struct WireSum<X> {
    terms: Vec<WireTerm<X>>,
}

/// Generic JSON form `{"terms":[{"term":...,"coeff":k},...]}`. Product-specific
/// wire forms (`"tree"`, `"perm"`, `"tableau"` keys) live with their types.
impl<X: Ord + Clone + Serialize> Serialize for FormalSum<X> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        WireSum {
            terms: self.terms.iter().map(|(x, &coeff)| WireTerm { basis: x.clone(), coeff }).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de, X: Ord + Clone + Deserialize<'de>> Deserialize<'de> for FormalSum<X> {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = WireSum::<X>::deserialize(deserializer)?;
        let mut out = Self::zero();
        for t in wire.terms {
            out.add_term(t.basis, t.coeff).map_err(serde::de::Error::custom)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_coefficients_are_dropped() {
        let mut s = FormalSum::term(3u32);
        s.add_term(3, -1).unwrap();
        assert!(s.is_zero());
        assert_eq!(s.to_string(), "0");
    }

    #[test]
    fn overflow_is_an_error() {
        let mut s = FormalSum::monomial(1u32, i64::MAX);
        assert_eq!(s.add_term(1, 1), Err(Error::Overflow));
        assert_eq!(s.scale(2), Err(Error::Overflow));
    }

    #[test]
    fn bilinear_distributes() {
        let a: FormalSum<u32> = [1, 2].into_iter().collect();
        let b = FormalSum::monomial(10u32, 3);
        let p = a.bilinear(&b, |x, y| Ok(FormalSum::term(x + y))).unwrap();
        assert_eq!(p.coeff(&11), 3);
        assert_eq!(p.coeff(&12), 3);
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn display_orders_terms() {
        let mut s = FormalSum::zero();
        s.add_term(5u32, 2).unwrap();
        s.add_term(1u32, -1).unwrap();
        s.add_term(3u32, 1).unwrap();
        assert_eq!(s.to_string(), "-1 + 3 + 2·5");
    }
}
