//! JSON shapes emitted by the CLI. Each one parses back to an equal value.

use serde::{Deserialize, Serialize};

use lrtab::{BinaryTree, Error, FormalSum, Permutation, SignWord, Tableau};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermTerm {
    pub perm: Permutation,
    pub coeff: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeTerm {
    pub tree: String,
    pub coeff: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableauTerm {
    pub tableau: Tableau,
    pub coeff: i64,
}

/// `{"terms":[...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Terms<T> {
    pub terms: Vec<T>,
}

impl From<&FormalSum<Permutation>> for Terms<PermTerm> {
    fn from(s: &FormalSum<Permutation>) -> Self {
        Terms { terms: s.iter().map(|(p, coeff)| PermTerm { perm: p.clone(), coeff }).collect() }
    }
}

impl From<&FormalSum<BinaryTree>> for Terms<TreeTerm> {
    fn from(s: &FormalSum<BinaryTree>) -> Self {
        Terms { terms: s.iter().map(|(t, coeff)| TreeTerm { tree: t.encode(), coeff }).collect() }
    }
}

impl From<&FormalSum<Tableau>> for Terms<TableauTerm> {
    fn from(s: &FormalSum<Tableau>) -> Self {
        Terms { terms: s.iter().map(|(t, coeff)| TableauTerm { tableau: t.clone(), coeff }).collect() }
    }
}

impl Terms<PermTerm> {
    pub fn to_sum(&self) -> Result<FormalSum<Permutation>, Error> {
        let mut s = FormalSum::zero();
        for t in &self.terms {
            s.add_term(t.perm.clone(), t.coeff)?;
        }
        Ok(s)
    }
}

impl Terms<TreeTerm> {
    pub fn to_sum(&self) -> Result<FormalSum<BinaryTree>, Error> {
        let mut s = FormalSum::zero();
        for t in &self.terms {
            s.add_term(t.tree.parse()?, t.coeff)?;
        }
        Ok(s)
    }
}

impl Terms<TableauTerm> {
    pub fn to_sum(&self) -> Result<FormalSum<Tableau>, Error> {
        let mut s = FormalSum::zero();
        for t in &self.terms {
            s.add_term(t.tableau.clone(), t.coeff)?;
        }
        Ok(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeList {
    pub n: usize,
    pub count: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trees: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableauList {
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape: Option<SignWord>,
    pub count: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tableaux: Option<Vec<Tableau>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberOut {
    pub tree: String,
    pub size: usize,
    pub perms: Vec<Permutation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanopyOut {
    pub tree: String,
    pub canopy: SignWord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiOut {
    pub perm: Permutation,
    pub tree: String,
    pub updown: SignWord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOut {
    pub passed: bool,
    pub seed: u64,
    pub suites: Vec<SuiteOutcome>,
}
