//! Multi-indices `(k_1, ..., k_r)` of positive integers.
//!
//! `k_1` belongs to the smallest summation variable `m_1`; convergence of
//! the zeta-type values needs `k_r >= 2`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IndexError {
    #[error("index parts must be positive integers, got {0:?}")]
    NonPositive(String),
    #[error("cannot parse index part {0:?}")]
    Parse(String),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Index(Vec<u32>);

impl Index {
    pub fn new(parts: Vec<u32>) -> Result<Self, IndexError> {
        if parts.contains(&0) {
            return Err(IndexError::NonPositive(format!("{parts:?}")));
        }
        Ok(Self(parts))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn single(k: u32) -> Self {
        assert!(k > 0);
        Self(vec![k])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<u32> {
        self.0.last().copied()
    }

    /// Last part at least 2 (or empty).
    pub fn is_admissible(&self) -> bool {
        self.last().is_none_or(|k| k >= 2)
    }

    pub fn drop_last(&self) -> Self {
        let mut p = self.0.clone();
        p.pop();
        Self(p)
    }

    /// The index with `k_r - 1` in place of `k_r` (`k_r > 1`).
    pub fn decrement_last(&self) -> Self {
        let mut p = self.0.clone();
        let last = p.last_mut().expect("non-empty index");
        assert!(*last > 1);
        *last -= 1;
        Self(p)
    }

    pub fn reversed(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Index) -> Self {
        let mut p = self.0.clone();
        p.extend_from_slice(&other.0);
        Self(p)
    }
}

impl TryFrom<Vec<u32>> for Index {
    type Error = IndexError;
    fn try_from(v: Vec<u32>) -> Result<Self, IndexError> {
        Index::new(v)
    }
}

impl From<Index> for Vec<u32> {
    fn from(i: Index) -> Vec<u32> {
        i.0
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|k| k.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Index {
    type Err = IndexError;

    /// `"1,2,3"`; the empty string is the empty index.
    fn from_str(s: &str) -> Result<Self, IndexError> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Ok(Index::empty());
        }
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| IndexError::Parse(p.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Index::new(parts)
    }
}

/// All compositions of `n` into exactly `r` positive parts, in lexicographic order.
pub fn compositions(n: u32, r: usize) -> Vec<Index> {
    fn rec(n: u32, r: usize, prefix: &mut Vec<u32>, out: &mut Vec<Index>) {
        if r == 0 {
            if n == 0 {
                out.push(Index(prefix.clone()));
            }
            return;
        }
        if n < r as u32 {
            return;
        }
        for k in 1..=n - (r as u32 - 1) {
            prefix.push(k);
            rec(n - k, r - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, r, &mut Vec::new(), &mut out);
    out
}

/// Admissible indices (`k_r >= 2`) of weight `w` and depth `r`.
pub fn admissible_indices(w: u32, r: usize) -> Vec<Index> {
    compositions(w, r).into_iter().filter(|i| i.is_admissible()).collect()
}
