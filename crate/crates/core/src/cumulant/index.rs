use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Per-variable counts `(i_1, .., i_d)` of a joint moment or cumulant.
///
/// Only counts are stored, so `r(X, Y, X)` and `r(X, X, Y)` share a key.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<u8>);

impl MultiIndex {
    pub fn new(counts: Vec<u8>) -> Self {
        Self(counts)
    }

    pub fn zeros(dim: usize) -> Self {
        Self(vec![0; dim])
    }

    /// `count` copies of variable `var`, nothing else.
    pub fn unit(dim: usize, var: usize, count: u8) -> Self {
        let mut v = vec![0; dim];
        v[var] = count;
        Self(v)
    }

    pub fn counts(&self) -> &[u8] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> usize {
        self.0.iter().map(|&c| c as usize).sum()
    }

    /// Number of variables with a nonzero count.
    pub fn support_size(&self) -> usize {
        self.0.iter().filter(|&&c| c > 0).count()
    }

    pub fn get(&self, var: usize) -> u8 {
        self.0[var]
    }

    /// Positions of the expanded argument list, e.g. `(2,1)` gives `[0,0,1]`.
    pub fn expand(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(var, &c)| std::iter::repeat_n(var, c as usize))
            .collect()
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for MultiIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split(',')
            .map(|part| {
                part.trim()
                    .parse::<u8>()
                    .map_err(|_| Error::InvalidInput(format!("bad multi-index {s:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(MultiIndex)
    }
}

impl From<Vec<u8>> for MultiIndex {
    fn from(v: Vec<u8>) -> Self {
        Self(v)
    }
}

/// All multi-indices of dimension `dim` whose counts sum to `total`,
/// in lexicographically descending order (`(k,0,..)` first).
pub fn compositions(dim: usize, total: usize) -> Vec<MultiIndex> {
    fn rec(dim: usize, left: usize, prefix: &mut Vec<u8>, out: &mut Vec<MultiIndex>) {
        if prefix.len() + 1 == dim {
            prefix.push(left as u8);
            out.push(MultiIndex(prefix.clone()));
            prefix.pop();
            return;
        }
        for c in (0..=left).rev() {
            prefix.push(c as u8);
            rec(dim, left - c, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if dim == 0 {
        return out;
    }
    rec(dim, total, &mut Vec::with_capacity(dim), &mut out);
    out
}

/// Every multi-index of total order `1..=order`, graded by total order.
pub fn graded_indices(dim: usize, order: usize) -> Vec<MultiIndex> {
    (1..=order).flat_map(|k| compositions(dim, k)).collect()
}
