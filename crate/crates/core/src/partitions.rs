//! Set partitions of `{0, .., n-1}` and their Möbius weights.
//!
//! Partitions are produced as restricted growth strings (RGS): element `i`
//! is assigned block `a[i]` with `a[0] = 0` and `a[i] <= 1 + max(a[..i])`.
//! Lexicographic RGS order yields every partition exactly once, with blocks
//! already numbered by least element.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::factorial;

/// Largest set size accepted by [`enumerate_partitions`]. Bell(12) = 4,213,597.
pub const MAX_PARTITION_SIZE: usize = 12;

/// A partition of `{0, .., n-1}` into nonempty blocks.
///
/// Canonical form: blocks sorted by least element, elements ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// Builds a partition from arbitrary blocks, validating and canonicalizing.
    pub fn new(mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let n: usize = blocks.iter().map(Vec::len).sum();
        let mut seen = vec![false; n];
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            block.sort_unstable();
            for &e in block.iter() {
                if e >= n || seen[e] {
                    return Err(Error::InvalidPartition(format!(
                        "element {e} repeated or outside 0..{n}"
                    )));
                }
                seen[e] = true;
            }
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Self { blocks })
    }

    /// Decodes a restricted growth string.
    pub fn from_rgs(rgs: &[u8]) -> Result<Self> {
        let mut max_seen: Option<u8> = None;
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (i, &b) in rgs.iter().enumerate() {
            let bound = max_seen.map_or(0, |m| m + 1);
            if b > bound {
                return Err(Error::InvalidPartition(format!(
                    "rgs entry {b} at position {i} exceeds {bound}"
                )));
            }
            if b == bound {
                blocks.push(Vec::new());
                max_seen = Some(b);
            }
            blocks[b as usize].push(i);
        }
        Ok(Self { blocks })
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Size of the underlying set.
    pub fn len(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Restricted growth string of this partition.
    pub fn rgs(&self) -> Vec<u8> {
        let mut out = vec![0u8; self.len()];
        for (b, block) in self.blocks.iter().enumerate() {
            for &e in block {
                out[e] = b as u8;
            }
        }
        out
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (j, e) in block.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 || n > MAX_PARTITION_SIZE {
        return Err(Error::OutOfRange {
            what: "partition size",
            requested: n,
            min: 1,
            max: MAX_PARTITION_SIZE,
        });
    }
    Ok(())
}

/// Visits every restricted growth string of length `n` in lexicographic
/// order. The callback receives the string and its number of blocks.
pub fn for_each_rgs<F: FnMut(&[u8], usize)>(n: usize, mut visit: F) -> Result<()> {
    check_size(n)?;
    let mut rgs = vec![0u8; n];
    // prefix_max[i] = max(rgs[..=i])
    let mut prefix_max = vec![0u8; n];
    loop {
        visit(&rgs, prefix_max[n - 1] as usize + 1);
        let mut i = n - 1;
        while i > 0 && rgs[i] > prefix_max[i - 1] {
            i -= 1;
        }
        if i == 0 {
            return Ok(());
        }
        rgs[i] += 1;
        prefix_max[i] = prefix_max[i - 1].max(rgs[i]);
        for j in i + 1..n {
            rgs[j] = 0;
            prefix_max[j] = prefix_max[i];
        }
    }
}

/// All partitions of `{0, .., n-1}` in canonical (RGS-lexicographic) order.
pub fn enumerate_partitions(n: usize) -> Result<Vec<SetPartition>> {
    let mut out = Vec::new();
    for_each_rgs(n, |rgs, _| {
        out.push(SetPartition::from_rgs(rgs).expect("generated rgs is valid"))
    })?;
    Ok(out)
}

/// `(-1)^(b-1) (b-1)!` for a partition with `b` blocks.
pub fn moebius_weight(p: &SetPartition) -> i64 {
    moebius_weight_for_blocks(p.num_blocks())
}

pub(crate) fn moebius_weight_for_blocks(blocks: usize) -> i64 {
    let magnitude = factorial(blocks - 1) as i64;
    if blocks % 2 == 1 {
        magnitude
    } else {
        -magnitude
    }
}

/// Bell numbers via the Bell triangle.
pub fn bell_number(n: usize) -> u64 {
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().unwrap());
        for &v in &row {
            let last = *next.last().unwrap();
            next.push(last + v);
        }
        row = next;
    }
    row[0]
}
