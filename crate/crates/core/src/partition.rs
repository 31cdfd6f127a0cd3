//! Set partitions of the ground set.

use std::fmt;

use crate::error::{Error, Result};
use crate::subset::{Subset, MAX_USERS};

/// Disjoint nonempty blocks covering `{0, .., n-1}`, sorted by smallest member.
///
/// The canonical block order makes `==` a structural comparison.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    n: usize,
    blocks: Vec<Subset>,
}

impl Partition {
    pub fn new(n: usize, mut blocks: Vec<Subset>) -> Result<Self> {
        if n == 0 || n > MAX_USERS {
            return Err(Error::InvalidPartition(format!(
                "unsupported ground size {n}"
            )));
        }
        let full = Subset::full(n);
        let mut seen = Subset::EMPTY;
        for &block in &blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            if !block.is_subset_of(full) {
                return Err(Error::SubsetOutOfRange {
                    mask: block.mask(),
                    n,
                });
            }
            if block.intersects(seen) {
                return Err(Error::InvalidPartition(format!(
                    "block {block} overlaps another block"
                )));
            }
            seen = seen.union(block);
        }
        if seen != full {
            return Err(Error::InvalidPartition(format!(
                "blocks miss users {}",
                full.difference(seen)
            )));
        }
        blocks.sort_by_key(|b| b.first());
        Ok(Partition { n, blocks })
    }

    /// Builds a partition from blocks of 1-based user numbers.
    pub fn from_users(n: usize, blocks: &[&[usize]]) -> Result<Self> {
        let blocks = blocks
            .iter()
            .map(|b| Subset::from_users(b.iter().copied()))
            .collect();
        Partition::new(n, blocks)
    }

    /// Builds a partition from a block label per element (e.g. a restricted growth string).
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        let groups = labels.iter().copied().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Subset::EMPTY; groups];
        for (i, &label) in labels.iter().enumerate() {
            blocks[label] = blocks[label].with(i);
        }
        blocks.retain(|b| !b.is_empty());
        Partition::new(labels.len(), blocks)
    }

    pub fn singletons(n: usize) -> Self {
        Partition {
            n,
            blocks: (0..n).map(Subset::singleton).collect(),
        }
    }

    /// The one-block partition `{V}`.
    pub fn whole(n: usize) -> Self {
        Partition {
            n,
            blocks: vec![Subset::full(n)],
        }
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Subset] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        self.blocks.len() == 1
    }

    pub fn block_of(&self, i: usize) -> Option<Subset> {
        self.blocks.iter().copied().find(|b| b.contains(i))
    }

    /// True iff every block of `self` lies inside some block of `other`.
    pub fn refines(&self, other: &Partition) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::GroundSetMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(self
            .blocks
            .iter()
            .all(|&b| other.blocks.iter().any(|&c| b.is_subset_of(c))))
    }

    /// Replaces the blocks in `to_merge` by their union.
    pub fn merge_blocks(&self, to_merge: &[Subset]) -> Result<Partition> {
        if to_merge.is_empty() {
            return Err(Error::InvalidPartition("nothing to merge".into()));
        }
        let mut merged = Subset::EMPTY;
        for &b in to_merge {
            if !self.blocks.contains(&b) {
                return Err(Error::NotABlock(b));
            }
            merged = merged.union(b);
        }
        let mut blocks: Vec<Subset> = self
            .blocks
            .iter()
            .copied()
            .filter(|b| !b.is_subset_of(merged))
            .collect();
        blocks.push(merged);
        blocks.sort_by_key(|b| b.first());
        Ok(Partition { n: self.n, blocks })
    }

    /// Blocks as lists of 1-based user numbers.
    pub fn to_users(&self) -> Vec<Vec<usize>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|i| i + 1).collect())
            .collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Enumerates every partition of `{0, .., n-1}` through restricted growth strings.
///
/// A restricted growth string `a` has `a[0] = 0` and `a[i] <= 1 + max(a[..i])`;
/// each one encodes exactly one set partition.
#[derive(Clone, Debug)]
pub struct Partitions {
    rgs: Vec<usize>,
    // prefix maxima: max_before[i] = max(rgs[..i])
    max_before: Vec<usize>,
    done: bool,
}

impl Partitions {
    pub fn new(n: usize) -> Self {
        assert!(
            (1..=MAX_USERS).contains(&n),
            "partition enumeration needs 1..=64 elements"
        );
        Partitions {
            rgs: vec![0; n],
            max_before: vec![0; n],
            done: false,
        }
    }

    fn advance(&mut self) -> bool {
        let n = self.rgs.len();
        for i in (1..n).rev() {
            if self.rgs[i] <= self.max_before[i] {
                self.rgs[i] += 1;
                for j in i + 1..n {
                    self.rgs[j] = 0;
                    self.max_before[j] = self.max_before[j - 1].max(self.rgs[j - 1]);
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        let current =
            Partition::from_labels(&self.rgs).expect("restricted growth strings encode partitions");
        self.done = !self.advance();
        Some(current)
    }
}

/// The Bell number `B(n)`: how many partitions an `n`-set has.
pub fn bell_number(n: usize) -> u128 {
    // Bell triangle
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().unwrap());
        for &v in &row {
            let prev = *next.last().unwrap();
            next.push(prev + v);
        }
        row = next;
    }
    row[0]
}
