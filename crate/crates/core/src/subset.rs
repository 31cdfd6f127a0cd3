//! Users, ground sets and bitmask subsets.
//!
//! Users are indexed from 0 internally. Everything that is printed for humans
//! (partitions, orderings, subsets) is shown 1-based.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_USERS: usize = 64;

/// The set of users `V`, with optional display labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundSet {
    n: usize,
    labels: Option<Vec<String>>,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if !(2..=MAX_USERS).contains(&n) {
            return Err(Error::GroundSetSize(n));
        }
        Ok(GroundSet { n, labels: None })
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        let mut ground = GroundSet::new(labels.len())?;
        ground.labels = Some(labels);
        Ok(ground)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    /// Always false; a ground set has at least two users.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.n)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of user `i`: its label, or its 1-based index.
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(labels) => labels[i].clone(),
            None => (i + 1).to_string(),
        }
    }

    pub fn contains(&self, x: Subset) -> bool {
        x.is_within(self.n)
    }

    pub fn check(&self, x: Subset) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::SubsetOutOfRange {
                mask: x.mask(),
                n: self.n,
            })
        }
    }
}

/// A subset of users as a 64-bit mask; bit `i` is user `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_mask(mask: u64) -> Self {
        Subset(mask)
    }

    pub const fn mask(self) -> u64 {
        self.0
    }

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_USERS);
        if n >= 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        debug_assert!(i < MAX_USERS);
        Subset(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices
            .into_iter()
            .fold(Subset::EMPTY, |acc, i| acc.with(i))
    }

    /// Builds a subset from 1-based user numbers, as written in the literature.
    pub fn from_users<I: IntoIterator<Item = usize>>(users: I) -> Self {
        Subset::from_indices(users.into_iter().map(|u| u - 1))
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_USERS && self.0 & (1u64 << i) != 0
    }

    pub fn with(self, i: usize) -> Self {
        Subset(self.0 | (1u64 << i))
    }

    pub fn without(self, i: usize) -> Self {
        Subset(self.0 & !(1u64 << i))
    }

    pub fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Self {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Self {
        Subset(self.0 & !other.0)
    }

    pub fn intersects(self, other: Subset) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn is_within(self, n: usize) -> bool {
        self.is_subset_of(Subset::full(n))
    }

    /// Members in increasing order.
    pub fn iter(self) -> Members {
        Members(self.0)
    }
}

impl IntoIterator for Subset {
    type Item = usize;
    type IntoIter = Members;

    fn into_iter(self) -> Members {
        self.iter()
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Subset::from_indices(iter)
    }
}

#[derive(Clone, Debug)]
pub struct Members(u64);

impl Iterator for Members {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Members {}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_set_bounds() {
        assert!(GroundSet::new(1).is_err());
        assert!(GroundSet::new(65).is_err());
        assert_eq!(GroundSet::new(64).unwrap().full().mask(), u64::MAX);
        assert_eq!(GroundSet::new(5).unwrap().full().mask(), 0b11111);
    }

    #[test]
    fn set_algebra() {
        let a = Subset::from_users([1, 3, 4]);
        let b = Subset::from_users([3, 5]);
        assert_eq!(a.union(b), Subset::from_users([1, 3, 4, 5]));
        assert_eq!(a.intersection(b), Subset::from_users([3]));
        assert_eq!(a.difference(b), Subset::from_users([1, 4]));
        assert!(Subset::from_users([3]).is_subset_of(a));
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![0, 2, 3]);
        assert_eq!(a.first(), Some(0));
        assert_eq!(Subset::EMPTY.first(), None);
        assert_eq!(a.to_string(), "{1,3,4}");
        assert_eq!(Subset::EMPTY.to_string(), "{}");
    }

    #[test]
    fn containment_check() {
        let ground = GroundSet::new(3).unwrap();
        assert!(ground.check(Subset::from_mask(0b111)).is_ok());
        assert!(ground.check(Subset::from_mask(0b1000)).is_err());
        assert!(ground.check(Subset::EMPTY).is_ok());
    }
}
