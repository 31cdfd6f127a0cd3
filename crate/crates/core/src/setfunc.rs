//! The dual set function `F#_α`, partition valuations, and brute-force
//! reference solvers for the Dilworth truncation and the minimum sum-rate.
//!
//! For a sum-rate estimate `α`, `F_α(X) = H(X | V∖X)` for `X ⊊ V` and
//! `F_α(V) = α`. Its dual `F#_α(X) = α − F_α(V∖X)` is intersecting
//! submodular, and for nonempty `X` it reduces to `α − H(V) + H(X)`.

use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::oracle::EntropyOracle;
use crate::partition::{Partition, Partitions};
use crate::rational::Rational;
use crate::subset::Subset;

/// Ground-set size limit for the Bell-number enumerations below.
pub const BRUTE_FORCE_LIMIT: usize = 10;

/// `F#_α` bound to an oracle, with `H(V)` evaluated once.
#[derive(Debug)]
pub struct DualFunction<'a, O: ?Sized> {
    oracle: &'a O,
    alpha: Rational,
    total: Rational,
    full: Subset,
}

impl<O: ?Sized> Clone for DualFunction<'_, O> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<O: ?Sized> Copy for DualFunction<'_, O> {}

impl<'a, O: EntropyOracle + ?Sized> DualFunction<'a, O> {
    pub fn new(oracle: &'a O, alpha: Rational) -> Self {
        DualFunction {
            oracle,
            alpha,
            total: oracle.total_entropy(),
            full: oracle.ground_set().full(),
        }
    }

    pub fn oracle(&self) -> &'a O {
        self.oracle
    }

    pub fn alpha(&self) -> Rational {
        self.alpha
    }

    /// `H(V)`.
    pub fn total_entropy(&self) -> Rational {
        self.total
    }

    /// `F#_α(X)` through the closed form `α − H(V) + H(X)`, with `F#_α(∅) = 0`.
    pub fn value(&self, x: Subset) -> Rational {
        if x.is_empty() {
            Rational::ZERO
        } else {
            self.alpha - self.total + self.oracle.entropy(x)
        }
    }

    /// `F#_α(X) = α − F_α(V∖X)` evaluated literally.
    pub fn definitional_value(&self, x: Subset) -> Rational {
        let complement = self.full.difference(x);
        let primal = if complement == self.full {
            self.alpha
        } else {
            self.oracle
                .conditional_entropy(complement, self.full.difference(complement))
        };
        self.alpha - primal
    }

    /// `F#_α[P] = Σ_{X∈P} F#_α(X)`.
    pub fn partition_value(&self, partition: &Partition) -> Rational {
        partition.blocks().iter().map(|&b| self.value(b)).sum()
    }
}

pub fn dual_value<O: EntropyOracle + ?Sized>(oracle: &O, alpha: Rational, x: Subset) -> Rational {
    DualFunction::new(oracle, alpha).value(x)
}

pub fn partition_value<O: EntropyOracle + ?Sized>(
    oracle: &O,
    alpha: Rational,
    partition: &Partition,
) -> Rational {
    DualFunction::new(oracle, alpha).partition_value(partition)
}

/// `Σ_{X∈P} (H(V) − H(X)) / (|P| − 1)`, the sum-rate lower bound a partition certifies.
pub fn partition_sum_rate<O: EntropyOracle + ?Sized>(
    oracle: &O,
    partition: &Partition,
) -> Result<Rational> {
    if partition.len() < 2 {
        return Err(Error::InvalidPartition(
            "the sum-rate bound needs a partition with at least two blocks".into(),
        ));
    }
    let total = oracle.total_entropy();
    let gap: Rational = partition
        .blocks()
        .iter()
        .map(|&b| total - oracle.entropy(b))
        .sum();
    Ok(gap / Rational::from(partition.len() - 1))
}

/// Value and finest minimizer of `min_{P∈Π(V)} F#_α[P]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DilworthResult {
    pub value: Rational,
    pub minimizer: Partition,
}

/// The common refinement of `partitions`, if it is one of them.
pub fn finest(partitions: &[Partition]) -> Option<Partition> {
    let first = partitions.first()?;
    let n = first.ground_size();
    let mut blocks: Vec<Subset> = first.blocks().to_vec();
    for p in &partitions[1..] {
        blocks = blocks
            .iter()
            .flat_map(|&a| p.blocks().iter().map(move |&b| a.intersection(b)))
            .filter(|c| !c.is_empty())
            .collect();
    }
    let meet = Partition::new(n, blocks).ok()?;
    partitions.contains(&meet).then_some(meet)
}

fn check_size(n: usize) -> Result<()> {
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            what: "brute-force ground set",
            size: n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    Ok(())
}

pub fn dilworth_bruteforce<O: EntropyOracle + ?Sized>(
    oracle: &O,
    alpha: Rational,
) -> Result<DilworthResult> {
    dilworth_bruteforce_with(oracle, alpha, Strategy::default())
}

/// Enumerates all of `Π(V)`.
pub fn dilworth_bruteforce_with<O: EntropyOracle + ?Sized>(
    oracle: &O,
    alpha: Rational,
    strategy: Strategy,
) -> Result<DilworthResult> {
    let n = oracle.len();
    check_size(n)?;
    let dual = DualFunction::new(oracle, alpha);
    let partitions: Vec<Partition> = Partitions::new(n).collect();
    let values = strategy.map(&partitions, |p| dual.partition_value(p));
    let value = *values.iter().min().expect("Π(V) is nonempty");
    let minimizers: Vec<Partition> = partitions
        .into_iter()
        .zip(&values)
        .filter(|(_, v)| **v == value)
        .map(|(p, _)| p)
        .collect();
    let minimizer = finest(&minimizers).ok_or_else(|| {
        Error::Internal(format!(
            "Dilworth truncation at α = {alpha} has no finest minimizer"
        ))
    })?;
    Ok(DilworthResult { value, minimizer })
}

pub fn min_sum_rate_bruteforce<O: EntropyOracle + ?Sized>(
    oracle: &O,
) -> Result<(Rational, Partition)> {
    min_sum_rate_bruteforce_with(oracle, Strategy::default())
}

/// Maximizes the partition sum-rate bound over `Π(V) ∖ {V}`; returns the maximum
/// and the finest maximizer (the fundamental partition).
pub fn min_sum_rate_bruteforce_with<O: EntropyOracle + ?Sized>(
    oracle: &O,
    strategy: Strategy,
) -> Result<(Rational, Partition)> {
    let n = oracle.len();
    check_size(n)?;
    let partitions: Vec<Partition> = Partitions::new(n).filter(|p| !p.is_whole()).collect();
    let values = strategy.map(&partitions, |p| {
        partition_sum_rate(oracle, p).expect("proper partitions have at least two blocks")
    });
    let best = *values.iter().max().expect("Π'(V) is nonempty for |V| ≥ 2");
    let maximizers: Vec<Partition> = partitions
        .into_iter()
        .zip(&values)
        .filter(|(_, v)| **v == best)
        .map(|(p, _)| p)
        .collect();
    let fundamental = finest(&maximizers).ok_or_else(|| {
        Error::Internal("minimum sum-rate formula has no finest maximizer".into())
    })?;
    Ok((best, fundamental))
}
