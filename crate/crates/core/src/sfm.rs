//! Constrained minimization of `F#_α(X) − r(X)` for the saturation-capacity step.
//!
//! Both problems fix one user `φ_i` inside `X` and let the rest of `X` range
//! over a family of free elements: the blocks of the current partition
//! (fused), or the individual users processed so far (unfused). Since every
//! candidate contains `φ_i`, the candidates pairwise intersect and the
//! objective is submodular on the free elements, so its minimizers are closed
//! under intersection and there is a unique minimal minimizer.
//!
//! The work is done by a [`MinimizerEngine`]. [`BruteForce`] enumerates all
//! `2^k` choices of free elements, which is the intended engine at desk scale.

use std::ops::AddAssign;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::oracle::EntropyOracle;
use crate::rate::RateVector;
use crate::rational::Rational;
use crate::setfunc::DualFunction;
use crate::subset::Subset;

/// Largest number of free elements [`BruteForce`] accepts.
pub const ENUMERATION_LIMIT: usize = 20;

// Below this many free elements the enumeration stays on one thread.
const PARALLEL_THRESHOLD: usize = 12;
const CHUNK: u64 = 1 << 10;

/// Work counters for the minimizations performed during a solve.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SfmStats {
    /// Number of minimizations.
    pub calls: u64,
    /// Sum over calls of the number of free elements.
    pub summed_ground_size: u64,
    /// Objective evaluations.
    pub evaluations: u64,
}

impl SfmStats {
    fn record(&mut self, ground_size: usize, evaluations: u64) {
        self.calls += 1;
        self.summed_ground_size += ground_size as u64;
        self.evaluations += evaluations;
    }
}

impl AddAssign for SfmStats {
    fn add_assign(&mut self, rhs: SfmStats) {
        self.calls += rhs.calls;
        self.summed_ground_size += rhs.summed_ground_size;
        self.evaluations += rhs.evaluations;
    }
}

/// The fused ground for user `forced`: the blocks of the partition built so far.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusedGround {
    blocks: Vec<Subset>,
    forced: usize,
}

impl FusedGround {
    pub fn new(blocks: Vec<Subset>, forced: usize) -> Result<Self> {
        let mut seen = Subset::singleton(forced);
        for &b in &blocks {
            if b.is_empty() || b.intersects(seen) {
                return Err(Error::InvalidPartition(format!(
                    "fused block {b} is empty or overlaps another block or the forced user"
                )));
            }
            seen = seen.union(b);
        }
        Ok(FusedGround { blocks, forced })
    }

    pub fn blocks(&self) -> &[Subset] {
        &self.blocks
    }

    pub fn forced(&self) -> usize {
        self.forced
    }

    /// `{forced} ∪ Ũ` for the blocks selected by `mask`.
    pub fn expand(&self, mask: u64) -> Subset {
        Subset::from_mask(mask)
            .iter()
            .fold(Subset::singleton(self.forced), |acc, b| {
                acc.union(self.blocks[b])
            })
    }
}

/// Outcome of one minimization over `k` free elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Minimum {
    pub value: Rational,
    /// Minimal minimizer, as a mask over the free elements.
    pub minimal: u64,
    pub evaluations: u64,
}

/// Minimizes a submodular function over all subsets of `free` elements.
pub trait MinimizerEngine: Sync {
    /// `objective` maps a mask over the free elements to its value. Returns the
    /// minimum and the minimal minimizer.
    fn minimize(
        &self,
        free: usize,
        objective: &(dyn Fn(u64) -> Rational + Sync),
    ) -> Result<Minimum>;
}

/// Exhaustive enumeration in increasing mask order.
///
/// The minimal minimizer is the intersection of every minimizing mask, and the
/// intersection is re-evaluated to confirm it attains the minimum.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BruteForce {
    pub strategy: Strategy,
}

impl BruteForce {
    pub fn new(strategy: Strategy) -> Self {
        BruteForce { strategy }
    }
}

fn scan(
    range: std::ops::Range<u64>,
    objective: &(dyn Fn(u64) -> Rational + Sync),
) -> Option<(Rational, u64)> {
    let mut best: Option<(Rational, u64)> = None;
    for mask in range {
        let value = objective(mask);
        best = match best {
            Some((v, inter)) if value > v => Some((v, inter)),
            Some((v, inter)) if value == v => Some((v, inter & mask)),
            _ => Some((value, mask)),
        };
    }
    best
}

impl MinimizerEngine for BruteForce {
    fn minimize(
        &self,
        free: usize,
        objective: &(dyn Fn(u64) -> Rational + Sync),
    ) -> Result<Minimum> {
        if free > ENUMERATION_LIMIT {
            return Err(Error::TooLarge {
                what: "minimization ground",
                size: free,
                limit: ENUMERATION_LIMIT,
            });
        }
        let space = 1u64 << free;
        let strategy = if free >= PARALLEL_THRESHOLD {
            self.strategy
        } else {
            Strategy::Sequential
        };
        let partial = strategy.map_ranges(space, CHUNK, |range| scan(range, objective));
        let mut best: Option<(Rational, u64)> = None;
        for (value, inter) in partial.into_iter().flatten() {
            best = match best {
                Some((v, i)) if value > v => Some((v, i)),
                Some((v, i)) if value == v => Some((v, i & inter)),
                _ => Some((value, inter)),
            };
        }
        let (value, minimal) = best.expect("the empty selection is always a candidate");
        if objective(minimal) != value {
            return Err(Error::Internal(format!(
                "intersection of minimizers {minimal:#b} does not attain the minimum {value}"
            )));
        }
        Ok(Minimum {
            value,
            minimal,
            evaluations: space + 1,
        })
    }
}

/// Saturation capacity over the fused ground:
/// `min { F#_α({φ} ∪ Ũ) − r({φ} ∪ Ũ) : U ⊆ blocks }`.
///
/// Returns the minimum and the blocks of the minimal minimizer (without the forced user).
pub fn minimize_fused<O: EntropyOracle + ?Sized>(
    oracle: &O,
    alpha: Rational,
    rates: &RateVector,
    ground: &FusedGround,
    stats: &mut SfmStats,
) -> Result<(Rational, Vec<Subset>)> {
    minimize_fused_with(
        &BruteForce::default(),
        &DualFunction::new(oracle, alpha),
        rates,
        ground,
        stats,
    )
}

pub fn minimize_fused_with<E, O>(
    engine: &E,
    dual: &DualFunction<'_, O>,
    rates: &RateVector,
    ground: &FusedGround,
    stats: &mut SfmStats,
) -> Result<(Rational, Vec<Subset>)>
where
    E: MinimizerEngine + ?Sized,
    O: EntropyOracle + ?Sized,
{
    let objective = |mask: u64| {
        let x = ground.expand(mask);
        dual.value(x) - rates.subset_sum(x)
    };
    let k = ground.blocks.len();
    let found = engine.minimize(k, &objective)?;
    stats.record(k, found.evaluations);
    let blocks = Subset::from_mask(found.minimal)
        .iter()
        .map(|b| ground.blocks[b])
        .collect();
    Ok((found.value, blocks))
}

/// Saturation capacity over individual users:
/// `min { F#_α(X) − r(X) : forced ∈ X ⊆ processed ∪ {forced} }`.
///
/// Returns the minimum and the minimal minimizer `X` (which contains `forced`).
pub fn minimize_unfused<O: EntropyOracle + ?Sized>(
    oracle: &O,
    alpha: Rational,
    rates: &RateVector,
    processed: Subset,
    forced: usize,
    stats: &mut SfmStats,
) -> Result<(Rational, Subset)> {
    minimize_unfused_with(
        &BruteForce::default(),
        &DualFunction::new(oracle, alpha),
        rates,
        processed,
        forced,
        stats,
    )
}

pub fn minimize_unfused_with<E, O>(
    engine: &E,
    dual: &DualFunction<'_, O>,
    rates: &RateVector,
    processed: Subset,
    forced: usize,
    stats: &mut SfmStats,
) -> Result<(Rational, Subset)>
where
    E: MinimizerEngine + ?Sized,
    O: EntropyOracle + ?Sized,
{
    if processed.contains(forced) {
        return Err(Error::InvalidPartition(format!(
            "forced user {} is already processed",
            forced + 1
        )));
    }
    let members: Vec<usize> = processed.iter().collect();
    let expand = |mask: u64| {
        Subset::from_mask(mask)
            .iter()
            .fold(Subset::singleton(forced), |acc, k| acc.with(members[k]))
    };
    let objective = |mask: u64| {
        let x = expand(mask);
        dual.value(x) - rates.subset_sum(x)
    };
    let found = engine.minimize(members.len(), &objective)?;
    stats.record(members.len(), found.evaluations);
    Ok((found.value, expand(found.minimal)))
}
