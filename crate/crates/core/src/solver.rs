//! Coordinate-wise saturation capacity, the modified decomposition algorithm
//! and its non-asymptotic and weighted variants.
//!
//! [`Solver::coord_sat_cap`] raises each rate coordinate in the order `Φ` by its
//! saturation capacity, starting from `(α − H(V))·χ_V`, and merges users whose
//! minimal minimizers overlap. The merged blocks form the finest minimizer of
//! the Dilworth truncation `min_P F#_α[P]`, and the final rates lie in the
//! base polyhedron of the truncation.
//!
//! [`Solver::mda`] starts from the singleton partition's sum-rate bound and
//! repeatedly replaces the partition by that finest minimizer until it stops
//! changing; the estimate increases to the minimum sum-rate `R_ACO`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::oracle::EntropyOracle;
use crate::partition::Partition;
use crate::rate::{LinearOrdering, RateVector};
use crate::rational::Rational;
use crate::setfunc::{partition_sum_rate, DualFunction};
use crate::sfm::{
    minimize_fused_with, minimize_unfused_with, BruteForce, FusedGround, MinimizerEngine, SfmStats,
};
use crate::subset::Subset;

/// Which ground the saturation-capacity minimizations run over.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Blocks of the partition merged so far.
    #[default]
    Fused,
    /// Every previously processed user individually.
    Unfused,
}

/// Rate model: fractional (packet splitting allowed) or integral rates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    #[default]
    Asymptotic,
    NonAsymptotic,
}

/// One coordinate update.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationStep {
    pub user: usize,
    /// Increment applied to `r_user`.
    pub capacity: Rational,
    /// Minimal minimizer expanded to users (contains `user`).
    pub minimizer: Subset,
    /// Blocks over the processed users after the merge, sorted by smallest member.
    pub blocks: Vec<Subset>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationSolveResult {
    pub rates: RateVector,
    /// Finest minimizer of the Dilworth truncation.
    pub minimizer: Partition,
    pub stats: SfmStats,
    pub steps: Vec<SaturationStep>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmniscienceSolution {
    /// `R_ACO`.
    pub min_sum_rate: Rational,
    pub fundamental_partition: Partition,
    pub rates: RateVector,
    /// The estimate `α` passed to each saturation-capacity run, in order.
    pub alpha_trace: Vec<Rational>,
    /// `I(V) = H(V) − R_ACO`.
    pub mmi: Rational,
    pub stats: SfmStats,
    pub ordering: LinearOrdering,
    /// False when the oracle was not checked to be a polymatroid, in which case
    /// optimality is not guaranteed.
    pub validated_oracle: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonAsymptoticSolution {
    /// `R_NCO = ⌈R_ACO⌉`.
    pub min_sum_rate: i128,
    pub rates: RateVector,
    /// Finest Dilworth minimizer at `α = R_NCO`.
    pub minimizer: Partition,
    pub asymptotic: OmniscienceSolution,
    /// Work of the asymptotic solve plus the final run.
    pub stats: SfmStats,
}

static DEFAULT_ENGINE: BruteForce = BruteForce {
    strategy: Strategy::Parallel,
};

/// Solver configuration: minimization ground and engine.
#[derive(Clone, Copy)]
pub struct Solver<'e> {
    pub variant: Variant,
    pub engine: &'e dyn MinimizerEngine,
}

impl Default for Solver<'static> {
    fn default() -> Self {
        Solver {
            variant: Variant::Fused,
            engine: &DEFAULT_ENGINE,
        }
    }
}

impl std::fmt::Debug for Solver<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Solver")
            .field("variant", &self.variant)
            .finish_non_exhaustive()
    }
}

impl Solver<'static> {
    pub fn with_variant(variant: Variant) -> Self {
        Solver {
            variant,
            ..Solver::default()
        }
    }
}

impl<'e> Solver<'e> {
    pub fn new(variant: Variant, engine: &'e dyn MinimizerEngine) -> Self {
        Solver { variant, engine }
    }

    /// Runs the coordinate-wise saturation capacity algorithm at estimate `alpha`.
    ///
    /// For `alpha ≥ R_ACO` the rates land in the base polyhedron of the
    /// truncation with `r(V) = alpha`; below `R_ACO` they sum to less than `alpha`.
    pub fn coord_sat_cap<O: EntropyOracle + ?Sized>(
        &self,
        oracle: &O,
        alpha: Rational,
        ordering: &LinearOrdering,
    ) -> Result<TruncationSolveResult> {
        let n = oracle.len();
        if ordering.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: ordering.len(),
            });
        }
        let dual = DualFunction::new(oracle, alpha);
        let mut rates = RateVector::uniform(n, alpha - dual.total_entropy());
        let mut stats = SfmStats::default();
        let mut steps = Vec::with_capacity(n);

        let first = ordering.as_slice()[0];
        let start = Subset::singleton(first);
        let capacity = dual.value(start) - rates[first];
        rates.add_to(first, capacity);
        let mut blocks = vec![start];
        let mut processed = start;
        steps.push(SaturationStep {
            user: first,
            capacity,
            minimizer: start,
            blocks: blocks.clone(),
        });

        for user in ordering.iter().skip(1) {
            let (capacity, minimizer) = match self.variant {
                Variant::Fused => {
                    let ground = FusedGround::new(blocks.clone(), user)?;
                    let (capacity, chosen) =
                        minimize_fused_with(self.engine, &dual, &rates, &ground, &mut stats)?;
                    let expanded = chosen
                        .iter()
                        .fold(Subset::singleton(user), |acc, &b| acc.union(b));
                    (capacity, expanded)
                }
                Variant::Unfused => {
                    minimize_unfused_with(self.engine, &dual, &rates, processed, user, &mut stats)?
                }
            };
            rates.add_to(user, capacity);
            let (touching, mut rest): (Vec<Subset>, Vec<Subset>) =
                blocks.into_iter().partition(|b| b.intersects(minimizer));
            rest.push(touching.into_iter().fold(minimizer, Subset::union));
            rest.sort_by_key(|b| b.first());
            blocks = rest;
            processed = processed.with(user);
            steps.push(SaturationStep {
                user,
                capacity,
                minimizer,
                blocks: blocks.clone(),
            });
        }

        let minimizer = Partition::new(n, blocks)?;
        Ok(TruncationSolveResult {
            rates,
            minimizer,
            stats,
            steps,
        })
    }

    /// Minimum sum-rate, fundamental partition and an optimal rate vector.
    pub fn mda<O: EntropyOracle + ?Sized>(
        &self,
        oracle: &O,
        ordering: &LinearOrdering,
    ) -> Result<OmniscienceSolution> {
        let n = oracle.len();
        let mut partition = Partition::singletons(n);
        let mut alpha = partition_sum_rate(oracle, &partition)?;
        let mut trace = vec![alpha];
        let mut stats = SfmStats::default();

        // every non-final round strictly coarsens the partition, so n rounds always suffice
        for _ in 0..n {
            let round = self.coord_sat_cap(oracle, alpha, ordering)?;
            stats += round.stats;
            if round.minimizer == partition {
                if round.rates.total() != alpha {
                    return Err(Error::Internal(format!(
                        "optimal rates sum to {} instead of {alpha}",
                        round.rates.total()
                    )));
                }
                return Ok(OmniscienceSolution {
                    min_sum_rate: alpha,
                    fundamental_partition: partition,
                    rates: round.rates,
                    alpha_trace: trace,
                    mmi: oracle.total_entropy() - alpha,
                    stats,
                    ordering: ordering.clone(),
                    validated_oracle: oracle.is_validated(),
                });
            }
            if round.minimizer.len() < 2 || round.minimizer.len() >= partition.len() {
                return Err(Error::Internal(format!(
                    "minimizer {} at α = {alpha} does not strictly coarsen {partition}",
                    round.minimizer
                )));
            }
            let next = partition_sum_rate(oracle, &round.minimizer)?;
            if next <= alpha {
                return Err(Error::Internal(format!(
                    "estimate did not increase: {alpha} -> {next}"
                )));
            }
            partition = round.minimizer;
            alpha = next;
            trace.push(alpha);
        }
        Err(Error::Internal(format!("no fixed point after {n} rounds")))
    }

    /// Integral optimum: `R_NCO = ⌈R_ACO⌉` and one more saturation run at that value.
    pub fn solve_non_asymptotic<O: EntropyOracle + ?Sized>(
        &self,
        oracle: &O,
        ordering: &LinearOrdering,
    ) -> Result<NonAsymptoticSolution> {
        if !oracle.is_integral() {
            return Err(Error::NonIntegralOracle);
        }
        let asymptotic = self.mda(oracle, ordering)?;
        let target = asymptotic.min_sum_rate.ceil();
        let round = self.coord_sat_cap(oracle, target, ordering)?;
        if !round.rates.is_integral() || round.rates.total() != target {
            return Err(Error::Internal(format!(
                "rates {} at α = {target} are not an integral base vertex",
                round.rates
            )));
        }
        let mut stats = asymptotic.stats;
        stats += round.stats;
        Ok(NonAsymptoticSolution {
            min_sum_rate: target.to_integer().expect("ceiling is an integer"),
            rates: round.rates,
            minimizer: round.minimizer,
            asymptotic,
            stats,
        })
    }

    /// Optimal rate vector minimizing `w · r` among the optimal rates of `model`.
    pub fn min_weighted_sum_rate<O: EntropyOracle + ?Sized>(
        &self,
        oracle: &O,
        weights: &[Rational],
        model: Model,
    ) -> Result<RateVector> {
        if weights.len() != oracle.len() {
            return Err(Error::DimensionMismatch {
                expected: oracle.len(),
                found: weights.len(),
            });
        }
        let ordering = ordering_for_weights(weights)?;
        match model {
            Model::Asymptotic => Ok(self.mda(oracle, &ordering)?.rates),
            Model::NonAsymptotic => Ok(self.solve_non_asymptotic(oracle, &ordering)?.rates),
        }
    }
}

/// Users sorted by ascending weight, ties by ascending index.
pub fn ordering_for_weights(weights: &[Rational]) -> Result<LinearOrdering> {
    if let Some(index) = weights.iter().position(Rational::is_negative) {
        return Err(Error::NegativeWeight { index });
    }
    let mut phi: Vec<usize> = (0..weights.len()).collect();
    phi.sort_by_key(|&i| (weights[i], i));
    LinearOrdering::new(phi)
}

pub fn coord_sat_cap<O: EntropyOracle + ?Sized>(
    oracle: &O,
    alpha: Rational,
    ordering: &LinearOrdering,
    variant: Variant,
) -> Result<TruncationSolveResult> {
    Solver::with_variant(variant).coord_sat_cap(oracle, alpha, ordering)
}

pub fn mda<O: EntropyOracle + ?Sized>(
    oracle: &O,
    ordering: &LinearOrdering,
) -> Result<OmniscienceSolution> {
    Solver::default().mda(oracle, ordering)
}

pub fn solve_non_asymptotic<O: EntropyOracle + ?Sized>(
    oracle: &O,
    ordering: &LinearOrdering,
) -> Result<NonAsymptoticSolution> {
    Solver::default().solve_non_asymptotic(oracle, ordering)
}

pub fn min_weighted_sum_rate<O: EntropyOracle + ?Sized>(
    oracle: &O,
    weights: &[Rational],
    model: Model,
) -> Result<RateVector> {
    Solver::default().min_weighted_sum_rate(oracle, weights, model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::EntropyTable;
    use crate::rational::ratio;
    use crate::subset::GroundSet;
    use crate::testing::{disjoint_pair, example_instance, identical_pair};

    fn phi() -> LinearOrdering {
        LinearOrdering::from_users(&[4, 3, 2, 5, 1]).unwrap()
    }

    fn rates(values: &[(i128, i128)]) -> RateVector {
        RateVector::new(values.iter().map(|&(p, q)| ratio(p, q)).collect())
    }

    fn fundamental() -> Partition {
        Partition::from_users(5, &[&[1, 3, 4], &[2], &[5]]).unwrap()
    }

    #[test]
    fn saturation_at_first_estimate() {
        let result =
            coord_sat_cap(&example_instance(), ratio(19, 4), &phi(), Variant::Fused).unwrap();
        assert_eq!(
            result.rates,
            rates(&[(0, 1), (-1, 4), (2, 1), (7, 4), (-1, 4)])
        );
        assert_eq!(result.minimizer, fundamental());
        let capacities: Vec<Rational> = result.steps[1..].iter().map(|s| s.capacity).collect();
        assert_eq!(
            capacities,
            vec![
                ratio(21, 4),
                Rational::from(3),
                Rational::from(3),
                ratio(13, 4)
            ]
        );
    }

    #[test]
    fn saturation_at_optimum_and_above() {
        let o = example_instance();
        let at = coord_sat_cap(&o, ratio(11, 2), &phi(), Variant::Fused).unwrap();
        assert_eq!(at.rates, rates(&[(0, 1), (1, 2), (2, 1), (5, 2), (1, 2)]));
        assert_eq!(at.minimizer, fundamental());
        let above = coord_sat_cap(&o, Rational::from(6), &phi(), Variant::Fused).unwrap();
        assert_eq!(
            above.rates,
            rates(&[(0, 1), (1, 1), (2, 1), (3, 1), (0, 1)])
        );
        assert_eq!(above.minimizer, Partition::whole(5));
    }

    #[test]
    fn variants_agree_on_example() {
        let o = example_instance();
        for alpha in [
            ratio(19, 4),
            ratio(11, 2),
            Rational::from(6),
            Rational::from(4),
        ] {
            let fused = coord_sat_cap(&o, alpha, &phi(), Variant::Fused).unwrap();
            let unfused = coord_sat_cap(&o, alpha, &phi(), Variant::Unfused).unwrap();
            assert_eq!(fused.rates, unfused.rates);
            assert_eq!(fused.minimizer, unfused.minimizer);
            for (f, u) in fused.steps.iter().zip(&unfused.steps) {
                assert_eq!((f.user, f.capacity), (u.user, u.capacity));
                assert_eq!(f.blocks, u.blocks);
                // the fused minimizer is a union of blocks, so it can only be larger
                assert!(u.minimizer.is_subset_of(f.minimizer));
            }
            assert!(fused.stats.summed_ground_size <= unfused.stats.summed_ground_size);
        }
    }

    #[test]
    fn mda_example() {
        let solution = mda(&example_instance(), &phi()).unwrap();
        assert_eq!(solution.min_sum_rate, ratio(11, 2));
        assert_eq!(solution.fundamental_partition, fundamental());
        assert_eq!(
            solution.rates,
            rates(&[(0, 1), (1, 2), (2, 1), (5, 2), (1, 2)])
        );
        assert_eq!(solution.alpha_trace, vec![ratio(19, 4), ratio(11, 2)]);
        assert_eq!(solution.mmi, ratio(5, 2));
        assert!(solution.validated_oracle);
    }

    #[test]
    fn mda_two_users() {
        let solution = mda(&disjoint_pair(), &LinearOrdering::identity(2)).unwrap();
        assert_eq!(solution.min_sum_rate, Rational::from(2));
        assert_eq!(solution.rates, rates(&[(1, 1), (1, 1)]));
        assert_eq!(solution.alpha_trace, vec![Rational::from(2)]);
        assert_eq!(solution.fundamental_partition, Partition::singletons(2));

        let solution = mda(&identical_pair(), &LinearOrdering::identity(2)).unwrap();
        assert_eq!(solution.min_sum_rate, Rational::ZERO);
        assert_eq!(solution.rates, rates(&[(0, 1), (0, 1)]));
        assert_eq!(solution.fundamental_partition, Partition::singletons(2));
    }

    #[test]
    fn non_asymptotic_examples() {
        let solution = solve_non_asymptotic(&example_instance(), &phi()).unwrap();
        assert_eq!(solution.min_sum_rate, 6);
        assert_eq!(
            solution.rates,
            rates(&[(0, 1), (1, 1), (2, 1), (3, 1), (0, 1)])
        );
        assert_eq!(solution.minimizer, Partition::whole(5));

        let solution =
            solve_non_asymptotic(&disjoint_pair(), &LinearOrdering::identity(2)).unwrap();
        assert_eq!(solution.min_sum_rate, 2);
        assert_eq!(solution.rates, rates(&[(1, 1), (1, 1)]));

        let solution =
            solve_non_asymptotic(&identical_pair(), &LinearOrdering::identity(2)).unwrap();
        assert_eq!(solution.min_sum_rate, 0);
        assert_eq!(solution.rates, rates(&[(0, 1), (0, 1)]));
    }

    #[test]
    fn non_asymptotic_rejects_fractional_oracles() {
        let ground = GroundSet::new(2).unwrap();
        let values = vec![Rational::ZERO, Rational::ONE, ratio(1, 2), ratio(3, 2)];
        let table = EntropyTable::new(ground, values).unwrap();
        assert!(matches!(
            solve_non_asymptotic(&table, &LinearOrdering::identity(2)),
            Err(Error::NonIntegralOracle)
        ));
        // the asymptotic solve is fine
        let solution = mda(&table, &LinearOrdering::identity(2)).unwrap();
        assert_eq!(solution.min_sum_rate, ratio(3, 2));
    }

    #[test]
    fn weight_orderings() {
        let w: Vec<Rational> = ["4", "1/2", "1/2", "3/10", "33/10"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        assert_eq!(
            ordering_for_weights(&w).unwrap(),
            LinearOrdering::from_users(&[4, 2, 3, 5, 1]).unwrap()
        );
        assert_eq!(
            ordering_for_weights(&[Rational::ONE; 4]).unwrap(),
            LinearOrdering::identity(4)
        );
        let increasing: Vec<Rational> = (1..=4).map(Rational::from).collect();
        assert_eq!(
            ordering_for_weights(&increasing).unwrap(),
            LinearOrdering::identity(4)
        );
        assert!(matches!(
            ordering_for_weights(&[Rational::ONE, Rational::from(-1)]),
            Err(Error::NegativeWeight { index: 1 })
        ));
    }

    #[test]
    fn weighted_examples() {
        let o = example_instance();
        let w: Vec<Rational> = ["4", "0.5", "0.5", "0.3", "3.3"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        let asym = min_weighted_sum_rate(&o, &w, Model::Asymptotic).unwrap();
        let reference_vertex = rates(&[(0, 1), (1, 2), (2, 1), (5, 2), (1, 2)]);
        assert_eq!(asym.total(), ratio(11, 2));
        assert_eq!(
            asym.weighted_sum(&w).unwrap(),
            reference_vertex.weighted_sum(&w).unwrap()
        );

        let integral = min_weighted_sum_rate(&o, &w, Model::NonAsymptotic).unwrap();
        assert!(integral.is_integral());
        let reference_integral = rates(&[(0, 1), (1, 1), (2, 1), (3, 1), (0, 1)]);
        assert!(integral.weighted_sum(&w).unwrap() <= reference_integral.weighted_sum(&w).unwrap());

        for w in [
            [Rational::ONE, Rational::from(7)],
            [Rational::from(3), Rational::ZERO],
        ] {
            let r = min_weighted_sum_rate(&disjoint_pair(), &w, Model::Asymptotic).unwrap();
            assert_eq!(r, rates(&[(1, 1), (1, 1)]));
        }
        assert!(min_weighted_sum_rate(&o, &w[..3], Model::Asymptotic).is_err());
    }

    #[test]
    fn below_optimum_rates_fall_short() {
        let o = example_instance();
        let alpha = ratio(11, 2) - ratio(1, 2);
        let result = coord_sat_cap(&o, alpha, &phi(), Variant::Fused).unwrap();
        assert!(result.rates.total() < alpha);
    }

    #[test]
    fn ordering_must_match_ground() {
        assert!(coord_sat_cap(
            &example_instance(),
            Rational::ONE,
            &LinearOrdering::identity(4),
            Variant::Fused
        )
        .is_err());
    }
}
