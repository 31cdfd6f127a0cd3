//! Minimum sum-rate and optimal rate vectors for communication for omniscience.
//!
//! A group of users each observe part of a multiple source and exchange
//! messages over a broadcast channel until everyone knows everything. Given an
//! entropy oracle `H(X)` over sets of users, this crate computes
//!
//! - the minimum sum-rate `R_ACO` when rates may be fractional,
//! - the fundamental partition of the users,
//! - an optimal rate vector, optionally minimizing a weighted sum-rate,
//! - the integral optimum `R_NCO = ⌈R_ACO⌉` with an integral rate vector.
//!
//! The sum-rate estimate starts from the singleton partition and is raised by
//! the finest minimizer of a Dilworth truncation, which the coordinate-wise
//! saturation capacity algorithm computes over a fused ground set (see
//! [`solver`]). Brute-force references live in [`setfunc`].
//!
//! ```
//! use omniscience::{mda, LinearOrdering, Rational};
//! use omniscience::testing::example_instance;
//!
//! let oracle = example_instance();
//! let ordering = LinearOrdering::from_users(&[4, 3, 2, 5, 1]).unwrap();
//! let solution = mda(&oracle, &ordering).unwrap();
//! assert_eq!(solution.min_sum_rate, Rational::new(11, 2).unwrap());
//! assert_eq!(solution.fundamental_partition.to_string(), "{{1,3,4},{2},{5}}");
//! ```

pub mod error;
pub mod exec;
pub mod feasibility;
pub mod oracle;
pub mod partition;
pub mod rate;
pub mod rational;
pub mod setfunc;
pub mod sfm;
pub mod solver;
pub mod subset;
pub mod testing;

pub use error::{Error, Result};
pub use exec::Strategy;
pub use feasibility::{check_slepian_wolf, Infeasibility};
pub use oracle::{EntropyOracle, EntropyTable, Instance, PacketInstance};
pub use partition::Partition;
pub use rate::{LinearOrdering, RateVector};
pub use rational::Rational;
pub use setfunc::{dilworth_bruteforce, min_sum_rate_bruteforce, DilworthResult};
pub use sfm::SfmStats;
pub use solver::{
    coord_sat_cap, mda, min_weighted_sum_rate, ordering_for_weights, solve_non_asymptotic, Model,
    NonAsymptoticSolution, OmniscienceSolution, Solver, TruncationSolveResult, Variant,
};
pub use subset::{GroundSet, Subset};
