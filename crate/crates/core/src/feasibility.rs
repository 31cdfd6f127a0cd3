//! Achievability checks for rate vectors.

use std::fmt;

use crate::error::{Error, Result};
use crate::oracle::EntropyOracle;
use crate::rate::RateVector;
use crate::rational::Rational;
use crate::setfunc::DualFunction;
use crate::subset::Subset;

/// Exhaustive checks enumerate `2^n` subsets; this caps `n`.
pub const CHECK_LIMIT: usize = 24;

/// Why a rate vector is not an achievable rate with the requested sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Infeasibility {
    /// `r(X) < H(X | V∖X)`.
    SlepianWolf {
        subset: Subset,
        rate: Rational,
        required: Rational,
    },
    /// `r(V) ≠ α`.
    SumMismatch { expected: Rational, found: Rational },
}

impl fmt::Display for Infeasibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Infeasibility::SlepianWolf {
                subset,
                rate,
                required,
            } => {
                write!(
                    f,
                    "r({subset}) = {rate} is below H({subset} | complement) = {required}"
                )
            }
            Infeasibility::SumMismatch { expected, found } => {
                write!(f, "sum-rate is {found}, expected {expected}")
            }
        }
    }
}

fn check_dimensions<O: EntropyOracle + ?Sized>(oracle: &O, rates: &RateVector) -> Result<usize> {
    let n = oracle.len();
    if rates.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: rates.len(),
        });
    }
    if n > CHECK_LIMIT {
        return Err(Error::TooLarge {
            what: "feasibility check ground set",
            size: n,
            limit: CHECK_LIMIT,
        });
    }
    Ok(n)
}

/// Checks `r(X) ≥ H(X | V∖X)` for every `∅ ≠ X ⊊ V` in increasing mask order,
/// then `r(V) = alpha`. Reports the first failure.
pub fn check_slepian_wolf<O: EntropyOracle + ?Sized>(
    oracle: &O,
    rates: &RateVector,
    alpha: Rational,
) -> Result<std::result::Result<(), Infeasibility>> {
    let n = check_dimensions(oracle, rates)?;
    let full = Subset::full(n);
    for mask in 1..full.mask() {
        let x = Subset::from_mask(mask);
        let required = oracle.conditional_entropy(x, full.difference(x));
        let rate = rates.subset_sum(x);
        if rate < required {
            return Ok(Err(Infeasibility::SlepianWolf {
                subset: x,
                rate,
                required,
            }));
        }
    }
    let found = rates.total();
    if found != alpha {
        return Ok(Err(Infeasibility::SumMismatch {
            expected: alpha,
            found,
        }));
    }
    Ok(Ok(()))
}

/// First `X` with `r(X) > F#_α(X)`, if any: membership in the polyhedron `P(F#_α, ≤)`.
pub fn polyhedron_violation<O: EntropyOracle + ?Sized>(
    oracle: &O,
    alpha: Rational,
    rates: &RateVector,
) -> Result<Option<Subset>> {
    let n = check_dimensions(oracle, rates)?;
    let dual = DualFunction::new(oracle, alpha);
    Ok((1..=Subset::full(n).mask())
        .map(Subset::from_mask)
        .find(|&x| rates.subset_sum(x) > dual.value(x)))
}
