use std::fmt;

use super::EntropyOracle;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::subset::{GroundSet, Subset};

/// Largest ground set an explicit table may have (2^24 entries).
pub const TABLE_LIMIT: usize = 24;

/// First polymatroid axiom found to fail, with witness subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolymatroidViolation {
    /// `H(∅) ≠ 0`.
    NotNormalized { value: Rational },
    /// `smaller ⊆ larger` but `H(larger) < H(smaller)`.
    NotMonotone { larger: Subset, smaller: Subset },
    /// `H(x) + H(y) < H(x ∩ y) + H(x ∪ y)`.
    NotSubmodular { x: Subset, y: Subset },
}

impl fmt::Display for PolymatroidViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolymatroidViolation::NotNormalized { value } => {
                write!(f, "H(∅) = {value}, expected 0")
            }
            PolymatroidViolation::NotMonotone { larger, smaller } => {
                write!(f, "not monotone: H({larger}) < H({smaller})")
            }
            PolymatroidViolation::NotSubmodular { x, y } => {
                write!(f, "not submodular at X = {x}, Y = {y}")
            }
        }
    }
}

/// An explicit value `H(X)` for every subset, indexed by mask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntropyTable {
    ground: GroundSet,
    values: Vec<Rational>,
    validated: bool,
}

impl EntropyTable {
    /// Builds a table and checks the polymatroid axioms.
    pub fn new(ground: GroundSet, values: Vec<Rational>) -> Result<Self> {
        let table = Self::unvalidated(ground, values)?;
        validate_polymatroid(&table).map_err(Error::NotPolymatroid)?;
        Ok(EntropyTable {
            validated: true,
            ..table
        })
    }

    /// Builds a table without the `O(2^n n^2)` axiom check. The solvers still
    /// run on it, but report their guarantees as conditional.
    pub fn unvalidated(ground: GroundSet, values: Vec<Rational>) -> Result<Self> {
        let n = ground.len();
        if n > TABLE_LIMIT {
            return Err(Error::TooLarge {
                what: "entropy table ground set",
                size: n,
                limit: TABLE_LIMIT,
            });
        }
        if values.len() != 1usize << n {
            return Err(Error::DimensionMismatch {
                expected: 1usize << n,
                found: values.len(),
            });
        }
        Ok(EntropyTable {
            ground,
            values,
            validated: false,
        })
    }

    /// Tabulates another oracle.
    pub fn from_oracle<O: EntropyOracle + ?Sized>(oracle: &O) -> Result<Self> {
        let ground = oracle.ground_set().clone();
        let n = ground.len();
        if n > TABLE_LIMIT {
            return Err(Error::TooLarge {
                what: "entropy table ground set",
                size: n,
                limit: TABLE_LIMIT,
            });
        }
        let values = (0..1u64 << n)
            .map(|m| oracle.entropy(Subset::from_mask(m)))
            .collect();
        EntropyTable::new(ground, values)
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

impl EntropyOracle for EntropyTable {
    fn ground_set(&self) -> &GroundSet {
        &self.ground
    }

    fn entropy(&self, x: Subset) -> Rational {
        assert!(self.ground.contains(x), "subset {x} outside the ground set");
        self.values[x.mask() as usize]
    }

    fn is_integral(&self) -> bool {
        self.values.iter().all(Rational::is_integer)
    }

    fn is_validated(&self) -> bool {
        self.validated
    }
}

/// Checks normalization, monotonicity and submodularity, in that order.
///
/// Monotonicity is checked on single-element steps `X ∖ {i} ⊆ X` and
/// submodularity on the diminishing-returns form
/// `H(X+i) + H(X+j) ≥ H(X) + H(X+i+j)`; both are equivalent to the full axioms.
pub fn validate_polymatroid(table: &EntropyTable) -> std::result::Result<(), PolymatroidViolation> {
    let n = table.ground.len();
    let h = |m: u64| table.values[m as usize];
    if !h(0).is_zero() {
        return Err(PolymatroidViolation::NotNormalized { value: h(0) });
    }
    for mask in 1..1u64 << n {
        for i in Subset::from_mask(mask) {
            let smaller = mask & !(1u64 << i);
            if h(mask) < h(smaller) {
                return Err(PolymatroidViolation::NotMonotone {
                    larger: Subset::from_mask(mask),
                    smaller: Subset::from_mask(smaller),
                });
            }
        }
    }
    for mask in 0..1u64 << n {
        let outside = Subset::full(n).difference(Subset::from_mask(mask));
        for i in outside {
            for j in outside.iter().filter(|&j| j > i) {
                let xi = mask | 1u64 << i;
                let xj = mask | 1u64 << j;
                if h(xi) + h(xj) < h(mask) + h(xi | xj) {
                    return Err(PolymatroidViolation::NotSubmodular {
                        x: Subset::from_mask(xi),
                        y: Subset::from_mask(xj),
                    });
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::example_instance;

    fn table2(values: [i64; 4]) -> Result<EntropyTable> {
        EntropyTable::new(
            GroundSet::new(2).unwrap(),
            values.iter().map(|&v| Rational::from(v)).collect(),
        )
    }

    #[test]
    fn packet_table_is_polymatroid() {
        let table = EntropyTable::from_oracle(&example_instance()).unwrap();
        assert!(table.is_validated());
        assert_eq!(validate_polymatroid(&table), Ok(()));
        assert_eq!(table.entropy(Subset::from_users([3, 4])), Rational::from(7));
    }

    #[test]
    fn submodularity_violation_has_witness() {
        let err = table2([0, 1, 1, 3]).unwrap_err();
        match err {
            Error::NotPolymatroid(PolymatroidViolation::NotSubmodular { x, y }) => {
                assert_eq!((x, y), (Subset::from_users([1]), Subset::from_users([2])));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn monotonicity_violation() {
        let err = table2([0, 2, 1, 1]).unwrap_err();
        assert!(matches!(
            err,
            Error::NotPolymatroid(PolymatroidViolation::NotMonotone { .. })
        ));
    }

    #[test]
    fn normalization_violation() {
        let err = table2([1, 1, 1, 1]).unwrap_err();
        assert!(matches!(
            err,
            Error::NotPolymatroid(PolymatroidViolation::NotNormalized { .. })
        ));
    }

    #[test]
    fn unvalidated_tables_are_marked() {
        let ground = GroundSet::new(2).unwrap();
        let values = [0, 1, 1, 3].iter().map(|&v| Rational::from(v)).collect();
        let table = EntropyTable::unvalidated(ground, values).unwrap();
        assert!(!table.is_validated());
        assert!(table.is_integral());
    }

    #[test]
    fn wrong_length_rejected() {
        let ground = GroundSet::new(3).unwrap();
        assert!(matches!(
            EntropyTable::new(ground, vec![Rational::ZERO; 4]),
            Err(Error::DimensionMismatch {
                expected: 8,
                found: 4
            })
        ));
    }
}
