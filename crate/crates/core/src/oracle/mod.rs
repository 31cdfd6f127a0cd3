//! Entropy oracles `H(X)` over subsets of users.
//!
//! Two instance classes are supported: the packet model of cooperative data
//! exchange, where `H(X)` counts the distinct packets held by `X`, and an
//! explicit table of (possibly fractional) values for every subset.

mod file;
mod packet;
mod table;

pub use file::{Instance, InstanceFile};
pub use packet::PacketInstance;
pub use table::{validate_polymatroid, EntropyTable, PolymatroidViolation, TABLE_LIMIT};

use crate::rational::Rational;
use crate::subset::{GroundSet, Subset};

/// Evaluates the entropy `H(X)` of a set of users.
///
/// Implementations must be pure and normalized (`H(∅) = 0`). The solvers
/// further assume the polymatroid axioms; see [`validate_polymatroid`].
#[allow(clippy::len_without_is_empty)]
pub trait EntropyOracle: Send + Sync {
    fn ground_set(&self) -> &GroundSet;

    /// `H(X)`. `x` must lie inside the ground set.
    fn entropy(&self, x: Subset) -> Rational;

    /// True when every value `H(X)` is an integer.
    fn is_integral(&self) -> bool;

    /// False when the polymatroid axioms were not checked at construction.
    fn is_validated(&self) -> bool {
        true
    }

    fn len(&self) -> usize {
        self.ground_set().len()
    }

    /// `H(V)`.
    fn total_entropy(&self) -> Rational {
        self.entropy(self.ground_set().full())
    }

    /// `H(X | Y) = H(X ∪ Y) − H(Y)`.
    fn conditional_entropy(&self, x: Subset, y: Subset) -> Rational {
        self.entropy(x.union(y)) - self.entropy(y)
    }
}

impl<O: EntropyOracle + ?Sized> EntropyOracle for &O {
    fn ground_set(&self) -> &GroundSet {
        (**self).ground_set()
    }

    fn entropy(&self, x: Subset) -> Rational {
        (**self).entropy(x)
    }

    fn is_integral(&self) -> bool {
        (**self).is_integral()
    }

    fn is_validated(&self) -> bool {
        (**self).is_validated()
    }
}

impl<O: EntropyOracle + ?Sized> EntropyOracle for Box<O> {
    fn ground_set(&self) -> &GroundSet {
        (**self).ground_set()
    }

    fn entropy(&self, x: Subset) -> Rational {
        (**self).entropy(x)
    }

    fn is_integral(&self) -> bool {
        (**self).is_integral()
    }

    fn is_validated(&self) -> bool {
        (**self).is_validated()
    }
}
