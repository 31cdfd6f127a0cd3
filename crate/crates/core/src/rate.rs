use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::subset::Subset;

/// Per-user transmission rates `r_V`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RateVector {
    rates: Vec<Rational>,
}

impl RateVector {
    pub fn new(rates: Vec<Rational>) -> Self {
        RateVector { rates }
    }

    /// Every coordinate equal to `value`.
    pub fn uniform(n: usize, value: Rational) -> Self {
        RateVector {
            rates: vec![value; n],
        }
    }

    pub fn len(&self) -> usize {
        self.rates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rates.is_empty()
    }

    pub fn rates(&self) -> &[Rational] {
        &self.rates
    }

    pub fn into_rates(self) -> Vec<Rational> {
        self.rates
    }

    /// `r(X)`, the total rate of the users in `x`.
    pub fn subset_sum(&self, x: Subset) -> Rational {
        x.iter().map(|i| self.rates[i]).sum()
    }

    pub fn total(&self) -> Rational {
        self.rates.iter().sum()
    }

    pub fn add_to(&mut self, i: usize, delta: Rational) {
        self.rates[i] += delta;
    }

    pub fn set(&mut self, i: usize, value: Rational) {
        self.rates[i] = value;
    }

    /// `w · r`.
    pub fn weighted_sum(&self, weights: &[Rational]) -> Result<Rational> {
        if weights.len() != self.rates.len() {
            return Err(Error::DimensionMismatch {
                expected: self.rates.len(),
                found: weights.len(),
            });
        }
        Ok(self.rates.iter().zip(weights).map(|(r, w)| *r * *w).sum())
    }

    pub fn is_integral(&self) -> bool {
        self.rates.iter().all(Rational::is_integer)
    }
}

impl Index<usize> for RateVector {
    type Output = Rational;

    fn index(&self, i: usize) -> &Rational {
        &self.rates[i]
    }
}

impl fmt::Display for RateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, r) in self.rates.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for RateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A linear ordering `(φ_1, .., φ_n)` of the users.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinearOrdering {
    phi: Vec<usize>,
}

impl LinearOrdering {
    /// `phi` holds 0-based user indices and must be a permutation of `0..phi.len()`.
    pub fn new(phi: Vec<usize>) -> Result<Self> {
        let n = phi.len();
        let mut seen = vec![false; n];
        for &i in &phi {
            if i >= n {
                return Err(Error::InvalidOrdering(format!(
                    "user index {} out of range",
                    i + 1
                )));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidOrdering(format!(
                    "user {} appears twice",
                    i + 1
                )));
            }
        }
        Ok(LinearOrdering { phi })
    }

    /// Builds an ordering from 1-based user numbers, e.g. `(4,3,2,5,1)`.
    pub fn from_users(users: &[usize]) -> Result<Self> {
        if users.contains(&0) {
            return Err(Error::InvalidOrdering("user numbers start at 1".into()));
        }
        LinearOrdering::new(users.iter().map(|u| u - 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        LinearOrdering {
            phi: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.phi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phi.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.phi
    }

    pub fn to_users(&self) -> Vec<usize> {
        self.phi.iter().map(|i| i + 1).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.phi.iter().copied()
    }
}

impl fmt::Display for LinearOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let users: Vec<String> = self.phi.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "({})", users.join(","))
    }
}
