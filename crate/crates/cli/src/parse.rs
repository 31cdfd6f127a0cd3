//! Comma-separated argument lists.

use omniscience::{LinearOrdering, Rational};

use crate::error::{CliError, Result};

/// `"4,3,2,5,1"` or `"(4,3,2,5,1)"`: 1-based user numbers.
pub fn ordering(text: &str) -> Result<LinearOrdering> {
    let users = list(text)
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| CliError::Input(format!("bad user number {t:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LinearOrdering::from_users(&users)?)
}

/// `"4,1/2,0.3"`: exact rationals, decimals read as exact.
pub fn rationals(text: &str) -> Result<Vec<Rational>> {
    list(text).map(rational).collect()
}

pub fn rational(text: &str) -> Result<Rational> {
    text.trim()
        .parse()
        .map_err(|_| CliError::Input(format!("bad rational {text:?}")))
}

fn list(text: &str) -> impl Iterator<Item = &str> {
    text.trim()
        .trim_start_matches('(')
        .trim_end_matches(')')
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
}
