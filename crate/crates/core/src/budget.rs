use crate::error::{Error, Result};

/// Upper limits for the exhaustive enumerations. Exceeding one is a hard
/// [`Error::Capacity`]; nothing in the crate falls back to sampling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Members of a single affine space (`q^dim`), also hyperplane counts.
    pub members: u64,
    /// Elements of `GL_n(F_q)` scanned by congruence routines.
    pub group: u64,
    /// Affine subspaces covered by a search.
    pub spaces: u64,
    /// Linear maps enumerated by the range-compatibility classifier.
    pub maps: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            members: 10_000_000,
            group: 100_000_000,
            spaces: 10_000_000,
            maps: 10_000_000,
        }
    }
}

pub(crate) fn check(what: &str, needed: u128, budget: u64) -> Result<()> {
    if needed > budget as u128 {
        Err(Error::capacity(what, needed, budget))
    } else {
        Ok(())
    }
}

/// `base^exp` saturating at `u128::MAX`.
pub(crate) fn pow_sat(base: u64, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}
