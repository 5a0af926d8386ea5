use crate::{Error, Result};

/// Size limits enforced before any enumeration or recurrence is started.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Degree bound for recurrences, moments and the moment functional.
    pub degree: usize,
    /// Degree bound for enumerating all matchings of a degree.
    pub matchings: usize,
    /// Degree bound for the signed matching expansion of `L_n`.
    pub laguerre_expansion: usize,
    /// Bound on `N` for marked perfect matchings and derangements.
    pub marked: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            degree: 8,
            matchings: 8,
            laguerre_expansion: 6,
            marked: 7,
        }
    }
}

impl Limits {
    /// Every limit set to `n`.
    pub const fn uniform(n: usize) -> Self {
        Limits {
            degree: n,
            matchings: n,
            laguerre_expansion: n,
            marked: n,
        }
    }

    /// Raises every limit to at least `n`.
    pub fn at_least(self, n: usize) -> Self {
        Limits {
            degree: self.degree.max(n),
            matchings: self.matchings.max(n),
            laguerre_expansion: self.laguerre_expansion.max(n),
            marked: self.marked.max(n),
        }
    }
}

pub(crate) fn check(what: &'static str, n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::LimitExceeded { what, n, limit })
    } else {
        Ok(())
    }
}
