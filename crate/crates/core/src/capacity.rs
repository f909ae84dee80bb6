use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Enumeration bounds for the exhaustive counting routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Capacity {
    /// Largest `n` accepted by the global counts (`count_gamma_exact`,
    /// `count_xf_solutions`, `count_parity_solutions`).
    pub max_n_count: u64,
    /// Largest `p^(8t)` accepted by the naive density oracle.
    pub max_pt_naive: u128,
    /// Largest `p^(2t)` accepted by the reduced density oracle.
    pub max_pt_reduced: u128,
}

impl Default for Capacity {
    fn default() -> Self {
        Capacity {
            max_n_count: 200,
            max_pt_naive: 30_000_000,
            max_pt_reduced: 1_000_000,
        }
    }
}

impl Capacity {
    pub(crate) fn check_n(&self, n: u64) -> Result<()> {
        if n > self.max_n_count {
            return Err(Error::Capacity {
                what: "n",
                requested: n as u128,
                limit: self.max_n_count as u128,
            });
        }
        Ok(())
    }
}
