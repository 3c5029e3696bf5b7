use std::collections::HashMap;

use super::{solve_rsr, DrcrSolution};
use crate::error::Result;
use crate::types::Pip;

/// Memoizes [`solve_rsr`] on exact `(ℓ, u, δ)` keys for one buy cost.
#[derive(Clone, Debug)]
pub struct RsrCache {
    buy_cost: u64,
    enabled: bool,
    solutions: HashMap<(u64, u64, u64), DrcrSolution>,
    solves: usize,
}

impl RsrCache {
    pub fn new(buy_cost: u64) -> Self {
        RsrCache {
            buy_cost,
            enabled: true,
            solutions: HashMap::new(),
            solves: 0,
        }
    }

    /// A cache that never stores anything; every lookup solves afresh.
    pub fn disabled(buy_cost: u64) -> Self {
        RsrCache {
            enabled: false,
            ..RsrCache::new(buy_cost)
        }
    }

    pub fn buy_cost(&self) -> u64 {
        self.buy_cost
    }

    /// Number of linear programs solved so far.
    pub fn solves(&self) -> usize {
        self.solves
    }

    pub fn get(&mut self, pip: &Pip) -> Result<DrcrSolution> {
        let key = (
            pip.lower().to_bits(),
            pip.upper().to_bits(),
            pip.delta().to_bits(),
        );
        if let Some(hit) = self.solutions.get(&key) {
            return Ok(hit.clone());
        }
        let solution = solve_rsr(pip, self.buy_cost)?;
        self.solves += 1;
        if self.enabled {
            self.solutions.insert(key, solution.clone());
        }
        Ok(solution)
    }
}
