use crate::error::{Error, Result};

/// Default node budget for category comparison and functor searches.
pub const DEFAULT_SEARCH_BUDGET: u64 = 1_000_000;
/// Default cap on candidate families during cone enumeration.
pub const DEFAULT_CONE_BUDGET: u64 = 10_000_000;

/// A counter of search steps. Exceeding it is reported as an error, never
/// as an answer.
#[derive(Debug, Clone)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn remaining(&self) -> u64 {
        self.limit.saturating_sub(self.used)
    }

    pub fn tick(&mut self, context: &str) -> Result<()> {
        self.charge(1, context)
    }

    pub fn charge(&mut self, amount: u64, context: &str) -> Result<()> {
        self.used = self.used.saturating_add(amount);
        if self.used > self.limit {
            Err(Error::BudgetExceeded {
                context: context.to_string(),
                limit: self.limit,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_SEARCH_BUDGET)
    }
}
