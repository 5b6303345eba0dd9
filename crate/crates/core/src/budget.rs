use crate::error::{Error, Result};

/// Step counter for exhaustive searches. Exceeding the limit is a resource
/// error, never a silent truncation of the search space.
#[derive(Debug, Clone)]
pub struct Budget {
    limit: u64,
    spent: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, spent: 0 }
    }

    pub fn spend(&mut self, steps: u64) -> Result<()> {
        self.spent = self.spent.saturating_add(steps);
        if self.spent > self.limit {
            Err(Error::BudgetExceeded {
                spent: self.spent,
                limit: self.limit,
            })
        } else {
            Ok(())
        }
    }

    pub fn spent(&self) -> u64 {
        self.spent
    }

    pub fn is_exhausted(&self) -> bool {
        self.spent > self.limit
    }
}

impl Default for Budget {
    /// Default ceiling of 10^8 elementary steps (adjacency checks or search
    /// nodes), enough for every shipped fixture and the small-corpus sweeps.
    fn default() -> Self {
        Budget::new(100_000_000)
    }
}
