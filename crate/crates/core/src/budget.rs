//! Search budgets shared by every exhaustive routine.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Limits for one exhaustive search.
///
/// `depth_cap` bounds path lengths where a routine has no natural bound of its own;
/// `sample_limit` and `seed` drive the sampled fallback of quantifier checks that are too large
/// to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub node_limit: u64,
    pub time_limit: Duration,
    pub depth_cap: Option<usize>,
    pub sample_limit: usize,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            node_limit: 10_000_000,
            time_limit: Duration::from_secs(30),
            depth_cap: None,
            sample_limit: 2_000,
            seed: 0,
        }
    }
}

impl SearchBudget {
    pub fn with_nodes(node_limit: u64) -> Self {
        SearchBudget {
            node_limit,
            ..Self::default()
        }
    }

    pub fn meter(&self) -> Meter {
        Meter::new(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("search budget exhausted after {nodes} nodes")]
pub struct Exhausted {
    pub nodes: u64,
}

/// Counts search nodes against a budget. The clock is read once every 1024 ticks.
#[derive(Debug, Clone)]
pub struct Meter {
    nodes: u64,
    limit: u64,
    deadline: Option<Instant>,
}

impl Meter {
    pub fn new(budget: &SearchBudget) -> Self {
        Meter {
            nodes: 0,
            limit: budget.node_limit,
            deadline: Instant::now().checked_add(budget.time_limit),
        }
    }

    pub fn unlimited() -> Self {
        Meter {
            nodes: 0,
            limit: u64::MAX,
            deadline: None,
        }
    }

    pub fn tick(&mut self) -> Result<(), Exhausted> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Exhausted { nodes: self.nodes });
        }
        if self.nodes.is_multiple_of(1024) {
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    return Err(Exhausted { nodes: self.nodes });
                }
            }
        }
        Ok(())
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn node_limit_trips() {
        let mut m = SearchBudget::with_nodes(3).meter();
        assert!(m.tick().is_ok());
        assert!(m.tick().is_ok());
        assert!(m.tick().is_ok());
        assert_eq!(m.tick(), Err(Exhausted { nodes: 4 }));
    }

    #[test]
    fn unlimited_never_trips() {
        let mut m = Meter::unlimited();
        for _ in 0..5000 {
            m.tick().unwrap();
        }
        assert_eq!(m.nodes(), 5000);
    }
}
