use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use crate::error::{Error, Result};

/// Default cap on search nodes before a solver gives up.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;
/// Default cap on `rows * cols` for the exhaustive placement oracle.
pub const DEFAULT_ORACLE_CELL_CAP: usize = 8;

/// Limits shared by every solver.
#[derive(Clone, Debug)]
pub struct SolverConfig {
    /// Maximum number of search nodes (deposition prefixes, templates,
    /// placements) a single call may visit.
    pub node_budget: u64,
    /// Largest `rows * cols` the brute-force BMP oracle accepts.
    pub oracle_cell_cap: usize,
    pub deadline: Option<Instant>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { node_budget: DEFAULT_NODE_BUDGET, oracle_cell_cap: DEFAULT_ORACLE_CELL_CAP, deadline: None }
    }
}

impl SolverConfig {
    pub fn with_node_budget(mut self, budget: u64) -> Self {
        self.node_budget = budget;
        self
    }

    pub fn with_oracle_cell_cap(mut self, cap: usize) -> Self {
        self.oracle_cell_cap = cap;
        self
    }

    pub fn with_deadline(mut self, deadline: Option<Instant>) -> Self {
        self.deadline = deadline;
        self
    }
}

/// Node and branch counts collected during one solver call.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub branches: u64,
}

/// A solver result together with its search statistics.
#[derive(Clone, Debug)]
pub struct Solved<T> {
    pub value: T,
    pub stats: SearchStats,
}

/// Thread-safe node counter enforcing the budget and deadline.
#[derive(Debug)]
pub(crate) struct Meter {
    nodes: AtomicU64,
    branches: AtomicU64,
    budget: u64,
    deadline: Option<Instant>,
}

impl Meter {
    pub(crate) fn new(config: &SolverConfig) -> Self {
        Meter {
            nodes: AtomicU64::new(0),
            branches: AtomicU64::new(0),
            budget: config.node_budget,
            deadline: config.deadline,
        }
    }

    pub(crate) fn tick(&self, n: u64) -> Result<()> {
        let before = self.nodes.fetch_add(n, Ordering::Relaxed);
        if before + n > self.budget {
            return Err(Error::InstanceTooLarge(format!("node budget of {} exhausted", self.budget)));
        }
        // Checking the clock on every node is measurable; every 4096 is enough.
        if let Some(d) = self.deadline {
            if (before >> 12) != ((before + n) >> 12) && Instant::now() > d {
                return Err(Error::InstanceTooLarge("deadline reached".into()));
            }
        }
        Ok(())
    }

    pub(crate) fn branch(&self) {
        self.branch_n(1);
    }

    pub(crate) fn branch_n(&self, n: u64) {
        self.branches.fetch_add(n, Ordering::Relaxed);
    }

    pub(crate) fn stats(&self) -> SearchStats {
        SearchStats { nodes: self.nodes.load(Ordering::Relaxed), branches: self.branches.load(Ordering::Relaxed) }
    }
}

/// Monotonically decreasing upper bound shared between workers.
#[derive(Debug)]
pub(crate) struct SharedBound(AtomicU64);

impl SharedBound {
    pub(crate) fn new(initial: u64) -> Self {
        SharedBound(AtomicU64::new(initial))
    }

    pub(crate) fn get(&self) -> u64 {
        self.0.load(Ordering::Relaxed)
    }

    pub(crate) fn offer(&self, value: u64) {
        self.0.fetch_min(value, Ordering::Relaxed);
    }
}
