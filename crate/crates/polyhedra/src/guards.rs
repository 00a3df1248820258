/// Resource guards for the search and enumeration engines.
///
/// Exceeding a guard raises [`crate::Error::ResourceLimit`] instead of
/// silently truncating, so "unknown" stays distinct from "fails".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guards {
    /// Backtracking node budget for embedding and coloring searches.
    pub node_budget: u64,
    /// Truncation horizon (in vertices) for depth search and other
    /// oracle-consuming operations.
    pub horizon: usize,
    /// Maximum number of colorings the exhaustive arrow oracle may visit.
    pub exhaustive_colorings: u64,
    /// Cap on the number of items an enumeration may produce.
    pub enumeration_budget: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            node_budget: 10_000_000,
            horizon: 1 << 16,
            exhaustive_colorings: 1 << 20,
            enumeration_budget: 2_000_000,
        }
    }
}

impl Guards {
    /// Guards scaled down for quick interactive runs.
    pub fn with_node_budget(mut self, budget: u64) -> Self {
        self.node_budget = budget;
        self
    }

    pub fn with_horizon(mut self, horizon: usize) -> Self {
        self.horizon = horizon;
        self
    }
}
