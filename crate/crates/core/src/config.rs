/// Order in which the minimal coverings of a node are explored.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Heuristic {
    /// Coverings whose strict-future parts are weakest come first.
    #[default]
    Weakest,
    /// Enumeration order.
    Declared,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Simplify {
    None,
    /// Subsumption-based reduction of pre-moves and merging of adjacent cubes.
    #[default]
    Subsume,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    pub max_nodes: usize,
    pub max_coverings: usize,
    pub max_env_space: u64,
    pub heuristic: Heuristic,
    pub prune_siblings: bool,
    pub simplify: Simplify,
    /// Maximum number of arena edges the game oracle may build.
    pub oracle_budget: u64,
    pub oracle_lazy: bool,
    /// Verification horizon; `None` means `2·(depth+2)`.
    pub horizon: Option<usize>,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            max_nodes: 100_000,
            max_coverings: 64,
            max_env_space: 65_536,
            heuristic: Heuristic::Weakest,
            prune_siblings: false,
            simplify: Simplify::Subsume,
            oracle_budget: 1 << 24,
            oracle_lazy: false,
            horizon: None,
        }
    }
}
