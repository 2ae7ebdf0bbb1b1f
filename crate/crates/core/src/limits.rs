/// Resource caps shared by parsing, searches and sweeps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest accepted carrier.
    pub max_elements: usize,
    /// Node budget for backtracking searches.
    pub node_budget: u64,
    /// Largest closed family materialised.
    pub family_cap: usize,
    /// Largest block size enumerated.
    pub block_size_cap: usize,
    /// Largest exhaustive enumeration size.
    pub enumeration_cap: usize,
    /// Largest carrier for checks that scan all subsets.
    pub subset_scan_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_elements: 64,
            node_budget: 5_000_000,
            family_cap: 1 << 16,
            block_size_cap: 20,
            enumeration_cap: 8,
            subset_scan_cap: 16,
        }
    }
}

impl Limits {
    /// Defaults overridden by `ORTHO_MAX_ELEMENTS` and `ORTHO_NODE_BUDGET`.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(v) = read_env("ORTHO_MAX_ELEMENTS") {
            limits.max_elements = v as usize;
        }
        if let Some(v) = read_env("ORTHO_NODE_BUDGET") {
            limits.node_budget = v;
        }
        limits
    }
}

fn read_env(key: &str) -> Option<u64> {
    std::env::var(key).ok()?.trim().parse().ok()
}
