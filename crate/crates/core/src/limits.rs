//! Resource budgets for the exhaustive oracles and the DP tables.
//!
//! Every search that is exponential in some input parameter takes a
//! [`Limits`] value and refuses to start when the search space would
//! exceed the configured budget, so callers get a clean error instead
//! of a runaway computation.

/// Budgets for brute-force searches and membership tables.
#[derive(Debug, Clone)]
pub struct Limits {
    /// Max variables per quantifier block for the QBF oracle (2^(2n) work).
    pub qbf_max_vars: usize,
    /// Max terms for expression-language enumeration (2^s sums).
    pub expr_max_terms: usize,
    /// Max number of coefficient vectors enumerated by the bounded
    /// multidimensional containment and promise checks.
    pub enum_budget: u64,
    /// Max index (inclusive) a 1-D membership table may be built up to.
    pub dp_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            qbf_max_vars: 12,
            expr_max_terms: 20,
            enum_budget: 1 << 22,
            dp_budget: 1 << 24,
        }
    }
}

impl Limits {
    /// Default limits with a different DP budget. The aggregation step
    /// roughly squares the right-hand side per fold, so callers that
    /// decide aggregated 1-D instances need more DP headroom than the
    /// desk-scale default.
    pub fn with_dp_budget(dp_budget: u64) -> Self {
        Limits {
            dp_budget,
            ..Limits::default()
        }
    }
}
