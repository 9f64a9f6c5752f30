//! Resource limits for the expensive searches. Every budgeted routine
//! reports [`crate::Error::Infeasible`] when its limit trips, so "ran out
//! of budget" is always distinguishable from a genuine verdict.

/// Limits shared by the field builder, the enumerators, the stabilizer
/// search, and the recurrence-witness scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budgets {
    /// Largest field that may be materialized at all.
    pub field_size: u64,
    /// Largest field that full-enumeration routines (codewords, weight
    /// distributions, audits) will sweep.
    pub enum_size: u64,
    /// Candidate tests allowed in the linear-stabilizer backtracking search.
    pub oracle_nodes: u64,
    /// Recurrence steps allowed in the witness scan.
    pub lrs_steps: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            field_size: 1 << 24,
            enum_size: 1 << 20,
            oracle_nodes: 100_000_000,
            lrs_steps: 10_000_000,
        }
    }
}
