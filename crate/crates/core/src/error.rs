use thiserror::Error;

/// Errors surfaced by the library.
///
/// `Infeasible` is deliberately distinct from any verdict: a search that runs
/// out of budget reports that it could not decide, never a default answer.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// A caller violated an operation's precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The pair (n, q) requires gcd(n, p) = 1.
    #[error("n = {n} and the field characteristic {p} are not coprime")]
    NotCoprime { n: u64, p: u64 },

    /// A computation exceeded its configured budget (field size, search
    /// nodes, enumeration steps). The message names the budget that tripped.
    #[error("infeasible within budget: {0}")]
    Infeasible(String),
}

pub type Result<T> = std::result::Result<T, Error>;
