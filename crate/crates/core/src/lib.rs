//! Deciding whether an irreducible cyclic code pair `(n, q)` is standard:
//! closure-based classification, brute-force automorphism oracles, weight
//! predicates, and density tables.

pub mod agree;
pub mod budget;
pub mod classifier;
pub mod cycliccode;
pub mod density;
pub mod error;
pub mod gfield;
pub mod numtheory;
pub mod oracle;
pub mod schmidtwhite;

pub use budget::Budgets;
pub use error::{Error, Result};
pub use numtheory::FieldDesc;
