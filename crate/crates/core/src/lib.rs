//! Constacyclic codes of length `p^k n` over `Z/p^s + u Z/p^s` (`u^2 = 0`)
//! with shift constant `1 + p w`.
//!
//! The crate factors `y^n - 1` over `Z/p^s`, splits the ambient ring into
//! finite chain rings through idempotents, classifies every ideal of each
//! local piece `R_i + u R_i`, and from there counts, enumerates, dualizes
//! and tests self-duality of codes. Brute-force oracles in [`oracle`]
//! recompute the set-level facts on small instances.

pub mod chainring;
pub mod cli;
pub mod codes;
pub mod crt;
pub mod error;
pub mod factorization;
pub mod ideals;
pub mod modring;
pub mod oracle;
pub mod par;

pub use error::{Error, Result};
