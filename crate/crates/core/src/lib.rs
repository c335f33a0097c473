//! Exact computation of mixed multiplicities for systems of monomial ideals,
//! plus mechanical verification of the identities relating them.
//!
//! Everything is exact: lengths are monomial counts, interpolation is done
//! with fraction-free elimination over big integers, and every verifier
//! compares integers, never floats.

pub mod context;
pub mod corpus;
pub mod count;
pub mod error;
pub mod hilbert;
pub mod ideal;
pub mod instance;
pub mod monomial;
pub mod poly;
pub mod primes;
pub mod sequence;
pub mod subquotient;
pub mod system;
pub mod verify;

pub use context::{Ctx, VariableContext};
pub use error::{Error, Result};
pub use ideal::MonomialIdeal;
pub use monomial::Monomial;
pub use subquotient::MonomialSubquotient;
pub use system::MultiIdealSystem;
