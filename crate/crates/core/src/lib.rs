//! Helices of bundles on elliptic curves and the graded algebras they define.
//!
//! * [`exactmath`]: rationals, polynomials, rational power series.
//! * [`ktheory`]: Chern pairs, mutation, helix windows, slopes, Hom dimensions.
//! * [`zalgebra`]: dimension tables, quadratic presentations, canonical-map checks.
//! * [`weierstrass`]: the concrete `d = 2` section algebra of a Weierstrass cubic.
//! * [`p1verify`]: the feasibility search showing `(O, O(n))`, `n >= 2`, on the
//!   projective line does not extend to a helix.
//! * [`cli`]: the command-line runner and suite files.

pub mod cli;
pub mod error;
pub mod exactmath;
pub mod ktheory;
pub mod linalg;
pub mod p1verify;
pub mod report;
pub mod serde_big;
pub mod weierstrass;
pub mod zalgebra;

pub use error::{Error, Result};
pub use report::{Check, VerificationReport};
