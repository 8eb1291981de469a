//! Verification toolkit for the Mahler measure of the K3 family
//! `P_k = X + 1/X + Y + 1/Y + Z + 1/Z - k` and the singular member `P_10`.
//!
//! The crate recomputes, by independent routes, every checkable quantity in
//! the chain
//!
//! ```text
//! m(P_10) = 2 d_3 + (1/9) |det T|^{3/2} / pi^3 * L(Y_10, 3)
//! ```
//!
//! torus quadrature, Eisenstein-Kronecker lattice sums, eta-product newform
//! coefficients, finite-field point counts, and the exact Neron-Severi
//! lattice algebra. See the `verify` CLI (`k3ml verify-theorem1`) for the
//! cross-agreement harness.

pub mod counting;
pub mod error;
pub mod exact;
pub mod fibration;
pub mod lattice;
pub mod mahler;
pub mod modular;
pub mod numeric;
pub mod report;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
