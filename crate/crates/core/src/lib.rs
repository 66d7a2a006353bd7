//! Regularization and renormalization of one-loop scalar integrals by
//! differentiation in the mass parameter.
//!
//! A divergent loop integral is differentiated in M² until it converges,
//! evaluated in closed form, and integrated back. The divergence turns into a
//! ledger of arbitrary constants, which a physical condition then fixes.
//!
//! * [`kernel`]: the symbolic reduction with exact rational coefficients
//! * [`feynpar`]: Feynman-parameter mass function and exact x-integration
//! * [`qed`]: electron self-energy, the on-shell scale and a Lamb-shift estimate
//! * [`phi4`]: λΦ⁴ with a broken vacuum, the mass-ratio invariant and the
//!   resummation pole
//! * [`oracle`]: finite-cutoff quadrature checks, independent of [`kernel`]
//! * [`cli`]: the `loopreg` command-line front end and its reports

pub mod cli;
pub mod demo;
pub mod error;
pub mod feynpar;
pub mod kernel;
pub mod numeric;
pub mod oracle;
pub mod phi4;
pub mod qed;
pub mod report;

pub use error::{Error, Result};
pub use kernel::{Rational, RegularizedValue, ScalarLoopIntegral};
