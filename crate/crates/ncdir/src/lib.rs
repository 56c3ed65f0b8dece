//! Non-central Dirichlet (NcDir) distribution toolkit.
//!
//! The NcDir distribution is the analogue of the Dirichlet obtained by
//! replacing the chi-squared variables in its constructive definition with
//! non-central ones. This crate implements the model end to end:
//!
//! - [`specfun`]: scalar special-function kernels — Pochhammer symbols and
//!   their identities, the generalized hypergeometric series `pFq`, Kummer's
//!   confluent function `1F1` with its contiguous recurrences, and the
//!   m-variate Humbert `Ψ₂` function;
//! - [`dist`]: densities (mixture and perturbation forms), the conditional
//!   density given the total latent Poisson count, and three sampling routes
//!   that realize the same distribution;
//! - [`moments`]: mixed raw moments of the bivariate distribution by three
//!   algorithms — definition-based triple series, double series of `₂F₂`
//!   functions, and a doubly-finite sum — plus order-(1,1) closed forms;
//! - [`sim`]: a replicated Monte-Carlo validation harness for the finite-sum
//!   moment formula and a timing harness comparing it against the series
//!   formula.

pub mod dist;
pub mod error;
pub mod moments;
pub mod series;
pub mod sim;
pub mod specfun;

pub use error::{Error, Result};
pub use series::SeriesControl;
