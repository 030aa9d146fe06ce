//! Barnes-Mittag-Leffler special functions, the induced Hadamard-convolution
//! operator on meromorphic functions of the form `1/z + Σ cₙ zⁿ⁻¹`, and
//! numerical verifiers for the spirallike and convex subclasses it defines.
//!
//! Module map:
//!
//! - [`special_fn`]: Gamma on the positive reals, two-parameter and Barnes
//!   Mittag-Leffler functions by adaptive series summation.
//! - [`laurent`]: truncated Laurent series in the basis `{1/z, 1, z, z², …}`.
//! - [`bml_operator`]: normalized kernel coefficients `hₙ` and the operator
//!   `f ↦ 𝓔 ∗ f` with its coefficientwise inverse.
//! - [`classes`]: subordination targets, direct and convolution membership
//!   checks, extremal members and constructed non-members.
//! - [`integral_repr`]: members built from Schwarz functions by quadrature
//!   and by exponentiated power series.
//! - [`cli`]: argument parsing, the function-spec text format and the
//!   command dispatcher behind the `mlconv` binary.

pub mod bml_operator;
pub mod classes;
pub mod cli;
pub mod error;
pub mod integral_repr;
pub mod laurent;
pub(crate) mod numeric;
pub mod quadrature;
pub mod special_fn;

pub use error::{Error, Result};
pub use num_complex::Complex64;
