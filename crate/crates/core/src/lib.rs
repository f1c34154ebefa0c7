//! Numerical analysis of optical squeeze operators.
//!
//! Three independent realizations of the single-mode squeeze operator are
//! implemented and cross-validated:
//!
//! * the exact dilation action on position-space wavefunctions,
//! * discrete biorthogonal expansions over resonant (Gamow-type) states
//!   with real eigenvalue ladders `exp(+-r(n + 1/2))`,
//! * the continuous Mellin-type spectral resolution over generalized
//!   power-law eigenfunctions, including analytic continuation to the
//!   resonance poles.
//!
//! N-mode squeezing reduces to single-mode factors through a Takagi-style
//! diagonalization of the complex symmetric squeeze matrix. A truncated
//! Fock-space oracle provides an independent matrix-exponential cross-check
//! for every analytic claim at small scale.
//!
//! See the `examples/` directory for one runnable example per capability,
//! and the `sqz` binary for file-based batch use.

pub mod error;
pub mod fockoracle;
pub mod multimode;
pub mod report;
pub mod singlemode;
pub mod spectral;
pub mod states;

pub use error::{Error, Result};
pub use states::{GridFunction, GridSpec, SqueezeSpec, TaylorState};
