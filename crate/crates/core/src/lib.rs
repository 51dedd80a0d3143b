//! Exact weighted sum-of-squares certificates for nonnegative univariate
//! polynomials with rational coefficients.
//!
//! Two decomposition algorithms are provided:
//!
//! - [`univsos1`] peels quadratic under-approximations off the polynomial at
//!   rational points near its smallest global minimizer, recursing on
//!   square-free parts.
//! - [`univsos2`] perturbs the square-free part, approximates it by two
//!   squares from its complex roots and absorbs the exact remainder into the
//!   perturbation.
//!
//! Both return a [`WeightedSosCert`] `f = sum c_i s_i^2` with `c_i >= 0`, and
//! every certificate can be checked in exact rational arithmetic with
//! [`certificate::verify_exact`].

mod bigfloat;
pub mod bench;
pub mod certificate;
pub mod cli;
pub mod complex_roots;
pub mod error;
mod intpoly;
pub mod poly;
pub mod real_roots;
pub mod squarefree;
pub mod text;
pub mod transform;
pub mod univsos1;
pub mod univsos2;

pub use error::{Error, Result};
pub use poly::{BitsizeReport, Rational, RationalPoly};
pub use certificate::{verify_exact, WeightedSosCert};
