//! Exact Green's function for bulk-Comptonized photon spectra in an
//! accretion column, built from a hypergeometric eigenfunction expansion.
//!
//! The crate is organised bottom-up:
//!
//! * [`specfun`]: gamma family, Gauss hypergeometric series, Jacobi polynomials.
//! * [`quadrature`]: adaptive integration against the weight `y^(-3/4)`.
//! * [`flow`]: dimensional column geometry and the `x <-> y` mapping.
//! * [`eigenbasis`]: fundamental solutions, Wronskian and their `lambda` derivatives.
//! * [`spectral`]: eigenvalues, normalizations, the Green's function and convolution.
//! * [`identities`]: energy moments, the summation formula and Jacobi generating functions.

pub mod eigenbasis;
pub mod error;
pub mod flow;
pub mod identities;
pub mod quadrature;
pub mod spectral;
pub mod specfun;

pub use error::{Error, Result};
