//! Scalar special functions: gamma family, Gauss hypergeometric series and
//! Jacobi polynomials.

mod gamma;
mod hypergeometric;
mod jacobi;

pub use gamma::{
    cos_pi, digamma, digamma_rgamma, gamma, gamma_ratio, ln_gamma, pochhammer, rgamma,
    rgamma_product, sin_pi, EULER_GAMMA,
};
pub use hypergeometric::{gauss_at_one, hyp2f1, hyp2f1_logcase, MAX_TERMS, Y_SWITCH};
pub use jacobi::{jacobi_p, jacobi_p_all, ALPHA as JACOBI_ALPHA};

pub(crate) use hypergeometric::{logcase_unchecked, series as hyp2f1_series};
pub(crate) use jacobi::hyp_ladder;
