//! Eigenvalue search, eigenmode assembly, the Green's function series and
//! convolution with tabulated source spectra.

mod evaluator;
mod modes;
mod problem;
mod roots;
mod source;

pub use evaluator::{
    build_evaluator, delta_completeness_check, greens_function, log_grid, GreensEvaluator, DEFAULT_TERMS,
    GREENS_PREFACTOR,
};
pub use modes::{
    eigenfunction_g, normalization, normalization_closed_form, unabsorbed_normalization, EigenMode,
};
pub use problem::{eigen_residual, eigen_residual_scaled, ProblemSpec, Y0_MAX, Y0_MIN};
pub use roots::{find_eigenvalues, scan_eigenvalues, unabsorbed_eigenvalue, MAX_EIGENVALUES};
pub use source::{convolve_spectrum, convolve_spectrum_many, SourceSpectrum};
