//! Basis-independent quantum coherence of two Unruh-DeWitt detectors, one of
//! them uniformly accelerated.
//!
//! The crate is layered bottom-up:
//!
//! * [`matrix`], [`eigen`], [`entropy`]: small dense Hermitian linear algebra,
//! * [`coherence`]: total, collective and localized coherence of any state,
//! * [`model`]: the accelerated-detector state and its closed-form spectra,
//! * [`sweep`]: grid evaluation, verification scans and minimum search,
//! * [`cli`]: the `unruh-coherence` command-line tool.

pub mod cli;
pub mod coherence;
pub mod eigen;
pub mod entropy;
pub mod error;
pub mod matrix;
pub mod model;
pub mod sweep;

pub use coherence::{
    coherence_collective, coherence_localized, coherence_total, coherence_triple, divergence_sqrt,
    product_surrogate, CoherenceTriple,
};
pub use eigen::hermitian_eigenvalues;
pub use entropy::{shannon_entropy, von_neumann_entropy};
pub use error::{Error, Result};
pub use matrix::{
    equal_mixture, maximally_mixed, partial_trace, tensor_product, ComplexMatrix, DensityMatrix,
    Spectrum,
};
pub use model::{
    abg_from_params, closed_form_spectra, coherence_closed_form, detector_state,
    nu_squared_from_physical, q_from_acceleration, ClosedFormSpectra, ModelParams, ModelPoint,
    PhysicalParams, Populations,
};
pub use sweep::{
    find_min_c_total, run_sweep, verify_grid, SweepRecord, SweepSpec, VerificationReport,
};
