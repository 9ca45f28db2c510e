//! Random matrices built from codewords of linear codes over finite fields,
//! and statistics measuring how close their spectra are to the semicircle law.
//!
//! The pipeline is: build a code ([`codes`]), certify its dual distance,
//! sample codewords and map them through the additive character
//! ([`matrix`]), diagonalize the centered Gram matrix ([`eigen`]) and
//! compare the spectrum with the semicircle ([`semicircle`], [`stats`]).

pub mod codes;
pub mod eigen;
pub mod error;
pub mod field;
pub mod harness;
pub mod matrix;
pub mod seed;
pub mod semicircle;
pub mod stats;

pub use codes::{
    augment_all_ones, dual_distance_at_least, dual_distance_exact, gold_code, reed_muller_1,
    DualDistanceCertificate, LinearCode, NamedCode,
};
pub use eigen::{green_function, hermitian_eigenvalues, ComplexMatrix, Spectrum};
pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec};
pub use matrix::{
    centered_matrix, coherence_statistic, gram_matrix, sample_codewords, CharacterMap,
    CodewordMatrix, SamplingMode,
};
pub use semicircle::{sc_cdf, sc_interval, sc_pdf, sc_stieltjes};
pub use stats::{
    concentration_probe, delta_estimate, discrepancy, empirical_stieltjes, moment_oracle,
    Discrepancy, DiscrepancyReport, EmpiricalSpectralDistribution,
};
