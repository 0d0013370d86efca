//! Transmission spectra: sweeps over kℓ, coefficient differences,
//! suppression bands, peaks and resonance poles.

mod analysis;
mod export;
mod poles;
mod sweep;

use thiserror::Error;

use crate::solver::SolveError;

pub use analysis::{
    difference, find_peaks, suppression_bands, zero_crossings, zero_crossings_refined, Band, Peak,
};
pub use export::{
    bands_csv, difference_csv, format_sig, peaks_csv, resonances_csv, spectrum_csv,
};
pub use poles::{find_poles, Resonance, Strip};
pub use sweep::{sweep, sweep_with, Sample, Spectrum, SweepOptions};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectraError {
    #[error("invalid range: need finite lo < hi, got [{0}, {1}]")]
    InvalidRange(f64, f64),
    #[error("a sweep needs at least 2 base samples, got {0}")]
    TooFewSamples(usize),
    #[error("spectra are sampled on different grids")]
    GridMismatch,
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("root extraction failed: {0}")]
    Roots(#[from] crate::algebra::AlgebraError),
}
