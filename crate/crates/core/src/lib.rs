//! Scattering on metric quantum graphs: exact and numeric transmission
//! amplitudes, series/parallel composition, and spectral analysis.

pub mod algebra;
pub mod amplitudes;
pub mod catalog;
pub mod composer;
pub mod document;
pub mod graph;
pub mod solver;
pub mod spectra;

pub use algebra::{Polynomial, RationalFunction};
pub use catalog::{build_named, CatalogGraph};
pub use composer::{build_circuit, build_source, parallel, series, Circuit, ComposeError};
pub use graph::{Degree, GraphError, ScatteringGraph, VertexId};
pub use solver::{coefficient, reflection, scatter, transmission, transmission_rational, Scatterer, SolveError};
