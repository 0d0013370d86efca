//! Vertex scattering amplitudes under δ-type coupling.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum AmplitudeError {
    #[error("vertex degree must be at least 1")]
    ZeroDegree,
    #[error("vertex amplitudes are singular: i*k*d equals alpha (d = {degree}, alpha = {alpha}, k = {k})")]
    Singular { degree: u32, alpha: f64, k: Complex64 },
}

/// Reflection amplitude back into the arrival edge and transmission
/// amplitude into each other edge or lead.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AmplitudePair {
    pub r: Complex64,
    pub t: Complex64,
}

/// Exact Neumann-Kirchhoff amplitudes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactAmplitudePair {
    pub r: BigRational,
    pub t: BigRational,
}

/// `r = (α - (d-2) i k) / (i k d - α)`, `t = 2 i k / (i k d - α)`.
pub fn delta_amplitudes(degree: u32, alpha: f64, k: Complex64) -> Result<AmplitudePair, AmplitudeError> {
    if degree == 0 {
        return Err(AmplitudeError::ZeroDegree);
    }
    let d = degree as f64;
    let ik = Complex64::i() * k;
    let den = ik * d - alpha;
    if den.norm() == 0.0 {
        return Err(AmplitudeError::Singular { degree, alpha, k });
    }
    Ok(AmplitudePair {
        r: (alpha - (d - 2.0) * ik) / den,
        t: 2.0 * ik / den,
    })
}

/// `r = 2/d - 1`, `t = 2/d`, independent of k.
pub fn nk_amplitudes(degree: u32) -> Result<ExactAmplitudePair, AmplitudeError> {
    if degree == 0 {
        return Err(AmplitudeError::ZeroDegree);
    }
    let t = BigRational::new(BigInt::from(2), BigInt::from(degree));
    Ok(ExactAmplitudePair {
        r: &t - BigRational::from_integer(BigInt::from(1)),
        t,
    })
}
