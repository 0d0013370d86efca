//! All complex roots of an exact polynomial via simultaneous Aberth-Ehrlich
//! iteration in double precision, followed by a Newton polish step.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use super::poly::Polynomial;
use super::AlgebraError;

pub const DEFAULT_ROOT_TOL: f64 = 1e-10;

const MAX_ITERATIONS: usize = 2000;

/// Every root of `p` with multiplicity, ordered by `(re, im)`.
///
/// Each root satisfies `|p(root)| <= tol * sum_i |c_i| |root|^i`.
pub fn roots(p: &Polynomial, tol: f64) -> Result<Vec<Complex64>, AlgebraError> {
    let coeffs = f64_coefficients(p)?;
    let mut out = Vec::new();

    let zeros_at_origin = coeffs.iter().take_while(|c| **c == 0.0).count();
    out.extend(std::iter::repeat_n(Complex64::zero(), zeros_at_origin));
    let coeffs = &coeffs[zeros_at_origin..];
    if coeffs.len() > 1 {
        let mut found = aberth(coeffs);
        for z in found.iter_mut() {
            polish(coeffs, z);
            if relative_residual(coeffs, *z) > tol {
                return Err(AlgebraError::RootsNotConverged);
            }
        }
        out.extend(found);
    }
    out.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(out)
}

/// Coefficients of the primitive integer multiple of `p`, scaled so the
/// largest fits comfortably in an `f64`.
pub(crate) fn f64_coefficients(p: &Polynomial) -> Result<Vec<f64>, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let (_, prim) = p.to_primitive();
    let shift = prim.max_bits().saturating_sub(900);
    Ok(prim
        .coeffs()
        .iter()
        .map(|c| (c >> shift).to_f64().unwrap_or(0.0))
        .collect())
}

/// `|p(z)| / sum_i |c_i| |z|^i`, the backward error of `z` as a root.
pub(crate) fn relative_residual(coeffs: &[f64], z: Complex64) -> f64 {
    let r = z.norm();
    let (mut val, mut scale) = (Complex64::zero(), 0.0);
    for &c in coeffs.iter().rev() {
        val = val * z + c;
        scale = scale * r + c.abs();
    }
    if scale == 0.0 {
        0.0
    } else {
        val.norm() / scale
    }
}

fn eval_with_derivative(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn polish(coeffs: &[f64], z: &mut Complex64) {
    let (p, dp) = eval_with_derivative(coeffs, *z);
    if dp.norm() == 0.0 || p.norm() == 0.0 {
        return;
    }
    let candidate = *z - p / dp;
    if relative_residual(coeffs, candidate) < relative_residual(coeffs, *z) {
        *z = candidate;
    }
}

fn aberth(coeffs: &[f64]) -> Vec<Complex64> {
    let degree = coeffs.len() - 1;
    let radius = (coeffs[0].abs() / coeffs[degree].abs()).powf(1.0 / degree as f64);
    let mut z: Vec<Complex64> = (0..degree)
        .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / degree as f64 + 0.4))
        .collect();
    let mut done = vec![false; degree];

    for _ in 0..MAX_ITERATIONS {
        let mut all_done = true;
        for i in 0..degree {
            if done[i] {
                continue;
            }
            let (p, dp) = eval_with_derivative(coeffs, z[i]);
            if p.norm() == 0.0 {
                done[i] = true;
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..degree)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                continue;
            }
            z[i] -= step;
            if step.norm() <= 4.0 * f64::EPSILON * z[i].norm().max(f64::MIN_POSITIVE) {
                done[i] = true;
            } else {
                all_done = false;
            }
        }
        if all_done {
            break;
        }
    }
    z
}
