//! Evaluation of integer polynomials at a double-precision complex point
//! without cancellation error: the point is rounded once to a dyadic
//! Gaussian rational and Horner runs in exact big-integer arithmetic.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};

use super::intpoly::IntPoly;

/// Fractional bits kept when rounding the evaluation point.
const POINT_BITS: u32 = 64;

/// Exact value of `p(w / 2^POINT_BITS) * 2^(POINT_BITS * degree)` as
/// `(re, im)`, where `w` is `z` rounded to `POINT_BITS` fractional bits.
/// `degree` must be at least `p.degree()`.
pub(crate) fn eval_scaled(p: &IntPoly, z: Complex64, degree: usize) -> (BigInt, BigInt) {
    let (wr, wi) = (to_fixed(z.re), to_fixed(z.im));
    let coeffs = p.coeffs();
    let Some(n) = coeffs.len().checked_sub(1) else {
        return (BigInt::zero(), BigInt::zero());
    };
    debug_assert!(degree >= n);
    let (mut re, mut im) = (coeffs[n].clone(), BigInt::zero());
    for k in (0..n).rev() {
        let next_re = &re * &wr - &im * &wi;
        let next_im = &re * &wi + &im * &wr;
        re = next_re + (&coeffs[k] << (POINT_BITS as usize * (n - k)));
        im = next_im;
    }
    let pad = POINT_BITS as usize * (degree - n);
    (re << pad, im << pad)
}

/// `p(z)` for an integer polynomial, correctly rounded up to the initial
/// rounding of `z`.
#[cfg(test)]
fn eval_int(p: &IntPoly, z: Complex64) -> Complex64 {
    let n = p.degree().unwrap_or(0);
    let (re, im) = eval_scaled(p, z, n);
    let scale = BigInt::from(1) << (POINT_BITS as usize * n);
    Complex64::new(ratio_to_f64(&re, &scale), ratio_to_f64(&im, &scale))
}

/// `num(z) / den(z)` computed from exact values of both polynomials.
pub(crate) fn eval_quotient(num: &IntPoly, den: &IntPoly, z: Complex64) -> Complex64 {
    let degree = num.degree().unwrap_or(0).max(den.degree().unwrap_or(0));
    let (a, b) = eval_scaled(num, z, degree);
    let (c, d) = eval_scaled(den, z, degree);
    let norm = &c * &c + &d * &d;
    if norm.is_zero() {
        return Complex64::new(f64::INFINITY, f64::INFINITY);
    }
    let re = &a * &c + &b * &d;
    let im = &b * &c - &a * &d;
    Complex64::new(ratio_to_f64(&re, &norm), ratio_to_f64(&im, &norm))
}

fn to_fixed(x: f64) -> BigInt {
    BigInt::from_f64((x * 2f64.powi(POINT_BITS as i32)).round()).unwrap_or_default()
}

/// `num / den` rounded to double precision, for integers of any size.
pub(crate) fn ratio_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let (mn, en) = mantissa(num);
    let (md, ed) = mantissa(den);
    scale_pow2(mn / md, en - ed)
}

/// `x = m * 2^e` with `|m| < 2^62`.
fn mantissa(x: &BigInt) -> (f64, i64) {
    let shift = x.bits().saturating_sub(62);
    let m = (x.abs() >> shift).to_f64().unwrap_or(0.0);
    (if x.is_negative() { -m } else { m }, shift as i64)
}

fn scale_pow2(mut v: f64, mut e: i64) -> f64 {
    while e > 1000 {
        v *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        v *= 2f64.powi(-1000);
        e += 1000;
    }
    v * 2f64.powi(e as i32)
}
