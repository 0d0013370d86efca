use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::intpoly::IntPoly;

/// Univariate polynomial in `z` with exact rational coefficients, ascending
/// degree. The zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate `z`.
    pub fn z() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    pub fn monomial(c: BigRational, power: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); power + 1];
        coeffs[power] = c;
        Self::new(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn lc(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Splits `self = content * primitive` where `primitive` has coprime
    /// integer coefficients and a positive leading coefficient.
    pub fn to_primitive(&self) -> (BigRational, IntPoly) {
        if self.is_zero() {
            return (BigRational::zero(), IntPoly::zero());
        }
        let denom_lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(denom_lcm.clone())).to_integer())
            .collect();
        let int_poly = IntPoly::new(ints);
        let mut content = int_poly.content();
        if int_poly.lc().is_negative() {
            content = -content;
        }
        let prim = int_poly.div_scalar_exact(&content);
        (BigRational::new(content, denom_lcm), prim)
    }

    /// Quotient and remainder of division over Q[z].
    pub fn div_rem(&self, d: &Polynomial) -> (Polynomial, Polynomial) {
        let dd = d.degree().expect("division by zero polynomial");
        let Some(da) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if da < dd {
            return (Self::zero(), self.clone());
        }
        let inv_lead = d.lc().recip();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigRational::zero(); da - dd + 1];
        for top in (dd..=da).rev() {
            if r[top].is_zero() {
                continue;
            }
            let qc = &r[top] * &inv_lead;
            let shift = top - dd;
            for (k, dc) in d.coeffs.iter().enumerate() {
                r[shift + k] -= &qc * dc;
            }
            q[shift] = qc;
        }
        r.truncate(dd);
        (Polynomial::new(q), Polynomial::new(r))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Floating-point Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.to_f64_coeffs()
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }
}

impl From<&IntPoly> for Polynomial {
    fn from(p: &IntPoly) -> Self {
        Self {
            coeffs: p
                .coeffs()
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        }
    }
}

impl From<IntPoly> for Polynomial {
    fn from(p: IntPoly) -> Self {
        Self {
            coeffs: p
                .into_coeffs()
                .into_iter()
                .map(BigRational::from_integer)
                .collect(),
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new(
            (0..n)
                .map(|k| match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.coeffs.iter().map(|c| c.to_string()))
    }
}

/// Writes `c0 + c1 z + c2 z^2 + ...` skipping zero terms, ascending powers.
pub(crate) fn write_terms(
    f: &mut fmt::Formatter<'_>,
    coeffs: impl Iterator<Item = String>,
) -> fmt::Result {
    let mut first = true;
    for (k, c) in coeffs.enumerate() {
        if c == "0" {
            continue;
        }
        let (negative, mag) = match c.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, c),
        };
        if first {
            if negative {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if negative { " - " } else { " + " })?;
        }
        first = false;
        let mag = if mag.contains('/') && k > 0 {
            format!("({mag})")
        } else {
            mag
        };
        match k {
            0 => f.write_str(&mag)?,
            _ => {
                if mag != "1" {
                    f.write_str(&mag)?;
                }
                f.write_str("z")?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}
