use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use super::intpoly::IntPoly;
use super::precise;
use super::poly::Polynomial;
use super::AlgebraError;

/// Ratio of two polynomials in `z` over Q.
///
/// Values built through [`RationalFunction::new`] or any arithmetic operator
/// are kept in canonical form: numerator and denominator coprime, denominator
/// with coprime integer coefficients and a positive leading coefficient, and
/// zero represented as `0/1`. Canonical forms are unique, so derived equality
/// coincides with equality as functions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        Ok(Self::unreduced(num, den).reduced())
    }

    /// Builds the quotient without reduction. Callers must ensure `den != 0`.
    pub(crate) fn unreduced(num: Polynomial, den: Polynomial) -> Self {
        debug_assert!(!den.is_zero());
        Self { num, den }
    }

    pub(crate) fn from_int_parts(num: IntPoly, den: IntPoly) -> Result<Self, AlgebraError> {
        Self::new(num.into(), den.into())
    }

    pub fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn z() -> Self {
        Self::from_poly(Polynomial::z())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::constant(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        Self::unreduced(p, Polynomial::one())
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Canonical GCD-reduced form; equal as a function to `self`.
    pub fn reduced(&self) -> Self {
        if self.num.is_zero() {
            return Self::from_poly(Polynomial::zero());
        }
        let (num_content, num_prim) = self.num.to_primitive();
        let (den_content, den_prim) = self.den.to_primitive();
        let g = num_prim.primitive_gcd(&den_prim);
        let (num_prim, den_prim) = if g.degree() == Some(0) {
            (num_prim, den_prim)
        } else {
            (
                num_prim.div_exact(&g).expect("gcd divides numerator"),
                den_prim.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let num = Polynomial::from(num_prim).scale(&(num_content / den_content));
        Self {
            num,
            den: den_prim.into(),
        }
    }

    pub fn recip(&self) -> Result<Self, AlgebraError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        Ok(self * &rhs.recip()?)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.num.eval(z) / self.den.eval(z)
    }

    /// Like [`eval`](Self::eval), but exact up to the rounding of `z`, so
    /// high-degree forms with large coefficients keep full precision.
    pub fn eval_precise(&self, z: Complex64) -> Complex64 {
        let (cn, pn) = self.num.to_primitive();
        let (cd, pd) = self.den.to_primitive();
        let c = cn / cd;
        precise::eval_quotient(&pn, &pd, z) * precise::ratio_to_f64(c.numer(), c.denom())
    }

    pub fn eval_rational(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval_rational(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval_rational(x) / d)
        }
    }
}

/// Canonical reduced form of `f`.
pub fn gcd_reduce(f: &RationalFunction) -> RationalFunction {
    f.reduced()
}

/// Functional equality by cross-multiplication: `f.num * g.den == g.num * f.den`.
pub fn rf_equal(f: &RationalFunction, g: &RationalFunction) -> bool {
    (&f.num * &g.den) == (&g.num * &f.den)
}

impl Add for &RationalFunction {
    type Output = RationalFunction;

    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::unreduced(&self.num + &rhs.num, self.den.clone()).reduced();
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::unreduced(num, &self.den * &rhs.den).reduced()
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;

    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;

    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::unreduced(&self.num * &rhs.num, &self.den * &rhs.den).reduced()
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;

    fn neg(self) -> RationalFunction {
        RationalFunction::unreduced(-&self.num, self.den.clone())
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Polynomial::one() {
            return write!(f, "{}", self.num);
        }
        let single_term = |p: &Polynomial| p.coeffs().iter().filter(|c| !c.is_zero()).count() <= 1;
        if single_term(&self.num) {
            write!(f, "{}", self.num)?;
        } else {
            write!(f, "({})", self.num)?;
        }
        if single_term(&self.den) {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::from_poly(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::new(Polynomial::from_i64(num), Polynomial::from_i64(den)).unwrap()
    }

    #[test]
    fn reduces_common_factor() {
        // (z^2 - 1)/(z - 1) -> z + 1
        let f = rf(&[-1, 0, 1], &[-1, 1]);
        assert_eq!(f.num(), &Polynomial::from_i64(&[1, 1]));
        assert_eq!(f.den(), &Polynomial::one());
    }

    #[test]
    fn coprime_input_is_unchanged() {
        // 8z^2/(9 - z^4) -> canonical sign flip only: -8z^2/(-9 + z^4)
        let f = rf(&[0, 0, 8], &[9, 0, 0, 0, -1]);
        assert_eq!(f.num(), &Polynomial::from_i64(&[0, 0, -8]));
        assert_eq!(f.den(), &Polynomial::from_i64(&[-9, 0, 0, 0, 1]));
        assert!(rf_equal(&f, &gcd_reduce(&f)));
    }

    #[test]
    fn zero_over_anything_is_canonical_zero() {
        let f = rf(&[], &[3, 1]);
        assert!(f.is_zero());
        assert_eq!(f.den(), &Polynomial::one());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RationalFunction::new(Polynomial::one(), Polynomial::zero()),
            Err(AlgebraError::ZeroDenominator)
        );
    }

    #[test]
    fn constant_factor_invariance() {
        let a = RationalFunction::unreduced(Polynomial::from_i64(&[0, 2]), Polynomial::from_i64(&[2]));
        let b = rf(&[0, 1], &[1]);
        assert!(rf_equal(&a, &b));
        assert!(rf_equal(&b, &b));
    }

    #[test]
    fn arithmetic() {
        let a = rf(&[1], &[1, -1]); // 1/(1-z)
        let b = rf(&[1], &[1, 1]); // 1/(1+z)
        let sum = &a + &b; // 2/(1-z^2)
        assert!(rf_equal(&sum, &rf(&[2], &[1, 0, -1])));
        let prod = &a * &b;
        assert!(rf_equal(&prod, &rf(&[1], &[1, 0, -1])));
        assert!((&a - &a).is_zero());
        let q = a.checked_div(&b).unwrap();
        assert!(rf_equal(&q, &rf(&[1, 1], &[1, -1])));
        assert!(a.checked_div(&RationalFunction::zero()).is_err());
    }

    #[test]
    fn display_forms() {
        assert_eq!(rf(&[0, 0, 8], &[9, 0, 0, 0, -1]).to_string(), "-8z^2/(-9 + z^4)");
        assert_eq!(rf(&[1, 1], &[1]).to_string(), "1 + z");
    }
}
