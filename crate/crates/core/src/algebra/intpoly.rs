//! Dense univariate polynomials over the integers.
//!
//! This is the working representation of the exact kernels: fraction-free
//! elimination, exact division, and primitive-remainder-sequence GCDs all run
//! on integer coefficients and only convert to rationals at the boundary.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Polynomial with `BigInt` coefficients in ascending degree, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `c * z^power`
    pub fn monomial(c: BigInt, power: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); power + 1];
        coeffs[power] = c;
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// Non-negative GCD of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Divides every coefficient by `s`; `s` must divide them all.
    pub fn div_scalar_exact(&self, s: &BigInt) -> Self {
        debug_assert!(!s.is_zero());
        Self::new(
            self.coeffs
                .iter()
                .map(|c| {
                    debug_assert!((c % s).is_zero());
                    c / s
                })
                .collect(),
        )
    }

    /// Pseudo-remainder: `lc(d)^(deg a - deg d + 1) * a mod d`.
    pub fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree().expect("pseudo_rem by zero polynomial");
        let Some(da) = self.degree() else {
            return Self::zero();
        };
        if da < dd {
            return self.clone();
        }
        let lead = d.lc();
        let mut steps = da - dd + 1;
        let mut r = self.coeffs.clone();
        while r.len() > dd {
            let top = r.len() - 1;
            let lr = r[top].clone();
            let shift = top - dd;
            for c in r.iter_mut() {
                *c *= &lead;
            }
            for (k, dc) in d.coeffs.iter().enumerate() {
                r[shift + k] -= &lr * dc;
            }
            debug_assert!(r[top].is_zero());
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
            steps -= 1;
        }
        let mut rem = IntPoly::new(r);
        if steps > 0 {
            rem = rem.scale(&num_traits::pow(lead, steps));
        }
        rem
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self` in Z[z].
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        let dd = d.degree()?;
        let Some(da) = self.degree() else {
            return Some(Self::zero());
        };
        if da < dd {
            return None;
        }
        let lead = d.lc();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); da - dd + 1];
        for top in (dd..=da).rev() {
            if r[top].is_zero() {
                continue;
            }
            let (qc, rem) = r[top].div_rem(&lead);
            if !rem.is_zero() {
                return None;
            }
            let shift = top - dd;
            for (k, dc) in d.coeffs.iter().enumerate() {
                r[shift + k] -= &qc * dc;
            }
            q[shift] = qc;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::new(q))
    }

    /// GCD over Q[z], returned primitive with positive leading coefficient.
    /// The GCD of two zero polynomials is zero.
    pub fn primitive_gcd(&self, other: &IntPoly) -> IntPoly {
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.degree() == Some(0) {
                return IntPoly::one();
            }
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        let x = BigInt::from(x);
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * &x + c)
    }

    /// Bit length of the largest coefficient magnitude.
    pub fn max_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0)
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let mut c = self.coeffs.get(k).cloned().unwrap_or_default();
            if let Some(r) = rhs.coeffs.get(k) {
                c += r;
            }
            out.push(c);
        }
        IntPoly::new(out)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let mut c = self.coeffs.get(k).cloned().unwrap_or_default();
            if let Some(r) = rhs.coeffs.get(k) {
                c -= r;
            }
            out.push(c);
        }
        IntPoly::new(out)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::poly::write_terms(f, self.coeffs.iter().map(|c| c.to_string()))
    }
}
