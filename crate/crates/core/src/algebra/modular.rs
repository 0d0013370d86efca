//! Exact determinants of integer polynomial matrices by evaluation,
//! interpolation and Chinese remaindering.
//!
//! Used for the bordered systems behind closed-form transmission amplitudes:
//! for `M = [[A, b], [c, 0]]`, `c * A^-1 * b = -det(M) / det(A)`, so both
//! polynomials come out of one elimination per evaluation point and prime.
//! The number of primes is fixed up front from a Hadamard-type bound, so the
//! reconstruction is exact and needs no probabilistic termination test.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::intpoly::IntPoly;

/// Square matrix of small integer polynomials, stored by sparse rows.
#[derive(Clone, Debug, Default)]
pub struct SparsePolyMatrix {
    size: usize,
    rows: Vec<Vec<(usize, Vec<i64>)>>,
}

impl SparsePolyMatrix {
    pub fn new(size: usize) -> Self {
        Self {
            size,
            rows: vec![Vec::new(); size],
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Adds `coeff * z^power` to entry `(row, col)`.
    pub fn add_term(&mut self, row: usize, col: usize, coeff: i64, power: usize) {
        let entries = &mut self.rows[row];
        let slot = match entries.iter().position(|(c, _)| *c == col) {
            Some(i) => i,
            None => {
                entries.push((col, Vec::new()));
                entries.len() - 1
            }
        };
        let poly = &mut entries[slot].1;
        if poly.len() <= power {
            poly.resize(power + 1, 0);
        }
        poly[power] += coeff;
    }

    fn degree_bound(&self) -> usize {
        self.rows
            .iter()
            .map(|row| row.iter().map(|(_, p)| p.len().saturating_sub(1)).max().unwrap_or(0))
            .sum()
    }

    /// log2 of a bound on every coefficient of `det`: for `|z| = 1` each row
    /// contributes at most the Euclidean norm of its entrywise 1-norms.
    fn coefficient_bits(&self) -> f64 {
        self.rows
            .iter()
            .map(|row| {
                let sq: f64 = row
                    .iter()
                    .map(|(_, p)| {
                        let l1: f64 = p.iter().map(|c| c.unsigned_abs() as f64).sum();
                        l1 * l1
                    })
                    .sum();
                if sq == 0.0 {
                    0.0
                } else {
                    0.5 * sq.log2()
                }
            })
            .sum()
    }
}

/// Returns `(det(leading block), det(full))` where the leading block is the
/// matrix with its last row and column removed.
pub fn bordered_determinants(m: &SparsePolyMatrix) -> (IntPoly, IntPoly) {
    let n = m.size();
    assert!(n >= 1, "bordered matrix needs at least the border row");
    let degree = m.degree_bound();
    let bits = m.coefficient_bits().ceil() as u64 + 2;
    let primes = primes_for(bits, degree);

    let mut modulus = BigInt::one();
    let mut lead_acc: Vec<BigInt> = vec![BigInt::zero(); degree + 1];
    let mut full_acc: Vec<BigInt> = vec![BigInt::zero(); degree + 1];
    for &p in &primes {
        let (lead, full) = determinants_mod(m, degree, p);
        crt_combine(&mut lead_acc, &modulus, &lead, p);
        crt_combine(&mut full_acc, &modulus, &full, p);
        modulus *= p;
    }
    (
        IntPoly::new(symmetric(lead_acc, &modulus)),
        IntPoly::new(symmetric(full_acc, &modulus)),
    )
}

fn symmetric(mut coeffs: Vec<BigInt>, modulus: &BigInt) -> Vec<BigInt> {
    let half: BigInt = modulus >> 1;
    for c in coeffs.iter_mut() {
        if *c > half {
            *c -= modulus;
        }
    }
    coeffs
}

/// Folds residues mod `p` into accumulators known mod `modulus`.
fn crt_combine(acc: &mut [BigInt], modulus: &BigInt, residues: &[u64], p: u64) {
    let m_mod_p = (modulus % p).iter_u64_digits().next().unwrap_or(0);
    let inv = inv_mod(m_mod_p, p);
    for (a, &r) in acc.iter_mut().zip(residues) {
        let a_mod_p = (&*a % p).iter_u64_digits().next().unwrap_or(0);
        let delta = mul_mod((r + p - a_mod_p) % p, inv, p);
        *a += modulus * delta;
    }
}

/// Largest primes below 2^31, enough of them to exceed the coefficient bound.
fn primes_for(bits: u64, degree: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut have = 0.0;
    let mut candidate: u64 = (1 << 31) - 1;
    while have < bits as f64 + 1.0 {
        if is_prime(candidate) {
            assert!(candidate as usize > degree);
            have += (candidate as f64).log2();
            out.push(candidate);
        }
        candidate -= 2;
    }
    out
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Both determinants reduced mod `p`, as coefficient vectors of length `degree + 1`.
fn determinants_mod(m: &SparsePolyMatrix, degree: usize, p: u64) -> (Vec<u64>, Vec<u64>) {
    let n = m.size();
    let reduced: Vec<Vec<(usize, Vec<u64>)>> = m
        .rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|(c, poly)| {
                    let r = poly
                        .iter()
                        .map(|&v| (v.rem_euclid(p as i64)) as u64)
                        .collect();
                    (*c, r)
                })
                .collect()
        })
        .collect();

    let mut lead_vals = Vec::with_capacity(degree + 1);
    let mut full_vals = Vec::with_capacity(degree + 1);
    let mut dense = vec![0u64; n * n];
    for x in 0..=degree as u64 {
        dense.iter_mut().for_each(|v| *v = 0);
        for (i, row) in reduced.iter().enumerate() {
            for (j, poly) in row {
                let v = poly.iter().rev().fold(0u64, |acc, &c| (mul_mod(acc, x, p) + c) % p);
                dense[i * n + j] = v;
            }
        }
        let (lead, full) = eliminate_bordered(&mut dense, n, p);
        lead_vals.push(lead);
        full_vals.push(full);
    }
    (interpolate(&lead_vals, p), interpolate(&full_vals, p))
}

/// Gaussian elimination mod `p` choosing pivots only among the leading rows
/// for the leading columns. Returns `(det(leading), det(full))`.
fn eliminate_bordered(a: &mut [u64], n: usize, p: u64) -> (u64, u64) {
    let lead = n - 1;
    let mut det = 1u64;
    let mut negate = false;
    for k in 0..lead {
        let Some(piv) = (k..lead).find(|&r| a[r * n + k] != 0) else {
            return (0, det_mod(a, n, p, k, det, negate));
        };
        if piv != k {
            for j in 0..n {
                a.swap(piv * n + j, k * n + j);
            }
            negate = !negate;
        }
        let pv = a[k * n + k];
        det = mul_mod(det, pv, p);
        let inv = inv_mod(pv, p);
        for i in (k + 1)..n {
            let f = a[i * n + k];
            if f == 0 {
                continue;
            }
            let f = mul_mod(f, inv, p);
            a[i * n + k] = 0;
            for j in (k + 1)..n {
                let s = a[k * n + j];
                if s != 0 {
                    a[i * n + j] = (a[i * n + j] + p - mul_mod(f, s, p)) % p;
                }
            }
        }
    }
    let full = mul_mod(det, a[lead * n + lead], p);
    let sign = |v: u64| if negate && v != 0 { p - v } else { v };
    (sign(det), sign(full))
}

/// Finishes a determinant from column `start` onward with unrestricted
/// pivoting, given the product of earlier pivots.
fn det_mod(a: &mut [u64], n: usize, p: u64, start: usize, mut det: u64, mut negate: bool) -> u64 {
    for k in start..n {
        let Some(piv) = (k..n).find(|&r| a[r * n + k] != 0) else {
            return 0;
        };
        if piv != k {
            for j in 0..n {
                a.swap(piv * n + j, k * n + j);
            }
            negate = !negate;
        }
        let pv = a[k * n + k];
        det = mul_mod(det, pv, p);
        let inv = inv_mod(pv, p);
        for i in (k + 1)..n {
            let f = a[i * n + k];
            if f == 0 {
                continue;
            }
            let f = mul_mod(f, inv, p);
            for j in (k + 1)..n {
                let s = a[k * n + j];
                if s != 0 {
                    a[i * n + j] = (a[i * n + j] + p - mul_mod(f, s, p)) % p;
                }
            }
        }
    }
    if negate && det != 0 {
        p - det
    } else {
        det
    }
}

/// Coefficients of the polynomial taking `values[x]` at `x = 0, 1, ...`.
fn interpolate(values: &[u64], p: u64) -> Vec<u64> {
    let n = values.len();
    // Newton divided differences on nodes 0..n-1.
    let mut dd = values.to_vec();
    for level in 1..n {
        let inv = inv_mod(level as u64 % p, p);
        for i in (level..n).rev() {
            dd[i] = mul_mod((dd[i] + p - dd[i - 1]) % p, inv, p);
        }
    }
    // Expand the Newton form by Horner from the top.
    let mut coeffs = vec![0u64; n];
    for i in (0..n).rev() {
        // coeffs <- coeffs * (z - i) + dd[i]
        let shift = i as u64 % p;
        for k in (1..n).rev() {
            coeffs[k] = (coeffs[k - 1] + p - mul_mod(coeffs[k], shift, p)) % p;
        }
        coeffs[0] = (p - mul_mod(coeffs[0], shift, p)) % p;
        coeffs[0] = (coeffs[0] + dd[i]) % p;
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn fits_bound(p: &IntPoly, bits: u64) -> bool {
        p.coeffs().iter().all(|c| c.abs().bits() <= bits)
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = 2_147_483_647;
        // 3 - 2z + 5z^3
        let f = |x: u64| (3 + p * 10 - 2 * x + 5 * x * x * x) % p;
        let vals: Vec<u64> = (0..4).map(f).collect();
        assert_eq!(interpolate(&vals, p), vec![3, p - 2, 0, 5]);
    }

    #[test]
    fn small_bordered_determinant() {
        // A = [[1, -z], [-z, 1]], b = [1, 0]^T, c = [1, 0]
        let mut m = SparsePolyMatrix::new(3);
        m.add_term(0, 0, 1, 0);
        m.add_term(0, 1, -1, 1);
        m.add_term(1, 0, -1, 1);
        m.add_term(1, 1, 1, 0);
        m.add_term(0, 2, 1, 0);
        m.add_term(2, 0, 1, 0);
        let (lead, full) = bordered_determinants(&m);
        assert_eq!(lead, IntPoly::from_i64(&[1, 0, -1]));
        // c A^-1 b = 1/(1 - z^2) = -det(M)/det(A)  =>  det(M) = -1
        assert_eq!(full, IntPoly::from_i64(&[-1]));
    }

    #[test]
    fn singular_leading_block_falls_back() {
        // A = [[0]] at every point, b = [1], c = [1]: det(M) = -1.
        let mut m = SparsePolyMatrix::new(2);
        m.add_term(0, 1, 1, 0);
        m.add_term(1, 0, 1, 0);
        let (lead, full) = bordered_determinants(&m);
        assert!(lead.is_zero());
        assert_eq!(full, IntPoly::from_i64(&[-1]));
    }

    #[test]
    fn large_coefficients_need_several_primes() {
        // diag(1000 + z) of size 8: det = (1000 + z)^8 has ~80-bit coefficients.
        let n = 8;
        let mut m = SparsePolyMatrix::new(n + 1);
        for i in 0..n {
            m.add_term(i, i, 1000, 0);
            m.add_term(i, i, 1, 1);
        }
        m.add_term(n, n, 1, 0);
        let (lead, full) = bordered_determinants(&m);
        let base = IntPoly::from_i64(&[1000, 1]);
        let mut expected = IntPoly::one();
        for _ in 0..n {
            expected = &expected * &base;
        }
        assert_eq!(lead, expected);
        assert_eq!(full, expected);
        assert!(fits_bound(&lead, 90));
    }
}
