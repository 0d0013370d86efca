//! Exact linear solving over the rational-function field Q(z).
//!
//! Rows are first cleared of denominators so the system lives in Z[z]; the
//! forward sweep is fraction-free (Bareiss), every intermediate entry being a
//! minor of the cleared matrix. Back-substitution produces the Cramer
//! numerators, and the only GCD work happens once per unknown at the end.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use super::intpoly::IntPoly;
use super::poly::Polynomial;
use super::rational::RationalFunction;
use super::AlgebraError;

/// Solves `a * x = b` exactly. `a` must be square and nonsingular over Q(z).
pub fn solve_linear_system(
    a: &[Vec<RationalFunction>],
    b: &[RationalFunction],
) -> Result<Vec<RationalFunction>, AlgebraError> {
    let n = a.len();
    if b.len() != n || a.iter().any(|row| row.len() != n) {
        return Err(AlgebraError::DimensionMismatch);
    }
    if n == 0 {
        return Ok(Vec::new());
    }

    let mut m: Vec<Vec<IntPoly>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| clear_row(row.iter().chain(std::iter::once(rhs))))
        .collect();

    let mut prev = IntPoly::one();
    for k in 0..n {
        let pivot = (k..n)
            .find(|&r| !m[r][k].is_zero())
            .ok_or(AlgebraError::Singular)?;
        m.swap(k, pivot);
        let (upper, lower) = m.split_at_mut(k + 1);
        let pivot_row = &upper[k];
        let pk = &pivot_row[k];
        for row in lower.iter_mut() {
            let factor = std::mem::take(&mut row[k]);
            for j in (k + 1)..=n {
                let mut v = pk * &row[j];
                if !factor.is_zero() && !pivot_row[j].is_zero() {
                    v = &v - &(&factor * &pivot_row[j]);
                }
                row[j] = v
                    .div_exact(&prev)
                    .expect("Bareiss step divides exactly by the previous pivot");
            }
        }
        prev = m[k][k].clone();
    }

    let det = m[n - 1][n - 1].clone();
    let mut numerators: Vec<IntPoly> = vec![IntPoly::zero(); n];
    for i in (0..n).rev() {
        let mut acc = &det * &m[i][n];
        for j in (i + 1)..n {
            if !m[i][j].is_zero() {
                acc = &acc - &(&m[i][j] * &numerators[j]);
            }
        }
        numerators[i] = acc
            .div_exact(&m[i][i])
            .ok_or(AlgebraError::Internal("fraction-free back-substitution was not exact"))?;
    }

    numerators
        .into_iter()
        .map(|num| RationalFunction::from_int_parts(num, det.clone()))
        .collect()
}

/// Multiplies a row of rational functions by the LCM of its denominators and
/// of all coefficient denominators, returning integer polynomials.
fn clear_row<'a>(row: impl Iterator<Item = &'a RationalFunction> + Clone) -> Vec<IntPoly> {
    let mut den_lcm = IntPoly::one();
    for f in row.clone() {
        let (_, prim) = f.den().to_primitive();
        let g = den_lcm.primitive_gcd(&prim);
        den_lcm = &den_lcm * &prim.div_exact(&g).expect("gcd divides");
    }
    let common = Polynomial::from(&den_lcm);
    let polys: Vec<Polynomial> = row
        .map(|f| {
            let (q, r) = common.div_rem(f.den());
            debug_assert!(r.is_zero());
            &q * f.num()
        })
        .collect();
    let coeff_lcm = polys
        .iter()
        .flat_map(|p| p.coeffs())
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    polys
        .iter()
        .map(|p| {
            IntPoly::new(
                p.coeffs()
                    .iter()
                    .map(|c| (c * BigRational::from_integer(coeff_lcm.clone())).to_integer())
                    .collect(),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> RationalFunction {
        RationalFunction::from_poly(Polynomial::from_i64(c))
    }

    #[test]
    fn identity_system() {
        let x = solve_linear_system(&[vec![RationalFunction::one()]], &[RationalFunction::z()]).unwrap();
        assert_eq!(x, vec![RationalFunction::z()]);
    }

    #[test]
    fn geometric_series_pair() {
        // [[1, -z], [-z, 1]] x = [1, 0]  ->  x = [1/(1-z^2), z/(1-z^2)]
        let a = vec![vec![poly(&[1]), poly(&[0, -1])], vec![poly(&[0, -1]), poly(&[1])]];
        let b = vec![poly(&[1]), poly(&[])];
        let x = solve_linear_system(&a, &b).unwrap();
        let den = Polynomial::from_i64(&[1, 0, -1]);
        let x0 = RationalFunction::new(Polynomial::from_i64(&[1]), den.clone()).unwrap();
        let x1 = RationalFunction::new(Polynomial::from_i64(&[0, 1]), den).unwrap();
        assert_eq!(x, vec![x0, x1]);
    }

    #[test]
    fn needs_row_swap() {
        // [[0, 1], [z, 0]] x = [1, z] -> x = [1, 1]
        let a = vec![vec![poly(&[]), poly(&[1])], vec![poly(&[0, 1]), poly(&[])]];
        let b = vec![poly(&[1]), poly(&[0, 1])];
        let x = solve_linear_system(&a, &b).unwrap();
        assert_eq!(x, vec![RationalFunction::one(), RationalFunction::one()]);
    }

    #[test]
    fn rational_entries_are_cleared() {
        // (1/(1+z)) x = 1/(1-z)  ->  x = (1+z)/(1-z)
        let a = vec![vec![RationalFunction::new(Polynomial::from_i64(&[1]), Polynomial::from_i64(&[1, 1])).unwrap()]];
        let b = vec![RationalFunction::new(Polynomial::from_i64(&[1]), Polynomial::from_i64(&[1, -1])).unwrap()];
        let x = solve_linear_system(&a, &b).unwrap();
        let expected = RationalFunction::new(Polynomial::from_i64(&[1, 1]), Polynomial::from_i64(&[1, -1])).unwrap();
        assert_eq!(x[0], expected);
    }

    #[test]
    fn singular_detected() {
        let a = vec![vec![poly(&[1, 1]), poly(&[2, 2])], vec![poly(&[0, 1]), poly(&[0, 2])]];
        let b = vec![poly(&[1]), poly(&[1])];
        assert_eq!(solve_linear_system(&a, &b), Err(AlgebraError::Singular));
    }

    #[test]
    fn shape_checked() {
        let a = vec![vec![poly(&[1]), poly(&[1])]];
        assert_eq!(solve_linear_system(&a, &[poly(&[1])]), Err(AlgebraError::DimensionMismatch));
    }
}
