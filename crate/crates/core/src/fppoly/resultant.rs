//! Resultants via the Sylvester matrix and integer discriminants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::intpoly::IntPoly;
use crate::error::{Error, Result};

/// Sylvester matrix of `f` and `g`, rows of high-to-low coefficients.
pub fn sylvester_matrix(f: &IntPoly, g: &IntPoly) -> Vec<Vec<BigInt>> {
    let m = f.deg();
    let n = g.deg();
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    let f_hi: Vec<BigInt> = f.coeffs().iter().rev().cloned().collect();
    let g_hi: Vec<BigInt> = g.coeffs().iter().rev().cloned().collect();
    for shift in 0..n {
        let mut row = vec![BigInt::zero(); size];
        row[shift..shift + m + 1].clone_from_slice(&f_hi);
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![BigInt::zero(); size];
        row[shift..shift + n + 1].clone_from_slice(&g_hi);
        rows.push(row);
    }
    rows
}

/// Fraction-free (Bareiss) determinant.
pub fn determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v.div_floor(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Resultant of two nonzero polynomials of positive total degree.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    if f.is_zero() || g.is_zero() {
        return BigInt::zero();
    }
    determinant(sylvester_matrix(f, g))
}

/// `Res(f, f') * (-1)^(n(n-1)/2) / lc(f)`.
pub fn discriminant(f: &IntPoly) -> Result<BigInt> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = f.deg();
    if n == 0 {
        return Err(Error::InvalidArgument(
            "discriminant needs degree >= 1".into(),
        ));
    }
    if n == 1 {
        return Ok(BigInt::one());
    }
    let res = resultant(f, &f.derivative());
    let signed = if (n * (n - 1) / 2) % 2 == 1 {
        -res
    } else {
        res
    };
    let (q, r) = signed.div_rem(&f.leading());
    debug_assert!(r.is_zero());
    Ok(q)
}
