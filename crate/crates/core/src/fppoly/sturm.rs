//! Sturm chains over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::intpoly::IntPoly;
use crate::error::{Error, Result};

type QPoly = Vec<BigRational>;

fn to_q(f: &IntPoly) -> QPoly {
    f.coeffs()
        .iter()
        .cloned()
        .map(BigRational::from_integer)
        .collect()
}

fn trim(p: &mut QPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn q_rem(a: &QPoly, b: &QPoly) -> QPoly {
    let mut rem = a.clone();
    let db = b.len() - 1;
    let lead = b.last().unwrap().clone();
    while rem.len() > db {
        let c = rem.last().unwrap() / &lead;
        let shift = rem.len() - 1 - db;
        for (j, bj) in b.iter().enumerate() {
            rem[shift + j] -= &c * bj;
        }
        rem.pop();
        trim(&mut rem);
    }
    trim(&mut rem);
    rem
}

fn q_derivative(a: &QPoly) -> QPoly {
    let mut d: QPoly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect();
    trim(&mut d);
    d
}

fn q_gcd_degree(a: &QPoly, b: &QPoly) -> usize {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_empty() {
        let r = q_rem(&x, &y);
        x = y;
        y = r;
    }
    x.len().saturating_sub(1)
}

/// True when `gcd(f, f')` is constant over Q.
pub fn is_squarefree(f: &IntPoly) -> bool {
    if f.deg() == 0 {
        return !f.is_zero();
    }
    let q = to_q(f);
    q_gcd_degree(&q, &q_derivative(&q)) == 0
}

/// Sturm chain `f, f', -rem(f, f'), ...` in exact rationals.
pub fn sturm_chain(f: &IntPoly) -> Vec<Vec<BigRational>> {
    let mut chain = vec![to_q(f)];
    let d = q_derivative(&chain[0]);
    if d.is_empty() {
        return chain;
    }
    chain.push(d);
    loop {
        let n = chain.len();
        let r = q_rem(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break;
        }
        chain.push(r.into_iter().map(|c| -c).collect());
    }
    chain
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn sign_at_infinity(p: &QPoly, negative: bool) -> i8 {
    let lead_sign: i8 = if p.last().unwrap().is_positive() {
        1
    } else {
        -1
    };
    let deg = p.len() - 1;
    if negative && deg % 2 == 1 {
        -lead_sign
    } else {
        lead_sign
    }
}

/// Number of distinct real roots of a squarefree integer polynomial.
pub fn count_real_roots(f: &IntPoly) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !is_squarefree(f) {
        return Err(Error::NotSquarefree);
    }
    if f.deg() == 0 {
        return Ok(0);
    }
    let chain = sturm_chain(f);
    let at_neg = variations(chain.iter().map(|p| sign_at_infinity(p, true)));
    let at_pos = variations(chain.iter().map(|p| sign_at_infinity(p, false)));
    Ok(at_neg - at_pos)
}

/// Number of distinct real roots in the half-open interval `(a, b]`.
pub fn count_roots_in(f: &IntPoly, a: &BigRational, b: &BigRational) -> Result<usize> {
    if !is_squarefree(f) {
        return Err(Error::NotSquarefree);
    }
    let chain = sturm_chain(f);
    let eval = |p: &QPoly, x: &BigRational| -> i8 {
        let v = p
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    };
    let va = variations(chain.iter().map(|p| eval(p, a)));
    let vb = variations(chain.iter().map(|p| eval(p, b)));
    Ok(va.saturating_sub(vb))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_counts() {
        assert_eq!(count_real_roots(&IntPoly::from_i64(&[1, 0, 1])).unwrap(), 0);
        assert_eq!(
            count_real_roots(&IntPoly::from_i64(&[-2, 0, 1])).unwrap(),
            2
        );
        assert_eq!(
            count_real_roots(&IntPoly::from_i64(&[-3, 0, 0, 0, 0, 0, 0, 0, 1])).unwrap(),
            2
        );
        assert_eq!(
            count_real_roots(&IntPoly::from_i64(&[-1, -1, 0, 1])).unwrap(),
            1
        );
        assert_eq!(
            count_real_roots(&IntPoly::from_i64(&[0, -1, 0, 1])).unwrap(),
            3
        );
        assert_eq!(count_real_roots(&IntPoly::from_i64(&[5])).unwrap(), 0);
    }

    #[test]
    fn rejects_repeated_roots() {
        let f = IntPoly::from_i64(&[1, -2, 1]);
        assert_eq!(count_real_roots(&f), Err(Error::NotSquarefree));
    }

    #[test]
    fn interval_counts() {
        let f = IntPoly::from_i64(&[0, -1, 0, 1]); // roots -1, 0, 1
        let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        assert_eq!(count_roots_in(&f, &q(-1, 2), &q(2, 1)).unwrap(), 2);
        assert_eq!(count_roots_in(&f, &q(-2, 1), &q(-1, 2)).unwrap(), 1);
    }
}
