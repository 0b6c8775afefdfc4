//! Independent oracles for the integration and acceptance tests. Nothing here
//! calls into the library's arithmetic.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

// ---------- schoolbook polynomials over F_p (low-to-high, u64) ----------

pub fn trim(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

pub fn mul_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y % p) % p;
        }
    }
    trim(&mut out);
    out
}

pub fn pow_poly_mod(a: &[u64], e: usize, p: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for _ in 0..e {
        out = mul_mod(&out, a, p);
    }
    out
}

/// Remainder of `a` by a monic `b`.
pub fn rem_monic(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db && !(r.len() == 1 && r[0] == 0) {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * bi % p) % p;
        }
        r.pop();
        trim(&mut r);
        if r.len() <= db {
            break;
        }
    }
    if r.is_empty() {
        r.push(0);
    }
    trim(&mut r);
    r
}

pub fn is_zero_poly(a: &[u64]) -> bool {
    a.iter().all(|&c| c == 0)
}

/// All monic polynomials of degree `d` over F_p.
pub fn monic_polys(d: usize, p: u64) -> Vec<Vec<u64>> {
    let count = (p as usize).pow(d as u32);
    (0..count)
        .map(|mut k| {
            let mut v = Vec::with_capacity(d + 1);
            for _ in 0..d {
                v.push((k % p as usize) as u64);
                k /= p as usize;
            }
            v.push(1);
            v
        })
        .collect()
}

/// Irreducibility by trial division over every monic polynomial of degree at most d/2.
pub fn brute_irreducible(f: &[u64], p: u64) -> bool {
    let d = f.len() - 1;
    if d == 0 {
        return false;
    }
    (1..=d / 2).all(|k| {
        monic_polys(k, p)
            .iter()
            .all(|g| !is_zero_poly(&rem_monic(f, g, p)))
    })
}

// ---------- exact real-root counting by Descartes' rule plus bisection ----------

fn sign_variations(c: &[BigInt]) -> usize {
    let signs: Vec<bool> = c
        .iter()
        .filter(|x| !x.is_zero())
        .map(|x| x.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Coefficients of `q(x + 1)`.
fn taylor_shift_one(q: &[BigInt]) -> Vec<BigInt> {
    let mut a = q.to_vec();
    let n = a.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = a[j + 1].clone();
            a[j] += t;
        }
    }
    a
}

/// Roots of `q` in the open interval (0, 1), `q` squarefree.
fn roots_in_unit_interval(q: &[BigInt], depth: usize) -> usize {
    // (1 + y)^n q(1 / (1 + y)): reverse then shift
    let mut rev: Vec<BigInt> = q.iter().rev().cloned().collect();
    rev = taylor_shift_one(&rev);
    let v = sign_variations(&rev);
    if v <= 1 {
        return v;
    }
    assert!(depth < 200, "bisection did not terminate");
    let n = q.len() - 1;
    // left half: 2^n q(y / 2)
    let left: Vec<BigInt> = q.iter().enumerate().map(|(i, c)| c << (n - i)).collect();
    // right half: 2^n q((y + 1) / 2) = left shifted by one
    let right = taylor_shift_one(&left);
    let mid = if right[0].is_zero() { 1 } else { 0 };
    let right_trimmed: Vec<BigInt> = if mid == 1 {
        deflate_at_zero(&right)
    } else {
        right
    };
    mid + roots_in_unit_interval(&left, depth + 1)
        + roots_in_unit_interval(&right_trimmed, depth + 1)
}

fn deflate_at_zero(q: &[BigInt]) -> Vec<BigInt> {
    q[1..].to_vec()
}

/// Positive real roots of a squarefree integer polynomial.
fn positive_roots(f: &[BigInt]) -> usize {
    let mut f = f.to_vec();
    while f[0].is_zero() {
        f.remove(0);
    }
    let lead = f.last().unwrap().abs();
    let max = f.iter().map(|c| c.abs()).max().unwrap();
    // every root has |x| < 1 + max / lead <= bound
    let bound: BigInt = &max / &lead + 2;
    let scaled: Vec<BigInt> = f
        .iter()
        .enumerate()
        .map(|(i, c)| c * bound.pow(i as u32))
        .collect();
    roots_in_unit_interval(&scaled, 0)
}

/// Number of distinct real roots of a squarefree integer polynomial.
pub fn descartes_real_roots(f: &[i64]) -> usize {
    let big: Vec<BigInt> = f.iter().map(|&c| BigInt::from(c)).collect();
    let zero = usize::from(big[0].is_zero());
    let neg: Vec<BigInt> = big
        .iter()
        .enumerate()
        .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
        .collect();
    zero + positive_roots(&big) + positive_roots(&neg)
}

// ---------- determinants by rational Gaussian elimination ----------

pub fn rational_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigInt::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let pv = a[col][col].clone();
        det *= &pv;
        for r in col + 1..n {
            let factor = &a[r][col] / &pv;
            if factor.is_zero() {
                continue;
            }
            let pivot_row = a[col].clone();
            for (c, x) in pivot_row.iter().enumerate().skip(col) {
                a[r][c] -= &factor * x;
            }
        }
    }
    assert!(det.is_integer());
    det.to_integer()
}

/// Sylvester matrix built from scratch (coefficients high-to-low along rows).
pub fn sylvester(f: &[i64], g: &[i64]) -> Vec<Vec<BigInt>> {
    let (m, n) = (f.len() - 1, g.len() - 1);
    let size = m + n;
    let mut rows = Vec::new();
    for i in 0..n {
        let mut row = vec![BigInt::zero(); size];
        for (j, c) in f.iter().rev().enumerate() {
            row[i + j] = BigInt::from(*c);
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![BigInt::zero(); size];
        for (j, c) in g.iter().rev().enumerate() {
            row[i + j] = BigInt::from(*c);
        }
        rows.push(row);
    }
    rows
}

/// disc(f) = (-1)^{n(n-1)/2} Res(f, f') / lc(f).
pub fn oracle_discriminant(f: &[i64]) -> BigInt {
    let n = f.len() - 1;
    let df: Vec<i64> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| i as i64 * c)
        .collect();
    let res = rational_det(&sylvester(f, &df));
    let sign = if (n * (n - 1) / 2) % 2 == 1 { -1 } else { 1 };
    res * sign / BigInt::from(*f.last().unwrap())
}

// ---------- cyclotomic polynomials and catalog fields ----------

/// Φ_m with integer coefficients, by dividing x^m - 1 by Φ_d for d | m, d < m.
pub fn cyclotomic(m: u64) -> Vec<i64> {
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            let den = cyclotomic(d);
            num = exact_div(&num, &den);
        }
    }
    num
}

fn exact_div(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![0i64; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db] / b[db];
        q[k] = c;
        for (i, bi) in b.iter().enumerate() {
            r[k + i] -= c * bi;
        }
    }
    assert!(r.iter().all(|&x| x == 0));
    q
}

pub fn is_squarefree(d: i64) -> bool {
    let a = d.unsigned_abs();
    (2..)
        .take_while(|k| k * k <= a)
        .all(|k| !a.is_multiple_of(k * k))
}

/// Monogenic defining polynomial of Q(sqrt(d)): the minimal polynomial of a
/// generator of the full ring of integers.
pub fn quadratic_poly(d: i64) -> Vec<i64> {
    if d.rem_euclid(4) == 1 {
        vec![-(d - 1) / 4, -1, 1]
    } else {
        vec![-d, 0, 1]
    }
}

pub fn legendre(a: i64, p: u64) -> i64 {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

pub fn small_primes(bound: u64) -> Vec<u64> {
    (2..=bound)
        .filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0))
        .collect()
}

pub fn random_poly_mod<R: Rng>(rng: &mut R, deg: usize, p: u64) -> Vec<u64> {
    let mut v: Vec<u64> = (0..deg).map(|_| rng.gen_range(0..p)).collect();
    v.push(1);
    v
}
