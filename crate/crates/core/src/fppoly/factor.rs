//! Factorization over F_p: squarefree split, distinct-degree split, then
//! randomized equal-degree split.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::intpoly::IntPoly;
use super::modp::{PolyModP, PrimeModulus};
use crate::error::{Error, Result};

/// Default seed for the equal-degree split.
pub const DEFAULT_FACTOR_SEED: u64 = 0x5eed_b7a0_e4c1_0001;

/// One irreducible monic factor and its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub poly: PolyModP,
    pub multiplicity: usize,
}

/// Factors a monic integer polynomial modulo `p` with the default seed.
pub fn factor_mod_p(f: &IntPoly, p: u64) -> Result<Vec<Factor>> {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_FACTOR_SEED ^ p);
    factor_mod_p_with_rng(f, p, &mut rng)
}

/// Factors a monic integer polynomial modulo `p`, drawing the equal-degree
/// splitting randomness from `rng`. The output order is canonical
/// (degree ascending, then coefficient lists) and independent of `rng`.
pub fn factor_mod_p_with_rng<R: Rng + ?Sized>(
    f: &IntPoly,
    p: u64,
    rng: &mut R,
) -> Result<Vec<Factor>> {
    let modulus = PrimeModulus::new(p)?;
    if !f.is_monic() || f.deg() == 0 {
        return Err(Error::NotMonic);
    }
    Ok(factor_poly(&f.reduce_mod(modulus), rng))
}

/// Factors a nonzero polynomial over F_p into monic irreducibles
/// (leading coefficient dropped).
pub fn factor_poly<R: Rng + ?Sized>(f: &PolyModP, rng: &mut R) -> Vec<Factor> {
    let f = f.monic();
    let mut out: Vec<Factor> = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    for (sqf, mult) in squarefree_decomposition(&f) {
        for (block, d) in distinct_degree(&sqf) {
            for irr in equal_degree(&block, d, rng) {
                out.push(Factor {
                    poly: irr,
                    multiplicity: mult,
                });
            }
        }
    }
    out.sort_by(|a, b| a.poly.canonical_cmp(&b.poly));
    out
}

/// Squarefree decomposition of a monic polynomial: pairs `(g, m)` with the
/// `g` squarefree, pairwise coprime, and `f = prod g^m`.
pub fn squarefree_decomposition(f: &PolyModP) -> Vec<(PolyModP, usize)> {
    let mut out = Vec::new();
    sff_into(&f.monic(), 1, &mut out);
    out
}

fn sff_into(f: &PolyModP, scale: usize, out: &mut Vec<(PolyModP, usize)>) {
    if f.deg() == 0 {
        return;
    }
    let m = f.modulus();
    let p = m.get() as usize;
    let df = f.derivative();
    if df.is_zero() {
        sff_into(&pth_root(f), scale * p, out);
        return;
    }
    let mut c = f.gcd(&df);
    let mut w = f.div_exact(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y);
        if !fac.is_one() {
            out.push((fac, i * scale));
        }
        w = y;
        c = c.div_exact(&w);
        i += 1;
    }
    if !c.is_one() {
        sff_into(&pth_root(&c), scale * p, out);
    }
}

/// For `f(x) = g(x^p)` returns `g` (Frobenius is the identity on F_p).
fn pth_root(f: &PolyModP) -> PolyModP {
    let p = f.modulus().get() as usize;
    let coeffs = f.coeffs().iter().step_by(p).copied().collect();
    PolyModP::new(f.modulus(), coeffs)
}

/// Splits a squarefree monic polynomial into products of irreducibles of
/// equal degree: pairs `(product, degree)`.
pub fn distinct_degree(f: &PolyModP) -> Vec<(PolyModP, usize)> {
    let m = f.modulus();
    let p = m.get();
    let x = PolyModP::x(m);
    let mut out = Vec::new();
    let mut rest = f.monic();
    let mut h = x.rem(&rest);
    let mut d = 1;
    while rest.deg() >= 2 * d {
        h = h.pow_mod(p, &rest);
        let g = rest.gcd(&h.sub(&x));
        if !g.is_one() {
            rest = rest.div_exact(&g);
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if rest.deg() > 0 {
        let deg = rest.deg();
        out.push((rest, deg));
    }
    out
}

/// Splits a squarefree monic product of irreducibles of degree `d`.
pub fn equal_degree<R: Rng + ?Sized>(f: &PolyModP, d: usize, rng: &mut R) -> Vec<PolyModP> {
    let n = f.deg();
    if n == d {
        return vec![f.monic()];
    }
    let m = f.modulus();
    let p = m.get();
    loop {
        let a = PolyModP::new(m, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.deg() == 0 {
            continue;
        }
        let g = f.gcd(&a);
        let candidate = if !g.is_one() {
            g
        } else {
            let b = if p == 2 {
                trace_map(&a, d, f)
            } else {
                half_norm_power(&a, d, f).sub(&PolyModP::one(m))
            };
            f.gcd(&b)
        };
        if !candidate.is_one() && candidate.deg() < n {
            let rest = f.div_exact(&candidate);
            let mut out = equal_degree(&candidate, d, rng);
            out.extend(equal_degree(&rest, d, rng));
            return out;
        }
    }
}

/// `a^((p^d - 1)/2) mod f`, via `(p^d - 1)/2 = (1 + p + ... + p^(d-1)) (p - 1)/2`.
fn half_norm_power(a: &PolyModP, d: usize, f: &PolyModP) -> PolyModP {
    let p = a.modulus().get();
    let mut frob = a.rem(f);
    let mut norm = frob.clone();
    for _ in 1..d {
        frob = frob.pow_mod(p, f);
        norm = norm.mul(&frob).rem(f);
    }
    norm.pow_mod((p - 1) / 2, f)
}

/// `a + a^2 + a^4 + ... + a^(2^(d-1)) mod f` over F_2.
fn trace_map(a: &PolyModP, d: usize, f: &PolyModP) -> PolyModP {
    let mut term = a.rem(f);
    let mut acc = term.clone();
    for _ in 1..d {
        term = term.mul(&term).rem(f);
        acc = acc.add(&term);
    }
    acc
}

/// Product of the factors with multiplicity.
pub fn expand(factors: &[Factor], modulus: PrimeModulus) -> PolyModP {
    factors.iter().fold(PolyModP::one(modulus), |acc, fac| {
        (0..fac.multiplicity).fold(acc, |acc, _| acc.mul(&fac.poly))
    })
}

/// Irreducibility test over F_p: no roots in any extension of degree
/// at most `deg/2` (Ben-Or style gcd with `x^(p^k) - x`).
pub fn is_irreducible(f: &PolyModP) -> bool {
    let f = f.monic();
    let n = f.deg();
    if n == 0 {
        return false;
    }
    let m = f.modulus();
    let x = PolyModP::x(m);
    let mut h = x.rem(&f);
    for _ in 1..=n / 2 {
        h = h.pow_mod(m.get(), &f);
        if !f.gcd(&h.sub(&x)).is_one() {
            return false;
        }
    }
    true
}
