//! Irreducibility certificates for monic integer polynomials.
//!
//! A rational factor of degree `d` reduces, at every prime where Dedekind's
//! criterion holds, to a union of local pieces, so `d` must be a subset sum of
//! the local degrees `e_i f_i`. Degrees that survive the sieve are ruled out
//! (or exhibited) by a bounded search over CRT-combined modular factors under
//! the Mignotte coefficient bound.

use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::dedekind::{dedekind, DedekindOutcome};
use crate::error::{Error, Result};
use crate::fppoly::{is_prime, Factor, IntPoly, PolyModP};

/// Number of usable primes fed to the degree sieve.
pub const SIEVE_PRIMES: usize = 50;
const MAX_SIEVE_PRIME: u64 = 100_000;
const MAX_SEARCH_LEAVES: u64 = 2_000_000;
const MAX_OPTIONS_PER_PRIME: usize = 20_000;

/// How irreducibility was established.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum IrreducibilityEvidence {
    Linear,
    /// Irreducible modulo an unramified prime.
    InertPrime {
        p: u64,
    },
    /// No proper factor degree is compatible with the local degrees.
    DegreeSieve {
        primes: Vec<u64>,
    },
    /// Surviving degrees excluded by exhaustive bounded factor search.
    FactorSearch {
        degrees: Vec<usize>,
        moduli: Vec<u64>,
    },
    /// Asserted by the caller.
    Trusted,
}

struct Sample {
    p: u64,
    unramified: bool,
    factors: Vec<Factor>,
}

fn subset_sums(pieces: &[usize], n: usize) -> Vec<bool> {
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for &d in pieces {
        for s in (d..=n).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    reach
}

/// Certifies that monic `f` is irreducible over Q or returns `Reducible` /
/// `InconclusiveIrreducibility`. `disc` is the discriminant of `f`.
pub fn certify_irreducible(f: &IntPoly, disc: &BigInt) -> Result<IrreducibilityEvidence> {
    let n = f.deg();
    if !f.is_monic() || n == 0 {
        return Err(Error::NotMonic);
    }
    if n == 1 {
        return Ok(IrreducibilityEvidence::Linear);
    }
    if disc.is_zero() {
        return Err(Error::Reducible(format!("{f} has a repeated factor")));
    }
    if f.coeff(0).is_zero() {
        return Err(Error::Reducible(format!("x divides {f}")));
    }

    let mut possible = vec![true; n + 1];
    let mut samples: Vec<Sample> = Vec::new();
    let mut sieve_primes = Vec::new();
    let mut p = 1u64;
    while samples.len() < SIEVE_PRIMES && p < MAX_SIEVE_PRIME {
        p += 1;
        if !is_prime(p) {
            continue;
        }
        let unramified = !(disc % BigInt::from(p)).is_zero();
        let factors = match dedekind(f, p)? {
            DedekindOutcome::Regular(factors) => factors,
            DedekindOutcome::IndexPrime => continue,
        };
        let pieces: Vec<usize> = factors
            .iter()
            .map(|fac| fac.multiplicity * fac.poly.deg())
            .collect();
        if unramified && pieces.len() == 1 {
            return Ok(IrreducibilityEvidence::InertPrime { p });
        }
        let reach = subset_sums(&pieces, n);
        for d in 1..n {
            possible[d] &= reach[d];
        }
        sieve_primes.push(p);
        samples.push(Sample {
            p,
            unramified,
            factors,
        });
        if (1..n).all(|d| !possible[d]) {
            return Ok(IrreducibilityEvidence::DegreeSieve {
                primes: sieve_primes,
            });
        }
    }

    let degrees: Vec<usize> = (1..=n / 2).filter(|&d| possible[d]).collect();
    let mut moduli = Vec::new();
    for &d in &degrees {
        let used = search_factor(f, d, &samples)?;
        moduli.extend(used);
    }
    moduli.sort_unstable();
    moduli.dedup();
    Ok(IrreducibilityEvidence::FactorSearch { degrees, moduli })
}

/// All monic products of a subset of the factors with total degree `d`.
fn degree_d_products(factors: &[Factor], d: usize) -> Option<Vec<PolyModP>> {
    let mut out = Vec::new();
    let m = factors[0].poly.modulus();
    fn rec(
        factors: &[Factor],
        start: usize,
        left: usize,
        acc: &PolyModP,
        out: &mut Vec<PolyModP>,
    ) -> bool {
        if left == 0 {
            out.push(acc.clone());
            return out.len() <= MAX_OPTIONS_PER_PRIME;
        }
        for i in start..factors.len() {
            let deg = factors[i].poly.deg();
            if deg <= left && !rec(factors, i + 1, left - deg, &acc.mul(&factors[i].poly), out) {
                return false;
            }
        }
        true
    }
    rec(factors, 0, d, &PolyModP::one(m), &mut out).then_some(out)
}

fn ceil_sqrt(v: &BigInt) -> BigInt {
    let r = v.sqrt();
    if &(&r * &r) < v {
        r + 1
    } else {
        r
    }
}

/// Exhaustive search for a monic degree-`d` factor. Returns the moduli used
/// when none exists.
fn search_factor(f: &IntPoly, d: usize, samples: &[Sample]) -> Result<Vec<u64>> {
    let norm = ceil_sqrt(&f.norm2_squared());
    let bounds: Vec<BigInt> = (0..d)
        .map(|j| BigInt::from(binomial(d as u64, j as u64)) * &norm)
        .collect();
    let max_bound = bounds.iter().max().cloned().unwrap_or_else(BigInt::one);
    let needed = BigInt::from(2) * &max_bound + 1;

    let mut options: Vec<(u64, Vec<PolyModP>)> = samples
        .iter()
        .filter(|s| s.unramified)
        .filter_map(|s| degree_d_products(&s.factors, d).map(|opts| (s.p, opts)))
        .collect();
    // cheapest information first: fewest candidates per bit of modulus
    options.sort_by(|a, b| {
        let ka = (a.1.len() as f64).ln() / (a.0 as f64).ln();
        let kb = (b.1.len() as f64).ln() / (b.0 as f64).ln();
        ka.partial_cmp(&kb).unwrap().then(a.0.cmp(&b.0))
    });

    let mut chosen: Vec<(u64, Vec<PolyModP>)> = Vec::new();
    let mut modulus = BigInt::one();
    let mut leaves: u64 = 1;
    for (p, opts) in options {
        if modulus >= needed {
            break;
        }
        leaves = leaves.saturating_mul(opts.len() as u64);
        if leaves > MAX_SEARCH_LEAVES {
            return Err(Error::InconclusiveIrreducibility(format!(
                "degree-{d} factor search for {f} exceeds {MAX_SEARCH_LEAVES} candidates"
            )));
        }
        modulus *= p;
        chosen.push((p, opts));
    }
    if modulus < needed {
        return Err(Error::InconclusiveIrreducibility(format!(
            "not enough unramified primes to bound a degree-{d} factor of {f}"
        )));
    }

    let mut residues = vec![BigInt::zero(); d];
    if let Some(g) = crt_search(f, d, &bounds, &chosen, 0, &BigInt::one(), &mut residues) {
        return Err(Error::Reducible(format!("{g} divides {f}")));
    }
    Ok(chosen.iter().map(|(p, _)| *p).collect())
}

fn crt_search(
    f: &IntPoly,
    d: usize,
    bounds: &[BigInt],
    chosen: &[(u64, Vec<PolyModP>)],
    level: usize,
    modulus: &BigInt,
    residues: &mut Vec<BigInt>,
) -> Option<IntPoly> {
    if level == chosen.len() {
        return test_candidate(f, d, bounds, modulus, residues);
    }
    let (p, opts) = &chosen[level];
    let pb = BigInt::from(*p);
    let m_inv = modulus.mod_floor(&pb).modpow(&(&pb - 2), &pb);
    let next_modulus = modulus * &pb;
    let saved = residues.clone();
    for opt in opts {
        for j in 0..d {
            let b = BigInt::from(opt.coeffs()[j]);
            let a = &saved[j];
            let t = ((b - a) * &m_inv).mod_floor(&pb);
            residues[j] = a + modulus * t;
        }
        if let Some(g) = crt_search(f, d, bounds, chosen, level + 1, &next_modulus, residues) {
            return Some(g);
        }
    }
    residues.clone_from(&saved);
    None
}

fn test_candidate(
    f: &IntPoly,
    d: usize,
    bounds: &[BigInt],
    modulus: &BigInt,
    residues: &[BigInt],
) -> Option<IntPoly> {
    let half = modulus / 2;
    let mut coeffs = Vec::with_capacity(d + 1);
    for (j, r) in residues.iter().enumerate() {
        let c = if r > &half { r - modulus } else { r.clone() };
        if c.abs() > bounds[j] {
            return None;
        }
        coeffs.push(c);
    }
    let c0 = f.coeff(0);
    if coeffs[0].is_zero() || !(&c0 % &coeffs[0]).is_zero() {
        return None;
    }
    coeffs.push(BigInt::one());
    let g = IntPoly::new(coeffs);
    let (_, r) = f.div_rem_monic(&g);
    r.is_zero().then_some(g)
}

/// Result of `f(x) = c^n g(x / c)` with maximal `c > 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub scale: BigInt,
    pub reduced: IntPoly,
}

fn trial_factor(mut m: BigInt) -> Vec<BigInt> {
    let mut primes = Vec::new();
    let mut q = BigInt::from(2);
    let limit = BigInt::from(1_000_000u32);
    while &q * &q <= m && q <= limit {
        if (&m % &q).is_zero() {
            primes.push(q.clone());
            while (&m % &q).is_zero() {
                m /= &q;
            }
        }
        q += if q == BigInt::from(2) { 1 } else { 2 };
    }
    if m > BigInt::one() {
        primes.push(m);
    }
    primes
}

fn valuation(v: &BigInt, q: &BigInt) -> usize {
    let mut v = v.clone();
    let mut k = 0;
    while !v.is_zero() && (&v % q).is_zero() {
        v /= q;
        k += 1;
    }
    k
}

/// Generator reduction: the largest `c > 1` with `c^(n-i) | a_i` for all
/// `i < n`, if any.
pub fn generator_reduction(f: &IntPoly) -> Option<Reduction> {
    let n = f.deg();
    if n <= 1 || !f.is_monic() {
        return None;
    }
    let g0 = (0..n)
        .map(|i| f.coeff(i))
        .filter(|c| !c.is_zero())
        .fold(BigInt::zero(), |g, c| g.gcd(&c));
    if g0.is_zero() || g0.is_one() {
        return None;
    }
    let mut scale = BigInt::one();
    for q in trial_factor(g0) {
        let k = (0..n)
            .filter(|&i| !f.coeff(i).is_zero())
            .map(|i| valuation(&f.coeff(i), &q) / (n - i))
            .min()
            .unwrap_or(0);
        if k > 0 {
            scale *= num_traits::pow(q, k);
        }
    }
    if scale.is_one() {
        return None;
    }
    let reduced = IntPoly::new(
        (0..=n)
            .map(|i| f.coeff(i) / num_traits::pow(scale.clone(), n - i))
            .collect(),
    );
    debug_assert_eq!(reduced.scale_root(&scale), *f);
    Some(Reduction { scale, reduced })
}

impl IrreducibilityEvidence {
    pub fn describe(&self) -> String {
        match self {
            IrreducibilityEvidence::Linear => "degree 1".into(),
            IrreducibilityEvidence::InertPrime { p } => format!("irreducible modulo {p}"),
            IrreducibilityEvidence::DegreeSieve { primes } => {
                format!("local degree sieve over primes {primes:?}")
            }
            IrreducibilityEvidence::FactorSearch { degrees, moduli } => format!(
                "bounded factor search excluded degrees {:?} using moduli {:?}",
                degrees, moduli
            ),
            IrreducibilityEvidence::Trusted => "trusted by caller".into(),
        }
    }
}
