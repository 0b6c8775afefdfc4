//! Dedekind's criterion: reading the decomposition of `p` off the
//! factorization of the defining polynomial modulo `p`.

use num_bigint::BigInt;

use super::place::{LocalFactor, PrimeDecomposition};
use crate::error::{Error, Result};
use crate::fppoly::{factor_mod_p, Factor, IntPoly, PolyModP, PrimeModulus};

/// Outcome of the criterion at one prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DedekindOutcome {
    /// `p` does not divide the index of `Z[x]/(f)`; factors in canonical order.
    Regular(Vec<Factor>),
    /// `p` divides the index; the factorization says nothing reliable.
    IndexPrime,
}

/// Runs the criterion for monic `f` at prime `p`.
pub fn dedekind(f: &IntPoly, p: u64) -> Result<DedekindOutcome> {
    let modulus = PrimeModulus::new(p)?;
    let factors = factor_mod_p(f, p)?;
    if factors.iter().all(|fac| fac.multiplicity == 1) {
        return Ok(DedekindOutcome::Regular(factors));
    }
    // g = product of distinct factors, h = fbar / g, F = (g h - f) / p
    let one = PolyModP::one(modulus);
    let g_bar = factors
        .iter()
        .fold(one.clone(), |acc, fac| acc.mul(&fac.poly));
    let h_bar = factors.iter().fold(one, |acc, fac| {
        (1..fac.multiplicity).fold(acc, |acc, _| acc.mul(&fac.poly))
    });
    let g = IntPoly::lift(&g_bar);
    let h = IntPoly::lift(&h_bar);
    let diff = g.mul(&h).sub(f);
    let big_f = diff
        .div_scalar_exact(&BigInt::from(p))
        .expect("g h agrees with f modulo p");
    let f_bar = big_f.reduce_mod(modulus);
    let fails = factors
        .iter()
        .filter(|fac| fac.multiplicity >= 2)
        .any(|fac| f_bar.rem(&fac.poly).is_zero());
    if fails {
        Ok(DedekindOutcome::IndexPrime)
    } else {
        Ok(DedekindOutcome::Regular(factors))
    }
}

/// Decomposition of `p`, or `IndexPrime`.
pub fn decompose(f: &IntPoly, p: u64) -> Result<PrimeDecomposition> {
    match dedekind(f, p)? {
        DedekindOutcome::Regular(factors) => Ok(PrimeDecomposition {
            p,
            factors: factors
                .iter()
                .map(|fac| LocalFactor {
                    e: fac.multiplicity,
                    f: fac.poly.deg(),
                })
                .collect(),
        }),
        DedekindOutcome::IndexPrime => Err(Error::IndexPrime {
            poly: f.to_string(),
            p,
        }),
    }
}
