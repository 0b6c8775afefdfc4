//! Search for an algebra over Q whose base changes to two fields disagree
//! with those of a given `B₀`.
//!
//! Adding two primes `ν₁, ν₂` to `Ram(B₀)` leaves `B ⊗ K₁` unchanged when
//! neither splits completely in `K₁` (all local degrees are then even powers
//! of two), and changes `B ⊗ K₂` when one of them splits completely there.

use serde::Serialize;

use super::algebra::{base_change, tensor_matches, AlgebraJson, QuaternionAlgebra};
use crate::error::{Error, Result};
use crate::fppoly::primes_up_to;
use crate::numfield::{uniformity_evidence, NumberField};

#[derive(Debug, Clone, Serialize)]
pub struct Transcript {
    pub b0: AlgebraJson,
    pub b: AlgebraJson,
    pub nu: [u64; 2],
    pub nu_split_completely_in_k2: [bool; 2],
    pub b0_over_k1: AlgebraJson,
    pub b_over_k1: AlgebraJson,
    pub b0_over_k2: AlgebraJson,
    pub b_over_k2: AlgebraJson,
    pub matches_over_k1: bool,
    pub matches_over_k2: bool,
    pub excluded_primes: Vec<u64>,
}

impl Transcript {
    /// `B ⊗ K₁ ≅ B₀ ⊗ K₁` and `B ⊗ K₂ ≇ B₀ ⊗ K₂`.
    pub fn verified(&self) -> bool {
        self.matches_over_k1 && !self.matches_over_k2
    }
}

#[derive(Debug, Clone)]
pub struct Distinguisher {
    pub algebra: QuaternionAlgebra,
    pub b_over_k1: QuaternionAlgebra,
    pub b_over_k2: QuaternionAlgebra,
    pub transcript: Transcript,
}

fn check_hypotheses(k: &NumberField, bound: u64) -> Result<()> {
    let n = k.degree();
    if !n.is_power_of_two() || n < 2 {
        return Err(Error::HypothesisViolation(format!(
            "{} has degree {n}, not a power of two",
            k.poly()
        )));
    }
    let ev = uniformity_evidence(k, bound, &[]);
    if !ev.uniform {
        return Err(Error::HypothesisViolation(format!(
            "{} splits non-uniformly at {:?}",
            k.poly(),
            ev.non_uniform_primes
        )));
    }
    Ok(())
}

/// Finds `B` with `Ram(B) = Ram(B₀) ∪ {ν₁, ν₂}` separating `K₁` from `K₂`,
/// or `None` if no pair of primes up to `bound` works.
pub fn distinguisher_search(
    b0: &QuaternionAlgebra,
    k1: &NumberField,
    k2: &NumberField,
    bound: u64,
) -> Result<Option<Distinguisher>> {
    if !b0.field().is_rational() {
        return Err(Error::BaseNotRational);
    }
    if k1.degree() != k2.degree() {
        return Err(Error::HypothesisViolation(format!(
            "degrees differ: {} vs {}",
            k1.degree(),
            k2.degree()
        )));
    }
    check_hypotheses(k1, bound)?;
    check_hypotheses(k2, bound)?;

    let ram0 = b0.finite_ram_primes();
    let mut excluded = Vec::new();
    // (p, splits completely in K2)
    let mut candidates: Vec<(u64, bool)> = Vec::new();
    for p in primes_up_to(bound) {
        let (Ok(t1), Ok(t2)) = (k1.splitting_type(p), k2.splitting_type(p)) else {
            excluded.push(p);
            continue;
        };
        if ram0.contains(&p) || t1.predicates().splits_completely {
            continue;
        }
        candidates.push((p, t2.predicates().splits_completely));
    }

    let split: Vec<u64> = candidates.iter().filter(|c| c.1).map(|c| c.0).collect();
    let pair = if split.len() >= 2 {
        [split[0], split[1]]
    } else if let Some(&s) = split.first() {
        match candidates.iter().find(|c| c.0 != s) {
            Some(&(o, _)) => [s.min(o), s.max(o)],
            None => return Ok(None),
        }
    } else {
        return Ok(None);
    };

    let mut primes: Vec<u64> = ram0.iter().copied().collect();
    primes.extend(pair);
    let b = QuaternionAlgebra::rational_over(b0.field(), &primes, b0.ramified_real_places() > 0)?;
    let b0k1 = base_change(b0, k1)?;
    let b0k2 = base_change(b0, k2)?;
    let bk1 = base_change(&b, k1)?;
    let bk2 = base_change(&b, k2)?;
    let transcript = Transcript {
        b0: b0.to_json(),
        b: b.to_json(),
        nu: pair,
        nu_split_completely_in_k2: pair.map(|p| split.contains(&p)),
        b0_over_k1: b0k1.to_json(),
        b_over_k1: bk1.to_json(),
        b0_over_k2: b0k2.to_json(),
        b_over_k2: bk2.to_json(),
        matches_over_k1: tensor_matches(&b, &b0k1)?,
        matches_over_k2: tensor_matches(&b, &b0k2)?,
        excluded_primes: excluded,
    };
    debug_assert!(transcript.verified());
    Ok(Some(Distinguisher {
        algebra: b,
        b_over_k1: bk1,
        b_over_k2: bk2,
        transcript,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_versus_minus_five() {
        let gi = NumberField::parse("x^2+1").unwrap();
        let k5 = NumberField::parse("x^2+5").unwrap();
        let m2 = QuaternionAlgebra::rational(&[], false).unwrap();
        let d = distinguisher_search(&m2, &gi, &k5, 50).unwrap().unwrap();
        assert_eq!(d.algebra.to_string(), "B{3,7}");
        assert!(d.b_over_k1.is_split());
        assert_eq!(d.b_over_k2.ram().len(), 4);
        assert!(d.transcript.verified());

        let h = QuaternionAlgebra::rational(&[2], true).unwrap();
        let d = distinguisher_search(&h, &gi, &k5, 50).unwrap().unwrap();
        assert_eq!(d.algebra.to_string(), "B{2,3,7,inf}");
    }

    #[test]
    fn identical_fields_have_none() {
        let gi = NumberField::parse("x^2+1").unwrap();
        let m2 = QuaternionAlgebra::rational(&[], false).unwrap();
        assert!(distinguisher_search(&m2, &gi, &gi, 50).unwrap().is_none());
    }

    #[test]
    fn hypotheses_enforced() {
        let cubic = NumberField::parse("x^3-2").unwrap();
        let m2 = QuaternionAlgebra::rational(&[], false).unwrap();
        assert!(matches!(
            distinguisher_search(&m2, &cubic, &cubic, 50),
            Err(Error::HypothesisViolation(_))
        ));
        let k = NumberField::parse("x^8-3").unwrap();
        assert!(matches!(
            distinguisher_search(&m2, &k, &k, 200),
            Err(Error::HypothesisViolation(_))
        ));
    }
}
