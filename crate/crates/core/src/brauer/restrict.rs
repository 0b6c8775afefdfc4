//! Restriction (extension of scalars): every local invariant is multiplied by
//! the local degree of the extension at the place above it.

use std::collections::BTreeMap;

use super::class::{make_class, BrauerClass};
use super::qmodz::QmodZ;
use crate::error::{Error, Result};
use crate::numfield::{uniformity_evidence, NumberField, Place};

/// Restriction of a class over Q to `target`.
pub fn restrict_from_q(class: &BrauerClass, target: &NumberField) -> Result<BrauerClass> {
    if !class.field().is_rational() {
        return Err(Error::BaseNotRational);
    }
    let mut out: Vec<(Place, QmodZ)> = Vec::new();
    for (place, value) in class.support() {
        match place {
            Place::Finite { p, .. } => {
                for (above, lf) in target.places_over(*p)? {
                    out.push((above, value.scale(lf.degree())));
                }
            }
            Place::Real { .. } => {
                // complex places of the target receive 2 * 1/2 = 0
                out.extend(
                    target
                        .real_places()
                        .into_iter()
                        .map(|pl| (pl, value.clone())),
                );
            }
            Place::Complex { .. } => unreachable!("Q has no complex places"),
        }
    }
    make_class(target, &out)
}

/// Restriction from `class.field()` (a field F) to `target` (a field L
/// containing F), for extensions whose splitting is uniform at every good
/// prime up to `bound` and at the support primes.
///
/// Invariants of the places of F above `p` are multiplied by the relative
/// local degree and assigned to consecutive runs of places of L above `p`
/// in canonical order; the matching inside a block is canonical but not
/// intrinsic, so callers compare results up to block matching.
pub fn restrict_relative(
    class: &BrauerClass,
    target: &NumberField,
    bound: u64,
) -> Result<BrauerClass> {
    let base = class.field();
    if base.is_rational() {
        return restrict_from_q(class, target);
    }
    let (nf, nl) = (base.degree(), target.degree());
    if nl % nf != 0 {
        return Err(Error::NonIntegralRelativeDegree(format!(
            "[L:Q] = {nl} is not a multiple of [F:Q] = {nf}"
        )));
    }
    let support_primes = class.support_primes();
    for (name, field) in [("base", base), ("target", target)] {
        let ev = uniformity_evidence(field, bound, &support_primes);
        if !ev.uniform {
            return Err(Error::NonUniformSplitting(format!(
                "{name} field {} has non-uniform splitting at {:?}",
                field.poly(),
                ev.non_uniform_primes
            )));
        }
    }

    let mut by_prime: BTreeMap<u64, Vec<(Place, QmodZ)>> = BTreeMap::new();
    let mut real_values = Vec::new();
    for (place, value) in class.support() {
        match place {
            Place::Finite { p, .. } => by_prime
                .entry(*p)
                .or_default()
                .push((*place, value.clone())),
            Place::Real { idx } => real_values.push((*idx, value.clone())),
            Place::Complex { .. } => {}
        }
    }

    let mut out: Vec<(Place, QmodZ)> = Vec::new();
    for (p, entries) in by_prime {
        let below = base.places_over(p)?;
        let above = target.places_over(p)?;
        let lf_base = below[0].1;
        let lf_top = above[0].1;
        if lf_top.degree() % lf_base.degree() != 0 || above.len() % below.len() != 0 {
            return Err(Error::NonIntegralRelativeDegree(format!(
                "at {p}: base (e,f)=({},{}) x{}, target (e,f)=({},{}) x{}",
                lf_base.e,
                lf_base.f,
                below.len(),
                lf_top.e,
                lf_top.f,
                above.len()
            )));
        }
        let rel = lf_top.degree() / lf_base.degree();
        let run = above.len() / below.len();
        for (place, value) in entries {
            let Place::Finite { idx, .. } = place else {
                unreachable!()
            };
            for (above_place, _) in &above[idx * run..(idx + 1) * run] {
                out.push((*above_place, value.scale(rel)));
            }
        }
    }

    if !real_values.is_empty() {
        let (r1f, r1l) = (base.real_place_count(), target.real_place_count());
        if r1l == 0 {
            // every real place of F becomes complex in L
        } else if r1f == nf && r1l == nl {
            let run = nl / nf;
            for (idx, value) in real_values {
                for j in idx * run..(idx + 1) * run {
                    out.push((Place::real(j), value.clone()));
                }
            }
        } else {
            return Err(Error::NonUniformSplitting(format!(
                "archimedean: base has {r1f} of {nf} real places, target {r1l} of {nl}"
            )));
        }
    }
    make_class(target, &out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brauer::{class_index, classes_equal};
    use num_bigint::BigInt;

    fn q(s: &str) -> QmodZ {
        s.parse().unwrap()
    }

    #[test]
    fn hamilton_splits_over_gaussian() {
        let qf = NumberField::rationals();
        let h = make_class(
            &qf,
            &[(Place::finite(2, 0), q("1/2")), (Place::real(0), q("1/2"))],
        )
        .unwrap();
        let gi = NumberField::parse("x^2+1").unwrap();
        assert!(restrict_from_q(&h, &gi).unwrap().is_trivial());
        assert!(restrict_from_q(&BrauerClass::trivial(&qf), &gi)
            .unwrap()
            .is_trivial());
    }

    #[test]
    fn index_three_over_gaussian() {
        let qf = NumberField::rationals();
        let c = make_class(
            &qf,
            &[
                (Place::finite(7, 0), q("1/3")),
                (Place::finite(13, 0), q("2/3")),
            ],
        )
        .unwrap();
        let gi = NumberField::parse("x^2+1").unwrap();
        let r = restrict_from_q(&c, &gi).unwrap();
        // 7 inert (f = 2): 2/3; 13 split: two places with 2/3 each
        let vals: Vec<String> = r.support().values().map(|v| v.to_string()).collect();
        assert_eq!(vals, vec!["2/3", "2/3", "2/3"]);
        assert_eq!(
            r.support().keys().filter(|p| p.prime() == Some(13)).count(),
            2
        );
        assert_eq!(class_index(&r), BigInt::from(3));
    }

    #[test]
    fn identity_over_q() {
        let qf = NumberField::rationals();
        let c = make_class(
            &qf,
            &[
                (Place::finite(7, 0), q("1/3")),
                (Place::finite(13, 0), q("2/3")),
            ],
        )
        .unwrap();
        assert!(classes_equal(&restrict_from_q(&c, &qf).unwrap(), &c, false).unwrap());
    }

    #[test]
    fn real_quadratic_to_cyclotomic() {
        let f = NumberField::parse("x^2-2").unwrap();
        let l = NumberField::parse("x^8+1").unwrap();
        assert_eq!(f.places_over(7).unwrap().len(), 2);
        let c = make_class(
            &f,
            &[
                (Place::finite(7, 0), q("1/2")),
                (Place::finite(23, 0), q("1/2")),
            ],
        )
        .unwrap();
        assert!(restrict_relative(&c, &l, 500).unwrap().is_trivial());
        assert!(restrict_relative(&BrauerClass::trivial(&f), &l, 500)
            .unwrap()
            .is_trivial());
    }

    #[test]
    fn non_galois_target_rejected() {
        let f = NumberField::parse("x^2-3").unwrap();
        let l = NumberField::parse("x^8-3").unwrap();
        let c = make_class(
            &f,
            &[
                (Place::finite(11, 0), q("1/2")),
                (Place::finite(11, 1), q("1/2")),
            ],
        )
        .unwrap();
        assert!(matches!(
            restrict_relative(&c, &l, 200),
            Err(Error::NonUniformSplitting(_))
        ));
    }
}
