//! Moving a Brauer class between two splitting-equivalent fields.
//!
//! Places above each rational prime are paired by equal `(e, f)`; a class
//! moves only when its invariants are constant on every such group, since
//! any other matching would be a guess.

use std::collections::BTreeMap;

use serde::Serialize;

use super::class::{make_class, BrauerClass};
use super::qmodz::QmodZ;
use crate::error::{Error, Result};
use crate::numfield::{splitting_equivalence, NumberField, Place};

/// Pairing of places of two fields above one rational prime, grouped by
/// `(e, f)`. The pairing is a bijection inside each group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransportMatch {
    pub p: u64,
    pub blocks: Vec<TransportBlock>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransportBlock {
    pub e: usize,
    pub f: usize,
    pub source: Vec<Place>,
    pub target: Vec<Place>,
}

/// Canonical-order matching of the places of `a` and `b` above `p`.
pub fn transport_match(a: &NumberField, b: &NumberField, p: u64) -> Result<TransportMatch> {
    let pa = a.places_over(p)?;
    let pb = b.places_over(p)?;
    let mut groups: BTreeMap<(usize, usize), (Vec<Place>, Vec<Place>)> = BTreeMap::new();
    for (place, lf) in pa {
        groups.entry((lf.e, lf.f)).or_default().0.push(place);
    }
    for (place, lf) in pb {
        groups.entry((lf.e, lf.f)).or_default().1.push(place);
    }
    let mut blocks = Vec::new();
    for ((e, f), (source, target)) in groups {
        if source.len() != target.len() {
            return Err(Error::NotSplittingEquivalent(format!(
                "at {p}: {} vs {} places with (e,f)=({e},{f})",
                source.len(),
                target.len()
            )));
        }
        blocks.push(TransportBlock {
            e,
            f,
            source,
            target,
        });
    }
    Ok(TransportMatch { p, blocks })
}

/// Transport of `class` (over K1) to `target` (K2).
pub fn transport_phi(class: &BrauerClass, target: &NumberField, bound: u64) -> Result<BrauerClass> {
    let source = class.field();
    if source.degree() != target.degree() || source.signature() != target.signature() {
        return Err(Error::NotSplittingEquivalent(format!(
            "degree/signature differ: {:?} vs {:?}",
            (source.degree(), source.signature()),
            (target.degree(), target.signature())
        )));
    }
    let report = splitting_equivalence(source, target, bound);
    if !report.splitting_types_agree {
        let first = &report.type_mismatches[0];
        return Err(Error::NotSplittingEquivalent(format!(
            "splitting differs at {}: {} vs {}",
            first.p, first.first, first.second
        )));
    }

    let mut out: Vec<(Place, QmodZ)> = Vec::new();
    for p in class.support_primes() {
        let m = transport_match(source, target, p)?;
        for block in &m.blocks {
            let values: Vec<QmodZ> = block.source.iter().map(|pl| class.invariant(pl)).collect();
            if values.windows(2).any(|w| w[0] != w[1]) {
                let shown: Vec<String> = values.iter().map(|v| v.to_string()).collect();
                return Err(Error::AmbiguousTransport(format!(
                    "places above {p} with (e,f)=({},{}) carry invariants {shown:?}",
                    block.e, block.f
                )));
            }
            for pl in &block.target {
                out.push((*pl, values[0].clone()));
            }
        }
    }
    let reals: Vec<QmodZ> = source
        .real_places()
        .iter()
        .map(|pl| class.invariant(pl))
        .collect();
    if reals.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::AmbiguousTransport(
            "real places carry different invariants".into(),
        ));
    }
    if let Some(v) = reals.first() {
        out.extend(target.real_places().into_iter().map(|pl| (pl, v.clone())));
    }
    make_class(target, &out)
}
