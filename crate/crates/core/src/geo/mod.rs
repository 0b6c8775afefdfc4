//! Commensurability classes of quaternionic Shimura varieties and their
//! totally geodesic surface classes.
//!
//! A class is a pair (field, algebra); a surface class is an indefinite
//! algebra `B` over Q with `B ⊗ K ≅ A`.

mod preset;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numfield::{splitting_equivalence, NumberField, Place};
use crate::quat::{
    algebra_from_places, classify, compare_families, tensor_matches, AlgebraJson,
    EnumerationReport, QuaternionAlgebra, RationalPlace,
};

pub use preset::{audit_pair, paper_k1k2, FieldAudit, PairAudit, Preset};

/// Bound used by [`commensurable`] for its splitting sweep.
pub const COMMENSURABILITY_SWEEP_BOUND: u64 = 1000;

/// Shape `(s, r₂)` of the symmetric space `H²ˢ × H³^{r₂}`.
pub fn symmetric_space_shape(k: &NumberField, a: &QuaternionAlgebra) -> Result<(usize, usize)> {
    if !a.field().same_poly(k) {
        return Err(Error::FieldMismatch);
    }
    let (r1, r2) = k.signature();
    let s = r1 - a.ramified_real_places();
    if s == 0 && r2 == 0 {
        return Err(Error::TotallyDefinite);
    }
    Ok((s, r2))
}

/// A commensurability class, represented by its invariant trace field and
/// invariant quaternion algebra.
#[derive(Debug, Clone)]
pub struct CommClass {
    algebra: QuaternionAlgebra,
    shape: (usize, usize),
}

impl CommClass {
    pub fn new(algebra: QuaternionAlgebra) -> Result<Self> {
        let shape = symmetric_space_shape(algebra.field(), &algebra)?;
        Ok(CommClass { algebra, shape })
    }

    /// `M₂(K)`.
    pub fn split(field: &NumberField) -> Result<Self> {
        Self::new(crate::quat::quat_make(field, &[])?)
    }

    pub fn field(&self) -> &NumberField {
        self.algebra.field()
    }

    pub fn algebra(&self) -> &QuaternionAlgebra {
        &self.algebra
    }

    pub fn shape(&self) -> (usize, usize) {
        self.shape
    }
}

/// Commensurability class of an arithmetic Fuchsian subgroup.
#[derive(Debug, Clone)]
pub struct SurfaceClass {
    pub algebra: QuaternionAlgebra,
    pub cocompact: bool,
}

impl SurfaceClass {
    fn new(algebra: QuaternionAlgebra) -> Self {
        let cocompact = !algebra.is_split();
        SurfaceClass { algebra, cocompact }
    }

    pub fn to_json(&self) -> SurfaceJson {
        SurfaceJson {
            algebra: self.algebra.to_json(),
            label: self.algebra.to_string(),
            cocompact: self.cocompact,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceJson {
    pub algebra: AlgebraJson,
    pub label: String,
    pub cocompact: bool,
}

fn require_flags(m: &CommClass) -> Result<Vec<&'static str>> {
    let flags = m.field().flags();
    let mut missing = Vec::new();
    if !flags.claimed_only_totally_real_subfield_is_q {
        missing.push("claimed_only_totally_real_subfield_is_q");
    }
    if !flags.claimed_narrow_class_number_one {
        missing.push("claimed_narrow_class_number_one");
    }
    if !missing.is_empty() {
        return Err(Error::MissingTrustedFlags(format!(
            "{}: {}",
            m.field().poly(),
            missing.join(", ")
        )));
    }
    Ok(vec![
        "claimed_only_totally_real_subfield_is_q",
        "claimed_narrow_class_number_one",
    ])
}

/// Surface classes in `m` with ramification among the primes up to `bound`.
pub fn surface_classes(
    m: &CommClass,
    bound: u64,
) -> Result<(Vec<SurfaceClass>, EnumerationReport)> {
    require_flags(m)?;
    let (algebras, report) = crate::quat::enumerate_matching(m.algebra(), bound, true);
    Ok((
        algebras.into_iter().map(SurfaceClass::new).collect(),
        report,
    ))
}

#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum SurfaceVerdict {
    Agree {
        bound: u64,
    },
    /// `in_first` tells which side contains the witness.
    Witness {
        class: SurfaceClass,
        in_first: bool,
    },
}

#[derive(Debug, Clone)]
pub struct SurfaceComparison {
    pub verdict: SurfaceVerdict,
    pub bound: u64,
    pub primes_tested: usize,
    pub excluded_primes: Vec<u64>,
    pub trusted_flags_used: Vec<&'static str>,
}

/// Report JSON of a comparison.
#[derive(Debug, Clone, Serialize)]
pub struct VerdictJson {
    pub verdict: &'static str,
    pub bound: u64,
    pub witness: Option<WitnessJson>,
    pub excluded_primes: Vec<u64>,
    pub trusted_flags_used: Vec<&'static str>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessJson {
    #[serde(flatten)]
    pub surface: SurfaceJson,
    pub present_in: &'static str,
}

impl SurfaceComparison {
    pub fn agrees(&self) -> bool {
        matches!(self.verdict, SurfaceVerdict::Agree { .. })
    }

    pub fn to_json(&self) -> VerdictJson {
        let witness = match &self.verdict {
            SurfaceVerdict::Agree { .. } => None,
            SurfaceVerdict::Witness { class, in_first } => Some(WitnessJson {
                surface: class.to_json(),
                present_in: if *in_first { "first" } else { "second" },
            }),
        };
        VerdictJson {
            verdict: if witness.is_some() {
                "witness"
            } else {
                "agree"
            },
            bound: self.bound,
            witness,
            excluded_primes: self.excluded_primes.clone(),
            trusted_flags_used: self.trusted_flags_used.clone(),
        }
    }
}

/// Compares the surface classes of `m1` and `m2` over the primes up to
/// `bound` that are good for both fields.
pub fn compare_surface_sets(
    m1: &CommClass,
    m2: &CommClass,
    bound: u64,
) -> Result<SurfaceComparison> {
    let flags = require_flags(m1)?;
    require_flags(m2)?;
    let c1 = classify(m1.algebra(), bound, true);
    let c2 = classify(m2.algebra(), bound, true);
    let (witness, universe, excluded) = compare_families(&c1, &c2);
    let primes_tested = universe
        .iter()
        .filter(|x| matches!(x, RationalPlace::Prime(_)))
        .count();
    let verdict = match witness {
        None => SurfaceVerdict::Agree { bound },
        Some(ram) => {
            let b = algebra_from_places(&NumberField::rationals(), &ram);
            let in1 = tensor_matches(&b, m1.algebra())?;
            let in2 = tensor_matches(&b, m2.algebra())?;
            assert!(in1 != in2, "witness {b} failed re-verification");
            SurfaceVerdict::Witness {
                class: SurfaceClass::new(b),
                in_first: in1,
            }
        }
    };
    Ok(SurfaceComparison {
        verdict,
        bound,
        primes_tested,
        excluded_primes: excluded,
        trusted_flags_used: flags,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tristate {
    True,
    False,
    Unknown,
}

#[derive(Debug, Clone, Serialize)]
pub struct Commensurability {
    pub verdict: Tristate,
    pub reason: String,
}

/// Multiset of `(e, f)` of ramified finite places per rational prime, plus
/// the number of ramified real places. `None` if some prime cannot be read.
type RamProfile = (BTreeMap<u64, Vec<(usize, usize)>>, usize);

fn ramification_profile(a: &QuaternionAlgebra) -> Option<RamProfile> {
    let mut out: BTreeMap<u64, Vec<(usize, usize)>> = BTreeMap::new();
    for place in a.ram() {
        if let Place::Finite { p, idx } = place {
            let lf = a.field().places_over(*p).ok()?[*idx].1;
            out.entry(*p).or_default().push((lf.e, lf.f));
        }
    }
    out.values_mut().for_each(|v| v.sort());
    Some((out, a.ramified_real_places()))
}

/// Three-valued commensurability: identical data gives `true`, a proven
/// invariant mismatch gives `false`, anything else is `unknown`.
pub fn commensurable(m1: &CommClass, m2: &CommClass) -> Commensurability {
    let answer = |verdict, reason: String| Commensurability { verdict, reason };
    let (k1, k2) = (m1.field(), m2.field());
    if k1.degree() != k2.degree() || k1.signature() != k2.signature() {
        return answer(
            Tristate::False,
            "fields differ in degree or signature".into(),
        );
    }
    if k1.same_poly(k2) {
        if m1.algebra().ram() == m2.algebra().ram() {
            return answer(
                Tristate::True,
                "identical reduced polynomial and ramification set".into(),
            );
        }
        return match (
            ramification_profile(m1.algebra()),
            ramification_profile(m2.algebra()),
        ) {
            (Some(a), Some(b)) if a != b => answer(
                Tristate::False,
                "ramification differs in local degrees or count".into(),
            ),
            _ => answer(
                Tristate::Unknown,
                "ramification sets differ but may be exchanged by a field automorphism".into(),
            ),
        };
    }
    let eq = splitting_equivalence(k1, k2, COMMENSURABILITY_SWEEP_BOUND);
    if !eq.splitting_types_agree {
        let p = eq.type_mismatches[0].p;
        return answer(Tristate::False, format!("splitting types differ at {p}"));
    }
    match (ramification_profile(m1.algebra()), ramification_profile(m2.algebra())) {
        (Some(a), Some(b)) if a != b => {
            answer(Tristate::False, "ramification differs in local degrees or count".into())
        }
        _ => answer(
            Tristate::Unknown,
            format!(
                "defining polynomials differ; splitting data agree up to {COMMENSURABILITY_SWEEP_BOUND}"
            ),
        ),
    }
}
