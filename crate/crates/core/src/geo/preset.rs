//! Built-in field pairs and their audit.

use serde::Serialize;

use crate::error::Result;
use crate::fppoly::IntPoly;
use crate::numfield::{
    galois_fingerprint, splitting_equivalence, uniformity_evidence, BuildOptions, CatalogField,
    NumberField, TrustedFlags,
};

const CATALOG_D_MAX: i64 = 50;
const CATALOG_M_MAX: u64 = 32;

/// A named pair of fields with the facts claimed about them.
#[derive(Debug, Clone, Serialize)]
pub struct Preset {
    pub name: &'static str,
    pub polys: [&'static str; 2],
    pub claimed_signature: (usize, usize),
    pub claimed_non_isomorphic: bool,
    pub claimed_only_common_subfield_is_q: bool,
    pub flags: TrustedFlags,
}

impl Preset {
    pub fn fields(&self) -> Result<[NumberField; 2]> {
        let build =
            |s: &str| NumberField::build(&IntPoly::parse(s)?, BuildOptions::with_flags(self.flags));
        Ok([build(self.polys[0])?, build(self.polys[1])?])
    }
}

/// `x^8+6561` and `x^8+16*6561`, with the flags the paper asserts.
pub fn paper_k1k2() -> Preset {
    Preset {
        name: "paper-k1k2",
        polys: ["x^8+6561", "x^8+104976"],
        claimed_signature: (0, 4),
        claimed_non_isomorphic: true,
        claimed_only_common_subfield_is_q: true,
        flags: TrustedFlags {
            claimed_narrow_class_number_one: true,
            claimed_primitive: false,
            claimed_only_totally_real_subfield_is_q: true,
        },
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FieldAudit {
    pub input: String,
    pub reduced: String,
    pub reduction_scale: Option<String>,
    pub hash: String,
    pub degree: usize,
    pub signature: (usize, usize),
    pub irreducibility: String,
    pub uniform_splitting: bool,
    pub non_uniform_primes: Vec<u64>,
    pub rou_order: u64,
    pub catalog_subfields: Vec<String>,
    #[serde(skip)]
    catalog: Vec<CatalogField>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairAudit {
    pub preset: String,
    pub bound: u64,
    pub fields: [FieldAudit; 2],
    pub splitting_types_agree: bool,
    pub inertia_gcds_agree: bool,
    pub excluded_primes: Vec<u64>,
    pub discrepancies: Vec<String>,
}

fn audit_field(input: &str, k: &NumberField, bound: u64) -> Result<FieldAudit> {
    let ev = uniformity_evidence(k, bound, &[]);
    let fp = galois_fingerprint(k, bound, CATALOG_D_MAX, CATALOG_M_MAX)?;
    Ok(FieldAudit {
        input: input.to_string(),
        reduced: k.poly().to_string(),
        reduction_scale: k.reduction().map(|r| r.scale.clone()),
        hash: k.hash().to_string(),
        degree: k.degree(),
        signature: k.signature(),
        irreducibility: k.irreducibility().describe(),
        uniform_splitting: ev.uniform,
        non_uniform_primes: ev.non_uniform_primes,
        rou_order: fp.rou_order,
        catalog_subfields: fp.contained_catalog_fields,
        catalog: fp.catalog,
    })
}

/// Audits a preset: degree, signature, generator reduction, Galois and
/// subfield evidence and splitting equivalence up to `bound` (at least
/// 1000), listing every conflict with the preset's claims.
pub fn audit_pair(preset: &Preset, bound: u64) -> Result<PairAudit> {
    let [k1, k2] = preset.fields()?;
    let a1 = audit_field(preset.polys[0], &k1, bound)?;
    let a2 = audit_field(preset.polys[1], &k2, bound)?;
    let eq = splitting_equivalence(&k1, &k2, bound);
    let mut notes = Vec::new();

    for (name, a) in [("K1", &a1), ("K2", &a2)] {
        if let Some(c) = &a.reduction_scale {
            notes.push(format!(
                "{name}: {} reduces to {} via x -> {c}x, so the field is Q[x]/({})",
                a.input, a.reduced, a.reduced
            ));
        }
        if a.signature != preset.claimed_signature {
            notes.push(format!(
                "{name}: signature {:?} differs from the claimed {:?}",
                a.signature, preset.claimed_signature
            ));
        }
        if a.uniform_splitting {
            notes.push(format!(
                "{name}: splitting is uniform at every good prime up to {bound}, evidence that the field is Galois over Q"
            ));
        }
        for c in &a.catalog {
            if c.degree() == a.degree as u64 {
                notes.push(format!(
                    "{name}: split primes up to {bound} match {}, evidence that {name} = {}",
                    c.label(),
                    c.label()
                ));
            }
            if preset.flags.claimed_only_totally_real_subfield_is_q {
                if let CatalogField::Quadratic { d } = c {
                    if *d > 0 {
                        notes.push(format!(
                            "{name}: evidence of the real subfield {}, against claimed_only_totally_real_subfield_is_q",
                            c.label()
                        ));
                    }
                }
            }
        }
    }
    if preset.claimed_only_common_subfield_is_q {
        let common: Vec<&String> = a1
            .catalog_subfields
            .iter()
            .filter(|s| a2.catalog_subfields.contains(s))
            .collect();
        if !common.is_empty() {
            let shown: Vec<&str> = common.iter().map(|s| s.as_str()).collect();
            notes.push(format!(
                "common subfield evidence {shown:?}, against the claim that Q is the only one"
            ));
        }
    }
    if preset.claimed_non_isomorphic {
        if a1.reduced == a2.reduced {
            notes.push(
                "K1 and K2 have the same reduced defining polynomial, so they are isomorphic"
                    .into(),
            );
        } else if a1.uniform_splitting && a2.uniform_splitting && eq.splitting_types_agree {
            notes.push(format!(
                "both fields look Galois and their splitting types agree up to {bound}; Galois fields with the same split primes are isomorphic, against the claim K1 != K2"
            ));
        }
    }

    Ok(PairAudit {
        preset: preset.name.to_string(),
        bound,
        splitting_types_agree: eq.splitting_types_agree,
        inertia_gcds_agree: eq.inertia_gcds_agree,
        excluded_primes: eq.excluded_primes.clone(),
        fields: [a1, a2],
        discrepancies: notes,
    })
}
