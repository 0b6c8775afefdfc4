use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::qmodz::QmodZ;
use crate::error::{Error, Result};
use crate::numfield::{NumberField, Place};

/// A Brauer class of a number field, stored as its nonzero local invariants.
#[derive(Debug, Clone)]
pub struct BrauerClass {
    field: NumberField,
    support: BTreeMap<Place, QmodZ>,
}

impl BrauerClass {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn support(&self) -> &BTreeMap<Place, QmodZ> {
        &self.support
    }

    /// Local invariant at `place` (zero off the support).
    pub fn invariant(&self, place: &Place) -> QmodZ {
        self.support.get(place).cloned().unwrap_or_default()
    }

    pub fn is_trivial(&self) -> bool {
        self.support.is_empty()
    }

    pub fn trivial(field: &NumberField) -> Self {
        BrauerClass {
            field: field.clone(),
            support: BTreeMap::new(),
        }
    }

    /// Rational primes below finite support places, ascending.
    pub fn support_primes(&self) -> Vec<u64> {
        let set: BTreeSet<u64> = self.support.keys().filter_map(Place::prime).collect();
        set.into_iter().collect()
    }

    /// Place-wise sum of two classes over the same field.
    pub fn add(&self, other: &BrauerClass) -> Result<BrauerClass> {
        if !self.field.same_poly(&other.field) {
            return Err(Error::FieldMismatch);
        }
        let mut support = self.support.clone();
        for (place, v) in &other.support {
            let sum = support.get(place).cloned().unwrap_or_default().add(v);
            if sum.is_zero() {
                support.remove(place);
            } else {
                support.insert(*place, sum);
            }
        }
        Ok(BrauerClass {
            field: self.field.clone(),
            support,
        })
    }

    pub fn to_json(&self) -> ClassJson {
        ClassJson {
            field: self.field.hash().to_string(),
            support: self
                .support
                .iter()
                .map(|(place, inv)| SupportEntry {
                    place: *place,
                    inv: inv.clone(),
                })
                .collect(),
        }
    }

    /// Decodes a class over `field`; the JSON must name the same field hash.
    pub fn from_json(json: &ClassJson, field: &NumberField) -> Result<BrauerClass> {
        if json.field != field.hash() {
            return Err(Error::FieldMismatch);
        }
        let assignments: Vec<(Place, QmodZ)> = json
            .support
            .iter()
            .map(|e| (e.place, e.inv.clone()))
            .collect();
        make_class(field, &assignments)
    }
}

impl fmt::Display for BrauerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .support
            .iter()
            .map(|(p, v)| format!("{p}: {v}"))
            .collect();
        write!(f, "{{{}}} over {}", parts.join(", "), self.field)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportEntry {
    pub place: Place,
    pub inv: QmodZ,
}

/// Wire form: `{"field": <polyhash>, "support": [{"place": {...}, "inv": "1/3"}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub field: String,
    pub support: Vec<SupportEntry>,
}

/// Validates local invariants and builds the class.
pub fn make_class(field: &NumberField, assignments: &[(Place, QmodZ)]) -> Result<BrauerClass> {
    let mut seen = HashSet::new();
    let mut support = BTreeMap::new();
    let mut total = QmodZ::zero();
    for (place, value) in assignments {
        if !seen.insert(*place) {
            return Err(Error::DuplicatePlace(place.to_string()));
        }
        field.validate_place(place)?;
        match place {
            Place::Complex { .. } if !value.is_zero() => {
                return Err(Error::BadArchimedean(format!(
                    "complex place {place} has invariant {value}"
                )))
            }
            Place::Real { .. } if !(value.is_zero() || value.is_half()) => {
                return Err(Error::BadArchimedean(format!(
                    "real place {place} has invariant {value}"
                )))
            }
            _ => {}
        }
        if value.is_zero() {
            continue;
        }
        total = total.add(value);
        support.insert(*place, value.clone());
    }
    if !total.is_zero() {
        return Err(Error::ReciprocityViolation(total.to_string()));
    }
    Ok(BrauerClass {
        field: field.clone(),
        support,
    })
}

/// Index of the class: lcm of the invariant denominators.
pub fn class_index(class: &BrauerClass) -> BigInt {
    class
        .support
        .values()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Multisets of invariants per (p, (e, f)) block, plus the real block.
fn block_profile(class: &BrauerClass) -> Result<BTreeMap<(u64, usize, usize), Vec<QmodZ>>> {
    let field = class.field();
    let mut blocks: BTreeMap<(u64, usize, usize), Vec<QmodZ>> = BTreeMap::new();
    for p in class.support_primes() {
        for (place, lf) in field.places_over(p)? {
            blocks
                .entry((p, lf.e, lf.f))
                .or_default()
                .push(class.invariant(&place));
        }
    }
    // rational prime 0 stands for the real places
    let reals: Vec<QmodZ> = field
        .real_places()
        .iter()
        .map(|pl| class.invariant(pl))
        .collect();
    if !reals.is_empty() {
        blocks.insert((0, 1, 1), reals);
    }
    for values in blocks.values_mut() {
        values.sort();
    }
    blocks.retain(|_, values| values.iter().any(|v| !v.is_zero()));
    Ok(blocks)
}

/// Strict place-wise equality, or equality of per-block invariant multisets.
pub fn classes_equal(a: &BrauerClass, b: &BrauerClass, up_to_block_matching: bool) -> Result<bool> {
    if !a.field.same_poly(&b.field) {
        return Err(Error::FieldMismatch);
    }
    if !up_to_block_matching {
        return Ok(a.support == b.support);
    }
    Ok(block_profile(a)? == block_profile(b)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QmodZ {
        s.parse().unwrap()
    }

    #[test]
    fn hamilton_and_index_three() {
        let qf = NumberField::rationals();
        let h = make_class(
            &qf,
            &[(Place::finite(2, 0), q("1/2")), (Place::real(0), q("1/2"))],
        )
        .unwrap();
        assert_eq!(class_index(&h), BigInt::from(2));
        let c3 = make_class(
            &qf,
            &[
                (Place::finite(7, 0), q("1/3")),
                (Place::finite(13, 0), q("2/3")),
            ],
        )
        .unwrap();
        assert_eq!(class_index(&c3), BigInt::from(3));
        assert_eq!(class_index(&BrauerClass::trivial(&qf)), BigInt::from(1));
    }

    #[test]
    fn validation_errors() {
        let qf = NumberField::rationals();
        assert!(matches!(
            make_class(&qf, &[(Place::finite(5, 0), q("1/2"))]),
            Err(Error::ReciprocityViolation(_))
        ));
        assert!(matches!(
            make_class(
                &qf,
                &[(Place::real(0), q("1/3")), (Place::finite(3, 0), q("2/3"))]
            ),
            Err(Error::BadArchimedean(_))
        ));
        assert!(matches!(
            make_class(
                &qf,
                &[
                    (Place::finite(5, 0), q("1/2")),
                    (Place::finite(5, 0), q("1/2"))
                ]
            ),
            Err(Error::DuplicatePlace(_))
        ));
        assert!(matches!(
            make_class(
                &qf,
                &[(Place::finite(5, 1), q("1/2")), (Place::real(0), q("1/2"))]
            ),
            Err(Error::BadPlace(_))
        ));
        let gi = NumberField::parse("x^2+1").unwrap();
        assert!(matches!(
            make_class(
                &gi,
                &[
                    (Place::Complex { idx: 0 }, q("1/2")),
                    (Place::finite(2, 0), q("1/2"))
                ]
            ),
            Err(Error::BadArchimedean(_))
        ));
        // zero entries are dropped, complex included
        let t = make_class(&gi, &[(Place::Complex { idx: 0 }, q("0"))]).unwrap();
        assert!(t.is_trivial());
    }

    #[test]
    fn equality_modes() {
        let qf = NumberField::rationals();
        let h = make_class(
            &qf,
            &[(Place::finite(2, 0), q("1/2")), (Place::real(0), q("1/2"))],
        )
        .unwrap();
        let h3 = make_class(
            &qf,
            &[(Place::finite(3, 0), q("1/2")), (Place::real(0), q("1/2"))],
        )
        .unwrap();
        assert!(classes_equal(&h, &h, false).unwrap());
        assert!(!classes_equal(&h, &h3, false).unwrap());
        assert!(!classes_equal(&h, &h3, true).unwrap());

        // 5 splits in Q(i): swapping the two places above 5
        let gi = NumberField::parse("x^2+1").unwrap();
        let a = make_class(
            &gi,
            &[
                (Place::finite(5, 0), q("1/3")),
                (Place::finite(5, 1), q("2/3")),
            ],
        )
        .unwrap();
        let b = make_class(
            &gi,
            &[
                (Place::finite(5, 1), q("1/3")),
                (Place::finite(5, 0), q("2/3")),
            ],
        )
        .unwrap();
        assert!(!classes_equal(&a, &b, false).unwrap());
        assert!(classes_equal(&a, &b, true).unwrap());
        assert_eq!(classes_equal(&a, &h, true), Err(Error::FieldMismatch));
    }

    #[test]
    fn json_roundtrip() {
        let qf = NumberField::rationals();
        let c3 = make_class(
            &qf,
            &[
                (Place::finite(7, 0), q("1/3")),
                (Place::finite(13, 0), q("2/3")),
            ],
        )
        .unwrap();
        let text = serde_json::to_string(&c3.to_json()).unwrap();
        assert!(
            text.contains(r#"{"place":{"kind":"finite","p":7,"idx":0},"inv":"1/3"}"#),
            "{text}"
        );
        let back: ClassJson = serde_json::from_str(&text).unwrap();
        let decoded = BrauerClass::from_json(&back, &qf).unwrap();
        assert!(classes_equal(&decoded, &c3, false).unwrap());
    }
}
