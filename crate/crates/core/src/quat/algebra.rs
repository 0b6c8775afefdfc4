use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::brauer::{make_class, BrauerClass, QmodZ};
use crate::error::{Error, Result};
use crate::numfield::{NumberField, Place};

/// A quaternion algebra, determined by its (even, non-complex) ramification set.
#[derive(Debug, Clone)]
pub struct QuaternionAlgebra {
    field: NumberField,
    ram: BTreeSet<Place>,
}

impl QuaternionAlgebra {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn ram(&self) -> &BTreeSet<Place> {
        &self.ram
    }

    pub fn finite_ram_primes(&self) -> BTreeSet<u64> {
        self.ram.iter().filter_map(Place::prime).collect()
    }

    pub fn ramified_real_places(&self) -> usize {
        self.ram.iter().filter(|p| p.is_real()).count()
    }

    pub fn is_split(&self) -> bool {
        self.ram.is_empty()
    }

    /// Over Q: `∞` ramifies.
    pub fn is_definite_over_q(&self) -> bool {
        self.field.is_rational() && self.ramified_real_places() == 1
    }

    /// The class with invariant 1/2 at every ramified place.
    pub fn to_brauer(&self) -> BrauerClass {
        let assignments: Vec<(Place, QmodZ)> =
            self.ram.iter().map(|pl| (*pl, QmodZ::half())).collect();
        make_class(&self.field, &assignments).expect("validated ramification set")
    }

    /// Algebra over Q ramified at `primes` and, if `inf`, at infinity.
    pub fn rational(primes: &[u64], inf: bool) -> Result<Self> {
        let q = NumberField::rationals();
        Self::rational_over(&q, primes, inf)
    }

    /// As [`QuaternionAlgebra::rational`] but reusing a field object for Q.
    pub fn rational_over(q: &NumberField, primes: &[u64], inf: bool) -> Result<Self> {
        if !q.is_rational() {
            return Err(Error::BaseNotRational);
        }
        let mut places: Vec<Place> = primes.iter().map(|&p| Place::finite(p, 0)).collect();
        if inf {
            places.push(Place::real(0));
        }
        quat_make(q, &places)
    }

    pub fn same_algebra(&self, other: &QuaternionAlgebra) -> bool {
        self.field.same_poly(&other.field) && self.ram == other.ram
    }

    pub fn to_json(&self) -> AlgebraJson {
        if self.field.is_rational() {
            AlgebraJson::Rational {
                field: self.field.hash().to_string(),
                ram: self.finite_ram_primes().into_iter().collect(),
                inf: self.ramified_real_places() > 0,
            }
        } else {
            AlgebraJson::General {
                field: self.field.hash().to_string(),
                ram: self.ram.iter().copied().collect(),
            }
        }
    }

    pub fn from_json(json: &AlgebraJson, field: &NumberField) -> Result<Self> {
        let (hash, places) = match json {
            AlgebraJson::Rational { field: h, ram, inf } => {
                let mut places: Vec<Place> = ram.iter().map(|&p| Place::finite(p, 0)).collect();
                if *inf {
                    places.push(Place::real(0));
                }
                (h, places)
            }
            AlgebraJson::General { field: h, ram } => (h, ram.clone()),
        };
        if hash != field.hash() {
            return Err(Error::FieldMismatch);
        }
        quat_make(field, &places)
    }
}

impl fmt::Display for QuaternionAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.is_rational() {
            let mut parts: Vec<String> = self
                .finite_ram_primes()
                .iter()
                .map(u64::to_string)
                .collect();
            if self.ramified_real_places() > 0 {
                parts.push("inf".into());
            }
            return write!(f, "B{{{}}}", parts.join(","));
        }
        let parts: Vec<String> = self.ram.iter().map(Place::to_string).collect();
        write!(f, "A{{{}}} over {}", parts.join(","), self.field)
    }
}

/// Wire form. Algebras over Q abbreviate the ramification set as sorted
/// primes plus an `inf` flag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraJson {
    Rational {
        field: String,
        ram: Vec<u64>,
        inf: bool,
    },
    General {
        field: String,
        ram: Vec<Place>,
    },
}

/// Validates a ramification set.
pub fn quat_make(field: &NumberField, places: &[Place]) -> Result<QuaternionAlgebra> {
    let mut ram = BTreeSet::new();
    for place in places {
        field.validate_place(place)?;
        if place.is_complex() {
            return Err(Error::ComplexRamification(place.to_string()));
        }
        if !ram.insert(*place) {
            return Err(Error::DuplicatePlace(place.to_string()));
        }
    }
    if ram.len() % 2 == 1 {
        return Err(Error::OddRamification(ram.len()));
    }
    Ok(QuaternionAlgebra {
        field: field.clone(),
        ram,
    })
}

/// Base change of an algebra over Q: a place above `p` ramifies exactly when
/// `p` ramifies in `b` and the local degree `e f` is odd; real places ramify
/// when `∞` does.
pub fn base_change(b: &QuaternionAlgebra, target: &NumberField) -> Result<QuaternionAlgebra> {
    if !b.field().is_rational() {
        return Err(Error::BaseNotRational);
    }
    let mut ram = BTreeSet::new();
    for place in b.ram() {
        match place {
            Place::Finite { p, .. } => {
                for (above, lf) in target.places_over(*p)? {
                    if lf.degree() % 2 == 1 {
                        ram.insert(above);
                    }
                }
            }
            Place::Real { .. } => ram.extend(target.real_places()),
            Place::Complex { .. } => unreachable!(),
        }
    }
    assert!(
        ram.len() % 2 == 0,
        "base change produced odd ramification {ram:?}"
    );
    Ok(QuaternionAlgebra {
        field: target.clone(),
        ram,
    })
}

/// `b ⊗ K ≅ a`, by comparing ramification sets.
pub fn tensor_matches(b: &QuaternionAlgebra, a: &QuaternionAlgebra) -> Result<bool> {
    Ok(base_change(b, a.field())?.ram == a.ram)
}
