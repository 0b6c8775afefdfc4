use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::cache::{CacheEntry, SplitCache};
use super::dedekind::decompose;
use super::irreducible::{certify_irreducible, generator_reduction, IrreducibilityEvidence};
use super::place::{LocalFactor, Place, PrimeDecomposition, SplitPredicates, SplittingType};
use crate::error::{Error, Result};
use crate::fppoly::{count_real_roots, discriminant, is_prime, IntPoly};

/// Facts about a field that are asserted by the caller, never computed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrustedFlags {
    #[serde(default)]
    pub claimed_narrow_class_number_one: bool,
    #[serde(default)]
    pub claimed_primitive: bool,
    #[serde(default)]
    pub claimed_only_totally_real_subfield_is_q: bool,
}

impl TrustedFlags {
    /// Names of the flags that are set.
    pub fn names(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.claimed_narrow_class_number_one {
            out.push("claimed_narrow_class_number_one");
        }
        if self.claimed_primitive {
            out.push("claimed_primitive");
        }
        if self.claimed_only_totally_real_subfield_is_q {
            out.push("claimed_only_totally_real_subfield_is_q");
        }
        out
    }

    /// All three flags set.
    pub fn all() -> Self {
        TrustedFlags {
            claimed_narrow_class_number_one: true,
            claimed_primitive: true,
            claimed_only_totally_real_subfield_is_q: true,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct BuildOptions {
    pub flags: TrustedFlags,
    /// Accept the polynomial as irreducible when the certificates run out.
    pub trust_irreducible: bool,
    /// Shared splitting cache; a private one is created when absent.
    pub cache: Option<Arc<SplitCache>>,
}

impl BuildOptions {
    pub fn with_flags(flags: TrustedFlags) -> Self {
        BuildOptions {
            flags,
            ..Default::default()
        }
    }
}

/// Record of `f(x) = c^n g(x / c)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorReduction {
    pub original: String,
    pub reduced: String,
    pub scale: String,
}

/// A number field given by a monic irreducible integer polynomial.
#[derive(Clone)]
pub struct NumberField {
    poly: IntPoly,
    disc: BigInt,
    signature: (usize, usize),
    flags: TrustedFlags,
    reduction: Option<GeneratorReduction>,
    evidence: IrreducibilityEvidence,
    hash: String,
    cache: Arc<SplitCache>,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NumberField")
            .field("poly", &self.poly.to_string())
            .field("signature", &self.signature)
            .field("hash", &self.hash)
            .finish()
    }
}

/// Stable identifier of a defining polynomial.
pub fn poly_hash(poly: &IntPoly) -> String {
    let digest = Sha256::digest(poly.to_list_string().as_bytes());
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

impl NumberField {
    /// Builds a field from a monic polynomial, applying generator reduction
    /// and certifying irreducibility.
    pub fn build(poly: &IntPoly, options: BuildOptions) -> Result<Self> {
        if !poly.is_monic() || poly.deg() == 0 {
            return Err(Error::NotMonic);
        }
        let (poly, reduction) = match generator_reduction(poly) {
            Some(r) => {
                let rec = GeneratorReduction {
                    original: poly.to_string(),
                    reduced: r.reduced.to_string(),
                    scale: r.scale.to_string(),
                };
                (r.reduced, Some(rec))
            }
            None => (poly.clone(), None),
        };
        let disc = discriminant(&poly)?;
        let evidence = match certify_irreducible(&poly, &disc) {
            Ok(ev) => ev,
            Err(Error::InconclusiveIrreducibility(_)) if options.trust_irreducible => {
                IrreducibilityEvidence::Trusted
            }
            Err(e) => return Err(e),
        };
        let r1 = count_real_roots(&poly)?;
        let n = poly.deg();
        let signature = (r1, (n - r1) / 2);
        Ok(NumberField {
            hash: poly_hash(&poly),
            poly,
            disc,
            signature,
            flags: options.flags,
            reduction,
            evidence,
            cache: options.cache.unwrap_or_default(),
        })
    }

    pub fn from_coeffs(coeffs: &[i64], options: BuildOptions) -> Result<Self> {
        Self::build(&IntPoly::from_i64(coeffs), options)
    }

    /// Parses `x^8+6561` or `[6561,0,...,1]` and builds with default options.
    pub fn parse(s: &str) -> Result<Self> {
        Self::build(&IntPoly::parse(s)?, BuildOptions::default())
    }

    /// The rationals, as the field of `x`.
    pub fn rationals() -> Self {
        Self::from_coeffs(&[0, 1], BuildOptions::default()).expect("x defines Q")
    }

    pub fn with_flags(mut self, flags: TrustedFlags) -> Self {
        self.flags = flags;
        self
    }

    pub fn with_cache(mut self, cache: Arc<SplitCache>) -> Self {
        self.cache = cache;
        self
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.deg()
    }

    pub fn poly_discriminant(&self) -> &BigInt {
        &self.disc
    }

    pub fn signature(&self) -> (usize, usize) {
        self.signature
    }

    pub fn real_place_count(&self) -> usize {
        self.signature.0
    }

    pub fn complex_place_count(&self) -> usize {
        self.signature.1
    }

    pub fn flags(&self) -> TrustedFlags {
        self.flags
    }

    pub fn reduction(&self) -> Option<&GeneratorReduction> {
        self.reduction.as_ref()
    }

    pub fn irreducibility(&self) -> &IrreducibilityEvidence {
        &self.evidence
    }

    pub fn hash(&self) -> &str {
        &self.hash
    }

    pub fn cache(&self) -> &Arc<SplitCache> {
        &self.cache
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    /// Same defining polynomial (after reduction).
    pub fn same_poly(&self, other: &NumberField) -> bool {
        self.hash == other.hash && self.poly == other.poly
    }

    /// True when `p` divides the polynomial discriminant.
    pub fn divides_disc(&self, p: u64) -> bool {
        (&self.disc % BigInt::from(p)).is_zero()
    }

    /// Decomposition of `p` in canonical factor order, cached.
    pub fn decomposition(&self, p: u64) -> Result<PrimeDecomposition> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if let Some(entry) = self.cache.get(&self.hash, p) {
            return match entry {
                CacheEntry::Decomposition(factors) => Ok(PrimeDecomposition { p, factors }),
                CacheEntry::IndexPrime => Err(Error::IndexPrime {
                    poly: self.poly.to_string(),
                    p,
                }),
            };
        }
        let result = decompose(&self.poly, p);
        if let Some(entry) = CacheEntry::from_result(&result) {
            self.cache.insert(&self.hash, p, entry);
        }
        result
    }

    pub fn splitting_type(&self, p: u64) -> Result<SplittingType> {
        Ok(self.decomposition(p)?.splitting_type())
    }

    pub fn inertia_gcd(&self, p: u64) -> Result<usize> {
        Ok(self.splitting_type(p)?.inertia_gcd())
    }

    pub fn split_predicates(&self, p: u64) -> Result<SplitPredicates> {
        Ok(self.splitting_type(p)?.predicates())
    }

    /// `p` is not an index prime.
    pub fn is_good(&self, p: u64) -> bool {
        self.decomposition(p).is_ok()
    }

    /// Finite places above `p` with their `(e, f)`.
    pub fn places_over(&self, p: u64) -> Result<Vec<(Place, LocalFactor)>> {
        Ok(self.decomposition(p)?.places().collect())
    }

    pub fn real_places(&self) -> Vec<Place> {
        (0..self.signature.0).map(Place::real).collect()
    }

    pub fn complex_places(&self) -> Vec<Place> {
        (0..self.signature.1)
            .map(|idx| Place::Complex { idx })
            .collect()
    }

    /// Checks that `place` names a place of this field.
    pub fn validate_place(&self, place: &Place) -> Result<()> {
        match *place {
            Place::Finite { p, idx } => {
                let dec = self.decomposition(p).map_err(|e| match e {
                    Error::IndexPrime { .. } => {
                        Error::BadPlace(format!("{place}: {p} is an index prime of {}", self.poly))
                    }
                    other => other,
                })?;
                if idx >= dec.len() {
                    return Err(Error::BadPlace(format!(
                        "{place}: only {} places above {p}",
                        dec.len()
                    )));
                }
            }
            Place::Real { idx } if idx >= self.signature.0 => {
                return Err(Error::BadPlace(format!(
                    "{place}: field has {} real places",
                    self.signature.0
                )))
            }
            Place::Complex { idx } if idx >= self.signature.1 => {
                return Err(Error::BadPlace(format!(
                    "{place}: field has {} complex places",
                    self.signature.1
                )))
            }
            _ => {}
        }
        Ok(())
    }

    /// Local degree over the completion of Q below the place.
    pub fn local_degree(&self, place: &Place) -> Result<usize> {
        self.validate_place(place)?;
        Ok(match *place {
            Place::Finite { p, idx } => self.decomposition(p)?.factors[idx].degree(),
            Place::Real { .. } => 1,
            Place::Complex { .. } => 2,
        })
    }
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[x]/({})", self.poly)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_field() {
        let k = NumberField::parse("x^2+1").unwrap();
        assert_eq!(k.degree(), 2);
        assert_eq!(k.signature(), (0, 1));
        assert_eq!(k.splitting_type(5).unwrap().pairs, vec![(1, 1), (1, 1)]);
        assert_eq!(k.splitting_type(2).unwrap().pairs, vec![(2, 1)]);
        assert_eq!(k.inertia_gcd(5).unwrap(), 1);
        assert_eq!(k.decomposition(9), Err(Error::NotPrime(9)));
    }

    #[test]
    fn paper_field_reduces_to_cyclotomic() {
        let k = NumberField::parse("x^8+6561").unwrap();
        assert_eq!(k.degree(), 8);
        assert_eq!(k.signature(), (0, 4));
        let red = k.reduction().unwrap();
        assert_eq!(red.reduced, "x^8+1");
        assert_eq!(red.scale, "3");
        assert_eq!(k.poly(), &IntPoly::parse("x^8+1").unwrap());
    }

    #[test]
    fn reducible_and_nonmonic_rejected() {
        assert!(matches!(
            NumberField::parse("x^4+4"),
            Err(Error::Reducible(_))
        ));
        assert_eq!(NumberField::parse("2*x^2+1").unwrap_err(), Error::NotMonic);
        assert_eq!(NumberField::parse("7").unwrap_err(), Error::NotMonic);
    }

    #[test]
    fn place_validation() {
        let k = NumberField::parse("x^2+1").unwrap();
        assert!(k.validate_place(&Place::finite(5, 1)).is_ok());
        assert!(k.validate_place(&Place::finite(5, 2)).is_err());
        assert!(k.validate_place(&Place::real(0)).is_err());
        assert!(k.validate_place(&Place::Complex { idx: 0 }).is_ok());
        let q = NumberField::rationals();
        assert_eq!(q.signature(), (1, 0));
        assert_eq!(q.places_over(7).unwrap().len(), 1);
        let k3 = NumberField::parse("x^2+3").unwrap();
        assert!(matches!(
            k3.validate_place(&Place::finite(2, 0)),
            Err(Error::BadPlace(_))
        ));
    }

    #[test]
    fn cache_is_transparent() {
        let k = NumberField::parse("x^8-3").unwrap();
        let first: Vec<_> = (2..200)
            .filter(|&p| is_prime(p))
            .map(|p| k.decomposition(p))
            .collect();
        let again: Vec<_> = (2..200)
            .filter(|&p| is_prime(p))
            .map(|p| k.decomposition(p))
            .collect();
        assert_eq!(first, again);
        assert!(k.cache().stats().hits > 0);
    }
}
