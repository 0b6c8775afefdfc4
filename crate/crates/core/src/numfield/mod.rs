//! Number fields by defining polynomial: signatures, prime splitting,
//! places, and bounded-prime evidence sweeps.

mod cache;
mod dedekind;
mod evidence;
mod field;
mod irreducible;
mod place;

pub use cache::{format_record, parse_record, CacheEntry, CacheStats, SplitCache};
pub use dedekind::{decompose, dedekind, DedekindOutcome};
pub use evidence::{
    catalog, euler_phi, galois_fingerprint, split_set_contained, splitting_equivalence, sweep,
    uniformity_evidence, CatalogField, ContainmentReport, EquivalenceReport, GaloisFingerprint,
    TypeMismatch, UniformityReport, DEFAULT_PRIME_BOUND,
};
pub use field::{poly_hash, BuildOptions, GeneratorReduction, NumberField, TrustedFlags};
pub use irreducible::{
    certify_irreducible, generator_reduction, IrreducibilityEvidence, Reduction,
};
pub use place::{LocalFactor, Place, PrimeDecomposition, SplitPredicates, SplittingType};
