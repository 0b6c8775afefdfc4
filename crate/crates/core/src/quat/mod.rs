//! Quaternion algebras as ramification sets.

mod algebra;
mod distinguish;
mod matching;

pub use algebra::{base_change, quat_make, tensor_matches, AlgebraJson, QuaternionAlgebra};
pub use distinguish::{distinguisher_search, Distinguisher, Transcript};
pub use matching::{
    algebra_from_places, classify, compare_families, enumerate_matching, same_subalgebra_report,
    Classification, EnumerationReport, MatchReport, MatchingFamily, PrimeClass, RationalPlace,
    Verdict, MAX_LISTED, MAX_RAM_PLACES,
};
