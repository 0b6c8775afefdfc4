//! Exact polynomial arithmetic over prime fields and the integers.

mod factor;
mod intpoly;
mod modp;
mod resultant;
mod sturm;

pub use factor::{
    distinct_degree, equal_degree, expand, factor_mod_p, factor_mod_p_with_rng, factor_poly,
    is_irreducible, squarefree_decomposition, Factor, DEFAULT_FACTOR_SEED,
};
pub use intpoly::IntPoly;
pub use modp::{is_prime, primes_between, primes_up_to, PolyModP, PrimeModulus};
pub use resultant::{determinant, discriminant, resultant, sylvester_matrix};
pub use sturm::{count_real_roots, count_roots_in, is_squarefree, sturm_chain};
