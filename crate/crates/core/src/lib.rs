//! Brauer classes of number fields through their local invariants, quaternion
//! base change, and the census of totally geodesic surface classes of
//! quaternionic Shimura varieties, all in exact arithmetic.
//!
//! The modules build on each other bottom-up:
//!
//! * [`fppoly`]: polynomials over F_p and Z, factorization, discriminants, Sturm chains
//! * [`numfield`]: number fields by defining polynomial, splitting types, places
//! * [`brauer`]: local-invariant vectors, restriction and transport
//! * [`quat`]: quaternion algebras as ramification sets, base change, matching
//! * [`geo`]: commensurability classes and surface-class comparison

pub mod brauer;
pub mod error;
pub mod fppoly;
pub mod geo;
pub mod numfield;
pub mod quat;

pub use error::{Error, Result};

/// Version string echoed into reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
