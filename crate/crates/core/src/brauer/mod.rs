//! Brauer classes of number fields as finitely supported local-invariant
//! vectors in Q/Z.

mod class;
mod qmodz;
mod restrict;
mod transport;

pub use class::{class_index, classes_equal, make_class, BrauerClass, ClassJson, SupportEntry};
pub use qmodz::QmodZ;
pub use restrict::{restrict_from_q, restrict_relative};
pub use transport::{transport_match, transport_phi, TransportBlock, TransportMatch};
