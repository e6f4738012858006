//! Power-commutator presentations, element arithmetic and subgroup invariants.

mod group;
mod presentation;
mod profile;
mod subgroup;

pub use group::{Elem, GroupElement, PcGroup, DEFAULT_ORDER_GUARD};
pub use presentation::PcPresentation;
pub(crate) use presentation::{check_odd_prime, is_prime};
pub use profile::StructuralProfile;
pub use subgroup::{validate_partition, Partition, Subgroup};
