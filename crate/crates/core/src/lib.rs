//! Character codegree sets of finite p-groups.
//!
//! A group is given by a power-commutator presentation ([`pc`]), optionally
//! taken from the built-in [`catalog`]. Its codegree set
//! `cod(G) = { |G : ker χ| / χ(1) : χ ∈ Irr(G) }` can be obtained two ways:
//!
//! * [`chartab`] builds the full character table with the Dixon-Schneider
//!   method over a prime field and reads the codegrees off it;
//! * [`formulas`] evaluates the closed forms for abelian, VZ, extraspecial and
//!   Camina groups from structural data alone.
//!
//! [`verify`] runs both against the published expected values.

pub mod catalog;
pub mod chartab;
pub mod error;
pub mod formulas;
pub mod pc;
pub mod verify;

pub use error::{Error, Result};
