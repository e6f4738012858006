//! Brute-force character tables by the Dixon-Schneider method.
//!
//! Conjugacy classes and class multiplication coefficients are computed by
//! enumeration. The central characters are the common eigenvectors of the
//! class matrices over a prime field `GF(ℓ)` with `ℓ ≡ 1 (mod exp G)`; degrees
//! and values follow from them, and each value is lifted to an exact
//! cyclotomic integer through the eigenvalue multiplicities of the element.
//!
//! Linear characters are read off the presentation as homomorphisms onto
//! `Z/e`, so the eigenvector split only runs on the complementary subspace
//! that carries the nonlinear characters.

mod class_matrix;
mod classes;
mod cyclotomic;
mod dft;
mod linear;
pub mod modp;
mod split;
mod table;

pub use class_matrix::{ClassMatrices, ClassMatrix};
pub use classes::{ClassInfo, ConjugacyClasses};
pub use cyclotomic::{CyclotomicSum, CyclotomicValue};
pub use modp::{dixon_prime, primitive_root};
pub use table::{
    character_table, character_table_with_classes, codegrees_bruteforce, CharacterRow,
    CharacterTable, TableMetadata, TABLE_SCHEMA_VERSION,
};
