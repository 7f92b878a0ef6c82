//! Character tables over `GF(p)` and the Clifford-theoretic quantities built
//! on them: restriction multiplicities, conjugation orbits of irreducibles,
//! equalizer witnesses and coproduct extensions.
//!
//! Values live in `GF(p)` for a prime `p = 1 (mod exponent)` with `p > 2|G|`;
//! every quantity that matters (degrees, inner products) is an integer below
//! `p/2` and is lifted exactly.

mod clifford;
pub mod modp;
mod table;

pub use clifford::{
    clifford_class, clifford_multiplicity, coproduct_extension, equalizer_witness, fin_check,
    restriction_multiplicity, CliffordFamily, CliffordReport, EqualizerWitness, ExtensionWitness,
    RestrictionTable,
};
pub use modp::suitable_prime;
pub use table::{character_table, shared_prime, CharacterTable, TableData, MAX_TABLE_CLASSES};
