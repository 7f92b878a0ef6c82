use serde::{Deserialize, Serialize};

use super::{char_orbit, generated_group_dim, IntMatrix, MatrixGroupResult, OrbitResult};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum TorusVerdict {
    /// The union of the actions generates a finite group, listed here.
    Sound { order: u64, elements: Vec<IntMatrix> },
    /// The joint action group is infinite.
    Unsound { witness_count: u64 },
}

impl TorusVerdict {
    pub fn is_sound(&self) -> bool {
        matches!(self, TorusVerdict::Sound { .. })
    }
}

/// Decides a family of groups `T^k x| F_i` (each `F_i` a finite subgroup of
/// `GL(k, Z)` given by generators) by the finiteness of the group generated by
/// all the `F_i` together.
pub fn torus_soundness(k: usize, families: &[Vec<IntMatrix>]) -> Result<TorusVerdict> {
    for (index, gens) in families.iter().enumerate() {
        if !generated_group_dim(k, gens)?.is_finite() {
            return Err(Error::FactorNotFinite { index });
        }
    }
    let all: Vec<IntMatrix> = families.iter().flatten().cloned().collect();
    Ok(match generated_group_dim(k, &all)? {
        MatrixGroupResult::Finite { elements, order } => TorusVerdict::Sound { order, elements },
        MatrixGroupResult::Infinite { witness_count } => TorusVerdict::Unsound { witness_count },
    })
}

/// One member of a family indexed by primes: a lattice action and a nonzero
/// character whose orbit is measured.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionMember {
    pub gens: Vec<IntMatrix>,
    pub character: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitObstructionReport {
    /// Orbit size per member; `None` when the cap was exceeded.
    pub orbit_sizes: Vec<Option<usize>>,
    /// The sizes strictly increase along the family and do not stay at 1.
    pub growing: bool,
}

pub fn coproduct_orbit_obstruction(members: &[ObstructionMember], cap: usize) -> Result<OrbitObstructionReport> {
    let mut orbit_sizes = Vec::with_capacity(members.len());
    for (i, m) in members.iter().enumerate() {
        if m.character.iter().all(|&c| c == 0) {
            return Err(Error::Invalid(format!("member {i} has the zero character")));
        }
        orbit_sizes.push(match char_orbit(&m.character, &m.gens, cap)? {
            OrbitResult::Finite { orbit } => Some(orbit.len()),
            OrbitResult::ExceedsCap { .. } => None,
        });
    }
    // an exceeded cap reads as larger than everything before it
    let key = |s: &Option<usize>| s.map_or(u128::MAX, |x| x as u128);
    let growing = orbit_sizes.len() >= 2
        && orbit_sizes.windows(2).all(|w| key(&w[0]) < key(&w[1]) || w[0].is_none() && w[1].is_none())
        && orbit_sizes.last().is_some_and(|s| key(s) > 1);
    Ok(OrbitObstructionReport { orbit_sizes, growing })
}
