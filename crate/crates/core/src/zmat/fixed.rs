use serde::{Deserialize, Serialize};

use super::{smith_normal_form, IntMatrix};
use crate::error::Result;
use crate::group::FiniteAbelian;

/// The subgroup `T^circle_rank x torsion` of `(R/Z)^k` fixed by a torus
/// automorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FixedStructure {
    pub circle_rank: usize,
    pub torsion: FiniteAbelian,
}

impl FixedStructure {
    /// Order of the fixed subgroup when it is finite.
    pub fn finite_order(&self) -> Option<u64> {
        (self.circle_rank == 0).then(|| self.torsion.order())
    }
}

/// Fixed points of `x -> m x` on the torus, i.e. the kernel of `m - I`.
pub fn fixed_subgroup_structure(m: &IntMatrix) -> Result<FixedStructure> {
    m.check_unimodular()?;
    let k = m.rows();
    let snf = smith_normal_form(&(m - &IntMatrix::identity(k)));
    let factors: Vec<u64> = snf.invariant_factors().iter().map(|&d| d as u64).collect();
    Ok(FixedStructure {
        circle_rank: k - snf.rank,
        torsion: FiniteAbelian::from_cyclic_orders(&factors),
    })
}

/// Whether the finite abelian group `d` is isomorphic to a subgroup of
/// `T^r x A`. Prime by prime, the `r` largest cyclic summands of `d` go into
/// the circles and the remaining partition must fit inside that of `A`.
pub fn abelian_embeds(d: &FiniteAbelian, target: &FixedStructure) -> bool {
    let available = target.torsion.primary_parts();
    d.primary_parts().iter().all(|(p, exps)| {
        let rest = exps.iter().skip(target.circle_rank);
        let room: &[u32] = available.get(p).map_or(&[], Vec::as_slice);
        rest.enumerate().all(|(i, &e)| room.get(i).is_some_and(|&f| e <= f))
    })
}
