use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{LieDatum, SimpleType};

/// Cap on the number of enumerated center automorphisms.
pub const MAX_CENTER_AUTOS: usize = 1 << 16;

/// An automorphism of `Z(S)` induced by an automorphism of `S`: factor `i`
/// is sent to factor `perm[i]`, inverted first when `invert[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CenterAuto {
    pub perm: Vec<usize>,
    pub invert: Vec<bool>,
}

impl CenterAuto {
    pub fn identity(n: usize) -> Self {
        CenterAuto {
            perm: (0..n).collect(),
            invert: vec![false; n],
        }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p) && !self.invert.contains(&true)
    }

    /// Applies to a simple-center vector laid out by `datum`.
    pub fn apply(&self, datum: &LieDatum, v: &[i64]) -> Vec<i64> {
        let blocks = datum.blocks();
        let mut out = vec![0; v.len()];
        for (i, &(start, len)) in blocks.iter().enumerate() {
            let (target, _) = blocks[self.perm[i]];
            for k in 0..len {
                let x = v[start + k];
                out[target + k] = if self.invert[i] { -x } else { x };
            }
        }
        datum.reduce_simple(&mut out);
        out
    }
}

/// The automorphisms of `Z(S)` realized by permuting identical factors and
/// inverting centers of types `A_l` (`l >= 2`), `D_odd` and `E6`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterAutoGroup {
    pub elements: Vec<CenterAuto>,
}

impl CenterAutoGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

fn permutations_within_classes(factors: &[SimpleType]) -> Vec<Vec<usize>> {
    let n = factors.len();
    let mut out = Vec::new();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(i: usize, factors: &[SimpleType], perm: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if i == factors.len() {
            out.push(perm.clone());
            return;
        }
        for j in 0..factors.len() {
            if !used[j] && factors[j] == factors[i] {
                used[j] = true;
                perm[i] = j;
                go(i + 1, factors, perm, used, out);
                used[j] = false;
            }
        }
    }
    go(0, factors, &mut perm, &mut used, &mut out);
    out
}

pub fn achievable_center_autos(factors: &[SimpleType]) -> Result<CenterAutoGroup> {
    let invertible: Vec<usize> = (0..factors.len()).filter(|&i| factors[i].has_center_inversion()).collect();
    let perms = permutations_within_classes(factors);
    let size = perms.len().saturating_mul(1usize.checked_shl(invertible.len() as u32).unwrap_or(usize::MAX));
    if size > MAX_CENTER_AUTOS {
        return Err(Error::SizeLimit {
            what: "center automorphisms",
            value: size as u128,
            limit: MAX_CENTER_AUTOS as u128,
        });
    }
    let mut elements = Vec::with_capacity(size);
    for perm in &perms {
        for mask in 0..1usize << invertible.len() {
            let mut invert = vec![false; factors.len()];
            for (bit, &i) in invertible.iter().enumerate() {
                invert[i] = mask >> bit & 1 == 1;
            }
            elements.push(CenterAuto {
                perm: perm.clone(),
                invert,
            });
        }
    }
    Ok(CenterAutoGroup { elements })
}
