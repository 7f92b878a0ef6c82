use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::zmat::{element_order, ElementOrder, IntMatrix, MatrixGroupResult};

/// Conjugates `B2^n B1 B2^-n` of an involution commuting with `alpha`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionFamily {
    /// Distinct witnesses in order of first appearance.
    pub witnesses: Vec<IntMatrix>,
    pub requested: usize,
    /// Fewer distinct witnesses than requested.
    pub degenerate: bool,
}

fn describe_order(m: &IntMatrix) -> String {
    match element_order(m) {
        Ok(ElementOrder::Finite(n)) => n.to_string(),
        Ok(ElementOrder::Infinite) => "infinite".into(),
        Err(e) => e.to_string(),
    }
}

pub fn torus2_automorphism_family_witness(
    alpha: &IntMatrix,
    b1: &IntMatrix,
    b2: &IntMatrix,
    n_max: usize,
) -> Result<TorsionFamily> {
    for m in [b1, b2] {
        if !m.is_square() || m.rows() != alpha.rows() || !alpha.is_square() {
            return Err(Error::DimensionMismatch {
                expected: alpha.rows(),
                found: m.rows(),
            });
        }
    }
    alpha.check_unimodular()?;
    b2.check_unimodular()?;
    if !b1.commutes_with(alpha) {
        return Err(Error::DoesNotCommute(format!("{b1} and {alpha}")));
    }
    if !b2.commutes_with(alpha) {
        return Err(Error::DoesNotCommute(format!("{b2} and {alpha}")));
    }
    if b1.is_identity() || !(b1 * b1).is_identity() {
        return Err(Error::WrongOrder {
            expected: 2,
            found: describe_order(b1),
        });
    }
    let b2_inv = b2.inverse()?;
    let mut witnesses: Vec<IntMatrix> = Vec::new();
    let (mut left, mut right) = (IntMatrix::identity(alpha.rows()), IntMatrix::identity(alpha.rows()));
    for _ in 0..=n_max {
        let w = &(&left * b1) * &right;
        debug_assert!((&w * &w).is_identity() && w.commutes_with(alpha));
        if !witnesses.contains(&w) {
            witnesses.push(w);
        }
        left = &left * b2;
        right = &b2_inv * &right;
    }
    Ok(TorsionFamily {
        degenerate: witnesses.len() <= n_max,
        witnesses,
        requested: n_max + 1,
    })
}

/// Elements of a finite matrix group commuting with `m`.
pub fn centralizer_in_finite_group(m: &IntMatrix, ambient: &MatrixGroupResult) -> Result<Vec<IntMatrix>> {
    let elements = ambient
        .elements()
        .ok_or_else(|| Error::Invalid("ambient group is infinite".into()))?;
    if !elements.contains(m) {
        return Err(Error::NotMember);
    }
    Ok(elements.iter().filter(|g| g.commutes_with(m)).cloned().collect())
}
