use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::IntMatrix;
use crate::error::{Error, Result};

/// Largest dimension accepted by [`minkowski_bound`].
pub const DEFAULT_MAX_DIM: usize = 8;

/// Default cap on the number of lattice vectors explored by [`char_orbit`].
pub const DEFAULT_ORBIT_CAP: usize = 1_000_000;

pub fn minkowski_bound(k: usize) -> Result<u64> {
    minkowski_bound_with_limit(k, DEFAULT_MAX_DIM)
}

/// `prod_p p^(sum_i floor(k / (p^i (p - 1))))`, the largest possible order of
/// a finite subgroup of `GL(k, Q)` is a divisor of this.
pub fn minkowski_bound_with_limit(k: usize, max_dim: usize) -> Result<u64> {
    if k == 0 || k > max_dim {
        return Err(Error::SizeLimit {
            what: "matrix dimension",
            value: k as u128,
            limit: max_dim as u128,
        });
    }
    let k = k as u64;
    let mut bound: u64 = 1;
    for p in (2..=k + 1).filter(|&p| crate::group::is_prime(p)) {
        let mut exp = 0;
        let mut q = p - 1;
        while q <= k {
            exp += k / q;
            q *= p;
        }
        bound = bound
            .checked_mul(p.checked_pow(exp as u32).ok_or(Error::SizeLimit {
                what: "minkowski bound",
                value: u128::MAX,
                limit: u64::MAX as u128,
            })?)
            .ok_or(Error::SizeLimit {
                what: "minkowski bound",
                value: u128::MAX,
                limit: u64::MAX as u128,
            })?;
    }
    Ok(bound)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum MatrixGroupResult {
    Finite { elements: Vec<IntMatrix>, order: u64 },
    /// `witness_count` distinct elements were enumerated, one more than the
    /// bound allows for a finite group.
    Infinite { witness_count: u64 },
}

impl MatrixGroupResult {
    pub fn is_finite(&self) -> bool {
        matches!(self, MatrixGroupResult::Finite { .. })
    }

    pub fn order(&self) -> Option<u64> {
        match self {
            MatrixGroupResult::Finite { order, .. } => Some(*order),
            MatrixGroupResult::Infinite { .. } => None,
        }
    }

    pub fn elements(&self) -> Option<&[IntMatrix]> {
        match self {
            MatrixGroupResult::Finite { elements, .. } => Some(elements),
            MatrixGroupResult::Infinite { .. } => None,
        }
    }
}

fn check_generators(k: usize, gens: &[IntMatrix]) -> Result<()> {
    for g in gens {
        if g.rows() != k || g.cols() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: if g.rows() != k { g.rows() } else { g.cols() },
            });
        }
        g.check_unimodular()?;
    }
    Ok(())
}

/// Closure of `gens` in `GL(k, Z)`; the dimension is read off the first
/// generator.
pub fn generated_group(gens: &[IntMatrix]) -> Result<MatrixGroupResult> {
    let k = gens
        .first()
        .ok_or_else(|| Error::Invalid("empty generator list; dimension unknown".into()))?
        .rows();
    generated_group_dim(k, gens)
}

/// Closure of `gens` (possibly empty) in `GL(k, Z)`.
pub fn generated_group_dim(k: usize, gens: &[IntMatrix]) -> Result<MatrixGroupResult> {
    check_generators(k, gens)?;
    let bound = minkowski_bound(k)?;
    let mut steps: Vec<IntMatrix> = gens.to_vec();
    for g in gens {
        steps.push(g.inverse()?);
    }
    let id = IntMatrix::identity(k);
    let mut seen: HashSet<IntMatrix> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for s in &steps {
            let y = s * &x;
            if seen.contains(&y) {
                continue;
            }
            seen.insert(y.clone());
            if seen.len() as u64 > bound {
                return Ok(MatrixGroupResult::Infinite {
                    witness_count: seen.len() as u64,
                });
            }
            queue.push_back(y);
        }
    }
    let elements: BTreeSet<IntMatrix> = seen.into_iter().collect();
    Ok(MatrixGroupResult::Finite {
        order: elements.len() as u64,
        elements: elements.into_iter().collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ElementOrder {
    Finite(u64),
    Infinite,
}

pub fn element_order(m: &IntMatrix) -> Result<ElementOrder> {
    m.check_unimodular()?;
    let bound = minkowski_bound(m.rows())?;
    let mut p = m.clone();
    for n in 1..=bound {
        if p.is_identity() {
            return Ok(ElementOrder::Finite(n));
        }
        p = &p * m;
    }
    Ok(ElementOrder::Infinite)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum OrbitResult {
    Finite { orbit: Vec<Vec<i64>> },
    ExceedsCap { explored: usize },
}

impl OrbitResult {
    pub fn size(&self) -> Option<usize> {
        match self {
            OrbitResult::Finite { orbit } => Some(orbit.len()),
            OrbitResult::ExceedsCap { .. } => None,
        }
    }
}

/// Orbit of a character `v` under the group generated by `gens`, acting on
/// `Z^k` by `v -> g v`.
pub fn char_orbit(v: &[i64], gens: &[IntMatrix], cap: usize) -> Result<OrbitResult> {
    let k = v.len();
    check_generators(k, gens)?;
    let mut steps: Vec<IntMatrix> = gens.to_vec();
    for g in gens {
        steps.push(g.inverse()?);
    }
    let mut seen: HashSet<Vec<i64>> = HashSet::from([v.to_vec()]);
    let mut queue = VecDeque::from([v.to_vec()]);
    while let Some(x) = queue.pop_front() {
        for s in &steps {
            let y = s.apply(&x);
            if y.iter().any(|c| c.unsigned_abs() > (i64::MAX as u64) >> 8) {
                return Ok(OrbitResult::ExceedsCap { explored: seen.len() });
            }
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Ok(OrbitResult::ExceedsCap { explored: seen.len() });
                }
                queue.push_back(y);
            }
        }
    }
    let mut orbit: Vec<Vec<i64>> = seen.into_iter().collect();
    orbit.sort();
    Ok(OrbitResult::Finite { orbit })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[[i64; 2]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn bounds() {
        assert_eq!(minkowski_bound(1).unwrap(), 2);
        assert_eq!(minkowski_bound(2).unwrap(), 24);
        assert_eq!(minkowski_bound(3).unwrap(), 48);
        assert_eq!(minkowski_bound(4).unwrap(), 5760);
        assert!(matches!(minkowski_bound(9), Err(Error::SizeLimit { .. })));
        assert!(minkowski_bound_with_limit(9, 12).is_ok());
    }

    #[test]
    fn small_rotation_groups() {
        let a = m(&[[0, -1], [1, 0]]);
        let b = m(&[[0, -1], [1, 1]]);
        assert_eq!(generated_group(&[a.clone()]).unwrap().order(), Some(4));
        assert_eq!(generated_group(&[b.clone()]).unwrap().order(), Some(6));
        assert_eq!(
            generated_group(&[a, b]).unwrap(),
            MatrixGroupResult::Infinite { witness_count: 25 }
        );
    }

    #[test]
    fn dihedral_twelve_divides_bound() {
        let b = m(&[[0, -1], [1, 1]]);
        let s = m(&[[0, 1], [1, 0]]);
        let g = generated_group(&[b, s]).unwrap();
        assert_eq!(g.order(), Some(12));
        assert_eq!(24 % 12, 0);
    }

    #[test]
    fn non_unimodular_generator() {
        let bad = m(&[[2, 0], [0, 1]]);
        assert_eq!(generated_group(&[bad]).unwrap_err(), Error::NotUnimodular { det: 2 });
    }

    #[test]
    fn orders() {
        assert_eq!(element_order(&IntMatrix::diagonal(&[-1, -1])).unwrap(), ElementOrder::Finite(2));
        assert_eq!(element_order(&m(&[[0, -1], [1, 1]])).unwrap(), ElementOrder::Finite(6));
        assert_eq!(element_order(&m(&[[1, 1], [0, 1]])).unwrap(), ElementOrder::Infinite);
        assert_eq!(element_order(&IntMatrix::identity(3)).unwrap(), ElementOrder::Finite(1));
    }

    #[test]
    fn orbits() {
        let a = m(&[[0, -1], [1, 0]]);
        let b = m(&[[0, -1], [1, 1]]);
        assert_eq!(char_orbit(&[0, 0], &[a.clone(), b.clone()], 10).unwrap().size(), Some(1));
        let o = char_orbit(&[1, 0], &[a.clone()], 100).unwrap();
        assert_eq!(
            o,
            OrbitResult::Finite {
                orbit: vec![vec![-1, 0], vec![0, -1], vec![0, 1], vec![1, 0]]
            }
        );
        assert!(matches!(
            char_orbit(&[1, 0], &[a, b], 10_000).unwrap(),
            OrbitResult::ExceedsCap { .. }
        ));
        for p in [2usize, 3, 5, 7] {
            let cycle: Vec<usize> = (0..p).map(|j| (j + 1) % p).collect();
            let mut e1 = vec![0; p];
            e1[0] = 1;
            let o = char_orbit(&e1, &[IntMatrix::permutation(&cycle)], 100).unwrap();
            assert_eq!(o.size(), Some(p));
        }
        assert!(matches!(
            char_orbit(&[1, 0, 0], &[m(&[[0, 1], [1, 0]])], 10),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
