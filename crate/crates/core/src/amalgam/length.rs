use std::sync::Arc;

use num::{Rational64, Signed, Zero};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// A conjugation-invariant length function on a finite group with rational
/// values; `(g, e) -> l(g e^-1)` is then a bi-invariant pseudometric.
#[derive(Clone, Debug, PartialEq)]
pub struct LengthFunction {
    group: Arc<FiniteGroup>,
    values: Vec<Rational64>,
}

impl LengthFunction {
    /// Validates all axioms exhaustively.
    pub fn new(group: Arc<FiniteGroup>, values: Vec<Rational64>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::DimensionMismatch {
                expected: group.order(),
                found: values.len(),
            });
        }
        if !values[0].is_zero() {
            return Err(Error::NonzeroAtIdentity);
        }
        if let Some(g) = values.iter().position(|v| v.is_negative()) {
            return Err(Error::Invalid(format!("negative length at element {g}")));
        }
        for g in 0..group.order() {
            if values[g] != values[group.inv(g)] {
                return Err(Error::NotSymmetric(g));
            }
        }
        for x in 0..group.order() {
            for g in 0..group.order() {
                let c = group.conjugate(g, x);
                if values[c] != values[x] {
                    return Err(Error::NotClassFunction(x, c));
                }
            }
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                if values[group.mul(a, b)] > values[a] + values[b] {
                    return Err(Error::NotSubadditive(a, b));
                }
            }
        }
        Ok(LengthFunction { group, values })
    }

    /// `1` off the identity.
    pub fn discrete(group: Arc<FiniteGroup>) -> Self {
        let values = (0..group.order())
            .map(|g| Rational64::from_integer(i64::from(g != 0)))
            .collect();
        LengthFunction { group, values }
    }

    /// Number of points moved by the image of each element; half the squared
    /// Hilbert-Schmidt distance of the permutation matrix to the identity.
    pub fn moved_points(rep: &PermutationRep) -> Self {
        let values = rep
            .images
            .iter()
            .map(|p| {
                let moved = p.iter().enumerate().filter(|&(i, &j)| i != j).count();
                Rational64::from_integer(moved as i64)
            })
            .collect();
        LengthFunction {
            group: rep.group.clone(),
            values,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn value(&self, g: usize) -> Rational64 {
        self.values[g]
    }

    pub fn values(&self) -> &[Rational64] {
        &self.values
    }

    /// `d(g, e) = l(g e^-1)`.
    pub fn distance(&self, g: usize, e: usize) -> Rational64 {
        self.values[self.group.mul(g, self.group.inv(e))]
    }
}

/// A permutation representation: `images[g][i]` is where `g` sends point `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationRep {
    group: Arc<FiniteGroup>,
    degree: usize,
    images: Vec<Vec<usize>>,
}

impl PermutationRep {
    pub fn new(group: Arc<FiniteGroup>, images: Vec<Vec<usize>>) -> Result<Self> {
        if images.len() != group.order() {
            return Err(Error::DimensionMismatch {
                expected: group.order(),
                found: images.len(),
            });
        }
        let degree = images[0].len();
        for (g, p) in images.iter().enumerate() {
            let mut seen = vec![false; degree];
            if p.len() != degree || p.iter().any(|&i| i >= degree || std::mem::replace(&mut seen[i], true)) {
                return Err(Error::Invalid(format!("image of element {g} is not a permutation")));
            }
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                let ab = &images[group.mul(a, b)];
                if (0..degree).any(|i| ab[i] != images[a][images[b][i]]) {
                    return Err(Error::NotAHomomorphism { a, b });
                }
            }
        }
        Ok(PermutationRep { group, degree, images })
    }

    /// Left regular representation, padded with `extra` fixed points.
    pub fn regular(group: Arc<FiniteGroup>, extra: usize) -> Self {
        let n = group.order();
        let images = (0..n)
            .map(|g| (0..n).map(|x| group.mul(g, x)).chain(n..n + extra).collect())
            .collect();
        PermutationRep {
            group,
            degree: n + extra,
            images,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn image(&self, g: usize) -> &[usize] {
        &self.images[g]
    }
}
