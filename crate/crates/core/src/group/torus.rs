use std::fmt;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::zmat::IntMatrix;

/// A point of the rational torus `(Q/Z)^k`, coordinates reduced to `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusPoint {
    coords: Vec<BigRational>,
}

fn reduce(x: BigRational) -> BigRational {
    let floor = x.floor();
    x - floor
}

impl TorusPoint {
    pub fn new(coords: Vec<BigRational>) -> Self {
        TorusPoint {
            coords: coords.into_iter().map(reduce).collect(),
        }
    }

    pub fn zero(k: usize) -> Self {
        TorusPoint {
            coords: vec![BigRational::zero(); k],
        }
    }

    /// From `(numerator, denominator)` pairs.
    pub fn from_fractions(fracs: &[(i64, i64)]) -> Self {
        Self::new(
            fracs
                .iter()
                .map(|&(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &TorusPoint) -> TorusPoint {
        assert_eq!(self.dim(), other.dim());
        TorusPoint::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> TorusPoint {
        TorusPoint::new(self.coords.iter().map(|a| -a).collect())
    }

    pub fn sub(&self, other: &TorusPoint) -> TorusPoint {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> TorusPoint {
        let k = BigRational::from_integer(BigInt::from(k));
        TorusPoint::new(self.coords.iter().map(|a| a * &k).collect())
    }

    /// Coordinate action `x -> M x`, i.e. `(z, w) -> (z^a w^b, z^c w^d)` in
    /// multiplicative notation.
    pub fn transform(&self, m: &IntMatrix) -> TorusPoint {
        assert_eq!(m.cols(), self.dim());
        let coords = (0..m.rows())
            .map(|i| {
                (0..m.cols()).fold(BigRational::zero(), |acc, j| {
                    acc + BigRational::from_integer(BigInt::from(m.get(i, j))) * &self.coords[j]
                })
            })
            .collect();
        TorusPoint::new(coords)
    }

    /// Order of the point as a torsion element (lcm of denominators).
    pub fn order(&self) -> BigInt {
        self.coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coords
            .iter()
            .map(|c| if c.is_zero() { "0".into() } else { format!("{}", c.abs()) })
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}
