use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite abelian group `Z/d_1 x ... x Z/d_r` in invariant-factor form
/// (`d_1 | d_2 | ... | d_r`, each `d_j >= 2`).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteAbelian {
    invariant_factors: Vec<u64>,
}

pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

impl FiniteAbelian {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// Validates an invariant-factor list.
    pub fn new(invariant_factors: Vec<u64>) -> Result<Self> {
        if invariant_factors.iter().any(|&d| d < 2) {
            return Err(Error::Invalid("invariant factors must be >= 2".into()));
        }
        if invariant_factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::Invalid(format!(
                "invariant factors {invariant_factors:?} do not form a divisibility chain"
            )));
        }
        Ok(FiniteAbelian { invariant_factors })
    }

    /// Normalizes an arbitrary direct sum of cyclic groups `Z/n_1 x ... x Z/n_k`
    /// (entries 0 and 1 are dropped).
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        let mut primary: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &n in orders.iter().filter(|&&n| n > 1) {
            for (p, e) in factorize(n) {
                primary.entry(p).or_default().push(e);
            }
        }
        Self::from_primary(&primary)
    }

    fn from_primary(primary: &BTreeMap<u64, Vec<u32>>) -> Self {
        let r = primary.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; r];
        for (&p, exps) in primary {
            let mut e = exps.clone();
            e.sort_unstable();
            // largest exponents go to the last invariant factors
            for (slot, &x) in factors.iter_mut().rev().zip(e.iter().rev()) {
                *slot *= p.pow(x);
            }
        }
        FiniteAbelian {
            invariant_factors: factors,
        }
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn exponent(&self) -> u64 {
        self.invariant_factors.last().copied().unwrap_or(1)
    }

    /// For each prime, the exponents of the cyclic p-power summands, largest
    /// first.
    pub fn primary_parts(&self) -> BTreeMap<u64, Vec<u32>> {
        let mut out: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &d in &self.invariant_factors {
            for (p, e) in factorize(d) {
                out.entry(p).or_default().push(e);
            }
        }
        for v in out.values_mut() {
            v.sort_unstable_by(|a, b| b.cmp(a));
        }
        out
    }

    pub fn p_rank(&self, p: u64) -> usize {
        self.invariant_factors.iter().filter(|&&d| d % p == 0).count()
    }

    pub fn direct_sum(&self, other: &FiniteAbelian) -> FiniteAbelian {
        let all: Vec<u64> = self
            .invariant_factors
            .iter()
            .chain(other.invariant_factors.iter())
            .copied()
            .collect();
        Self::from_cyclic_orders(&all)
    }
}

impl fmt::Display for FiniteAbelian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariant_factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form_of_cyclic_sums() {
        assert_eq!(FiniteAbelian::from_cyclic_orders(&[2, 3]).invariant_factors(), &[6]);
        assert_eq!(FiniteAbelian::from_cyclic_orders(&[2, 2]).invariant_factors(), &[2, 2]);
        assert_eq!(FiniteAbelian::from_cyclic_orders(&[4, 6]).invariant_factors(), &[2, 12]);
        assert_eq!(FiniteAbelian::from_cyclic_orders(&[27, 3]).invariant_factors(), &[3, 27]);
        assert!(FiniteAbelian::from_cyclic_orders(&[1, 1]).is_trivial());
    }

    #[test]
    fn divisibility_chain_is_enforced() {
        assert!(FiniteAbelian::new(vec![2, 3]).is_err());
        assert!(FiniteAbelian::new(vec![1]).is_err());
        assert_eq!(FiniteAbelian::new(vec![2, 4]).unwrap().order(), 8);
    }

    #[test]
    fn primary_parts_and_ranks() {
        let a = FiniteAbelian::from_cyclic_orders(&[27, 3, 2]);
        assert_eq!(a.p_rank(3), 2);
        assert_eq!(a.p_rank(2), 1);
        assert_eq!(a.primary_parts()[&3], vec![3, 1]);
        assert_eq!(a.to_string(), "Z/3 x Z/54");
    }
}
