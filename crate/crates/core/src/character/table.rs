use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::modp::{self, add, inv, mul, sub};
use crate::error::{Error, Result};
use crate::group::{is_prime, ConjugacyClasses, FiniteGroup};

/// Tables with more conjugacy classes than this are refused.
pub const MAX_TABLE_CLASSES: usize = 640;

const SPLIT_SEED: u64 = 0xd1c5_0a7e;
const MAX_SPLIT_ROUNDS: usize = 256;

/// Irreducible characters of a finite group with values in `GF(p)`.
///
/// Rows are sorted by degree, then by the value vector over the classes
/// (which are ordered by their smallest element). Row 0 is the trivial
/// character.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: Arc<FiniteGroup>,
    classes: ConjugacyClasses,
    inverse_class: Vec<usize>,
    prime: u64,
    degrees: Vec<u64>,
    values: Vec<Vec<u64>>,
}

/// Serializable content of a table, keyed by the group's canonical hash.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableData {
    pub group_hash: String,
    pub prime: u64,
    pub degrees: Vec<u64>,
    pub values: Vec<Vec<u64>>,
}

pub fn character_table(group: &Arc<FiniteGroup>) -> Result<CharacterTable> {
    CharacterTable::new(group.clone())
}

/// Prime suitable for every group in the list at once.
pub fn shared_prime(groups: &[&FiniteGroup]) -> Result<u64> {
    let exponent = groups.iter().fold(1u64, |acc, g| num::integer::lcm(acc, g.exponent()));
    let order = groups.iter().map(|g| g.order() as u64).max().unwrap_or(1);
    modp::suitable_prime(exponent, order)
}

fn class_inverses(group: &FiniteGroup, classes: &ConjugacyClasses) -> Vec<usize> {
    (0..classes.len())
        .map(|c| classes.class_of[group.inv(classes.representative(c))])
        .collect()
}

impl CharacterTable {
    pub fn new(group: Arc<FiniteGroup>) -> Result<Self> {
        let p = shared_prime(&[&group])?;
        Self::with_prime(group, p)
    }

    /// Computes the table modulo a caller-chosen prime, which must satisfy
    /// `p > 2|G|` and `p = 1 (mod exponent)`.
    pub fn with_prime(group: Arc<FiniteGroup>, p: u64) -> Result<Self> {
        let n = group.order() as u64;
        if !is_prime(p) || p <= 2 * n || p % group.exponent() != 1 % group.exponent() || p >= modp::PRIME_SEARCH_BOUND {
            return Err(Error::Invalid(format!(
                "prime {p} is unsuitable for a group of order {n} and exponent {}",
                group.exponent()
            )));
        }
        let classes = group.conjugacy_classes();
        if classes.len() > MAX_TABLE_CLASSES {
            return Err(Error::SizeLimit {
                what: "conjugacy classes",
                value: classes.len() as u128,
                limit: MAX_TABLE_CLASSES as u128,
            });
        }
        let inverse_class = class_inverses(&group, &classes);
        let omegas = central_characters(&group, &classes, p)?;
        let sizes = classes.sizes();
        let mut rows: Vec<(u64, Vec<u64>)> = Vec::with_capacity(omegas.len());
        for omega in omegas {
            let mut s = 0u64;
            for j in 0..sizes.len() {
                let t = mul(omega[j], omega[inverse_class[j]], p);
                s = add(s, mul(t, inv(sizes[j] as u64 % p, p), p), p);
            }
            if s == 0 {
                return Err(Error::CharacterTable("degenerate central character".into()));
            }
            let d2 = mul(n % p, inv(s, p), p);
            let d = (d2 as f64).sqrt().round() as u64;
            let d = (d.saturating_sub(1)..=d + 1)
                .find(|&x| x >= 1 && x * x == d2)
                .ok_or_else(|| Error::CharacterTable(format!("squared degree residue {d2} is not a square")))?;
            let values = (0..sizes.len())
                .map(|j| mul(mul(d, omega[j], p), inv(sizes[j] as u64 % p, p), p))
                .collect();
            rows.push((d, values));
        }
        rows.sort();
        let sum: u64 = rows.iter().map(|(d, _)| d * d).sum();
        if sum != n {
            return Err(Error::CharacterTable(format!("squared degrees sum to {sum}, not {n}")));
        }
        let (degrees, values) = rows.into_iter().unzip();
        Ok(CharacterTable {
            group,
            classes,
            inverse_class,
            prime: p,
            degrees,
            values,
        })
    }

    /// Rebuilds a table from cached data, re-checking orthogonality.
    pub fn from_data(group: Arc<FiniteGroup>, data: &TableData) -> Result<Self> {
        if data.group_hash != group.canonical_hash() {
            return Err(Error::CharacterTable("cached table belongs to a different group".into()));
        }
        let classes = group.conjugacy_classes();
        if data.values.len() != classes.len()
            || data.degrees.len() != classes.len()
            || data.values.iter().any(|r| r.len() != classes.len())
        {
            return Err(Error::CharacterTable("cached table has the wrong shape".into()));
        }
        let inverse_class = class_inverses(&group, &classes);
        let table = CharacterTable {
            group,
            classes,
            inverse_class,
            prime: data.prime,
            degrees: data.degrees.clone(),
            values: data.values.clone(),
        };
        table.verify()?;
        Ok(table)
    }

    pub fn to_data(&self) -> TableData {
        TableData {
            group_hash: self.group.canonical_hash(),
            prime: self.prime,
            degrees: self.degrees.clone(),
            values: self.values.clone(),
        }
    }

    /// Checks the row count, the sum of squared degrees and both kinds of
    /// orthogonality modulo `p`.
    pub fn verify(&self) -> Result<()> {
        let n = self.group.order() as u64;
        let r = self.classes.len();
        if self.values.len() != r {
            return Err(Error::CharacterTable("row count differs from class count".into()));
        }
        if self.degrees.iter().map(|d| d * d).sum::<u64>() != n {
            return Err(Error::CharacterTable("squared degrees do not sum to the order".into()));
        }
        for (i, row) in self.values.iter().enumerate() {
            if row[0] != self.degrees[i] % self.prime {
                return Err(Error::CharacterTable(format!("row {i} has value at 1 unequal to its degree")));
            }
            for j in 0..r {
                let expected = i64::from(i == j);
                if self.inner_product(row, &self.values[j]) != expected {
                    return Err(Error::CharacterTable(format!("rows {i} and {j} are not orthonormal")));
                }
            }
        }
        let sizes = self.classes.sizes();
        for a in 0..r {
            for b in 0..r {
                let s = (0..r).fold(0, |acc, i| {
                    add(acc, mul(self.values[i][a], self.values[i][self.inverse_class[b]], self.prime), self.prime)
                });
                let expected = if a == b { n / sizes[a] as u64 } else { 0 };
                if s != expected % self.prime {
                    return Err(Error::CharacterTable(format!("columns {a} and {b} are not orthogonal")));
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn classes(&self) -> &ConjugacyClasses {
        &self.classes
    }

    pub fn class_reps(&self) -> Vec<usize> {
        (0..self.classes.len()).map(|c| self.classes.representative(c)).collect()
    }

    pub fn inverse_class(&self, c: usize) -> usize {
        self.inverse_class[c]
    }

    /// Number of irreducible characters.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn degree(&self, chi: usize) -> u64 {
        self.degrees[chi]
    }

    pub fn row(&self, chi: usize) -> &[u64] {
        &self.values[chi]
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.values
    }

    /// Value of an irreducible at a group element.
    pub fn value_at(&self, chi: usize, g: usize) -> u64 {
        self.values[chi][self.classes.class_of[g]]
    }

    /// `(1/|G|) sum_g a(g) b(g^-1)` for class functions given per class,
    /// lifted to an integer in `(-p/2, p/2]`.
    pub fn inner_product(&self, a: &[u64], b: &[u64]) -> i64 {
        let p = self.prime;
        let mut s = 0u64;
        for (c, members) in self.classes.classes.iter().enumerate() {
            let t = mul(a[c], b[self.inverse_class[c]], p);
            s = add(s, mul(t, members.len() as u64 % p, p), p);
        }
        let n_inv = inv(self.group.order() as u64 % p, p);
        modp::lift(mul(s, n_inv, p), p)
    }

    /// Inner products of a class function with every irreducible.
    pub fn decompose(&self, f: &[u64]) -> Vec<i64> {
        self.values.iter().map(|row| self.inner_product(f, row)).collect()
    }

    /// Class function `sum_i m_i chi_i`.
    pub fn combine(&self, multiplicities: &[u64]) -> Vec<u64> {
        let p = self.prime;
        let mut out = vec![0u64; self.classes.len()];
        for (m, row) in multiplicities.iter().zip(&self.values) {
            for (o, &v) in out.iter_mut().zip(row) {
                *o = add(*o, mul(*m % p, v, p), p);
            }
        }
        out
    }

    /// Degree of the character with the given multiplicities.
    pub fn degree_of(&self, multiplicities: &[u64]) -> u64 {
        multiplicities.iter().zip(&self.degrees).map(|(m, d)| m * d).sum()
    }

    /// Index of the irreducible equal to the class function `f`, decided
    /// through integer inner products.
    pub fn irreducible_index(&self, f: &[u64]) -> Option<usize> {
        if self.inner_product(f, f) != 1 {
            return None;
        }
        (0..self.len()).find(|&i| self.inner_product(f, &self.values[i]) == 1)
    }

    /// Whether two class functions are equal, via `<a-b, a-b> = 0`.
    pub fn same_class_function(&self, a: &[u64], b: &[u64]) -> bool {
        self.inner_product(a, a) + self.inner_product(b, b) - self.inner_product(a, b) - self.inner_product(b, a)
            == 0
    }
}

/// Joint eigenvectors of the class-sum multiplication matrices, normalized to
/// 1 at the identity class. Each is the central character `omega_chi` of one
/// irreducible.
fn central_characters(group: &FiniteGroup, classes: &ConjugacyClasses, p: u64) -> Result<Vec<Vec<u64>>> {
    let r = classes.len();
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    let mut pending: Vec<Vec<Vec<u64>>> = vec![(0..r)
        .map(|i| {
            let mut e = vec![0u64; r];
            e[i] = 1;
            e
        })
        .collect()];
    let mut done: Vec<Vec<u64>> = Vec::with_capacity(r);
    let mut rounds = 0;
    while !pending.is_empty() {
        pending.retain(|basis| {
            if basis.len() == 1 {
                done.push(basis[0].clone());
                false
            } else {
                true
            }
        });
        if pending.is_empty() {
            break;
        }
        rounds += 1;
        if rounds > MAX_SPLIT_ROUNDS {
            return Err(Error::CharacterTable("class algebra eigenspaces failed to split".into()));
        }
        let coeffs: Vec<u64> = (0..r).map(|_| rng.gen_range(0..p)).collect();
        let combined = combined_class_matrix(group, classes, &coeffs, p);
        let mut next = Vec::new();
        for basis in pending {
            next.extend(split(&combined, basis, p)?);
        }
        pending = next;
    }
    let mut out = Vec::with_capacity(done.len());
    for v in done {
        if v[0] == 0 {
            return Err(Error::CharacterTable("eigenvector vanishes at the identity class".into()));
        }
        let s = inv(v[0], p);
        out.push(v.iter().map(|&x| mul(x, s, p)).collect());
    }
    if out.len() != r {
        return Err(Error::CharacterTable(format!("found {} central characters, expected {r}", out.len())));
    }
    Ok(out)
}

/// `N = sum_j c_j M_j` where `(M_j)[k][l]` counts `x` in class `j` with
/// `x^-1 z_l` in class `k`, `z_l` the representative of class `l`.
fn combined_class_matrix(group: &FiniteGroup, classes: &ConjugacyClasses, coeffs: &[u64], p: u64) -> Vec<Vec<u64>> {
    let r = classes.len();
    let mut n = vec![vec![0u64; r]; r];
    for l in 0..r {
        let z = classes.representative(l);
        for x in 0..group.order() {
            let k = classes.class_of[group.mul(group.inv(x), z)];
            let c = coeffs[classes.class_of[x]];
            n[k][l] = add(n[k][l], c, p);
        }
    }
    n
}

/// Splits an invariant subspace (basis in reduced echelon form) into the
/// eigenspaces of `m` restricted to it.
fn split(m: &[Vec<u64>], mut basis: Vec<Vec<u64>>, p: u64) -> Result<Vec<Vec<Vec<u64>>>> {
    let pivots = modp::rref(&mut basis, p);
    let d = basis.len();
    // restricted[t][i] = (m b_i)[pivot_t]
    let restricted: Vec<Vec<u64>> = pivots
        .iter()
        .map(|&pt| {
            basis
                .iter()
                .map(|b| m[pt].iter().zip(b).fold(0u64, |acc, (&x, &y)| add(acc, mul(x, y, p), p)))
                .collect()
        })
        .collect();
    let eigenvalues = modp::roots(&modp::charpoly(&restricted, p), p);
    if eigenvalues.len() <= 1 {
        return Ok(vec![basis]);
    }
    let mut pieces = Vec::with_capacity(eigenvalues.len());
    let mut total = 0;
    for lambda in eigenvalues {
        let mut shifted = restricted.clone();
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] = sub(row[i], lambda, p);
        }
        let vectors: Vec<Vec<u64>> = modp::nullspace(&shifted, p)
            .into_iter()
            .map(|y| {
                let mut v = vec![0u64; basis[0].len()];
                for (yi, b) in y.iter().zip(&basis) {
                    for (o, &x) in v.iter_mut().zip(b) {
                        *o = add(*o, mul(*yi, x, p), p);
                    }
                }
                v
            })
            .collect();
        total += vectors.len();
        pieces.push(vectors);
    }
    if total != d {
        return Err(Error::CharacterTable("class algebra is not diagonalizable modulo p".into()));
    }
    Ok(pieces)
}
