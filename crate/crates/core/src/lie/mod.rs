//! Compact connected Lie groups `(T^z x S_1 x ... x S_n) / Delta` with
//! simply connected simple factors: centers, the rank conditions, liftability
//! of torus automorphisms and the largest-compact-subgroup decision for
//! central tori of dimension at most two.

mod autos;
mod torsion;
mod verdict;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, Integer, One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteAbelian, TorusPoint};
use crate::zmat::{smith_normal_form, IntMatrix};

pub use autos::{achievable_center_autos, CenterAuto, CenterAutoGroup};
pub use torsion::{centralizer_in_finite_group, torus2_automorphism_family_witness, TorsionFamily};
pub use verdict::{
    conditions_abc, largest_compact_verdict, liftable, torsion_class_representatives, ClassRecord,
    ConditionsReport, LargestCompact, LargestCompactReport, LiftWitness,
};

/// Enumeration cap for `Delta`.
pub const MAX_DELTA_ORDER: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// A simply connected compact simple Lie group, by Cartan type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleType {
    series: Series,
    rank: u32,
}

impl SimpleType {
    pub fn new(series: Series, rank: u32) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B => rank >= 2,
            Series::C => rank >= 3,
            Series::D => rank >= 4,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if !ok {
            return Err(Error::Invalid(format!("no simple type {series:?}{rank}")));
        }
        Ok(SimpleType { series, rank })
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// Cyclic orders of the center, one entry per cyclic summand.
    pub fn center_orders(&self) -> Vec<i64> {
        let l = i64::from(self.rank);
        match self.series {
            Series::A => vec![l + 1],
            Series::B | Series::C => vec![2],
            Series::D if l % 2 == 0 => vec![2, 2],
            Series::D => vec![4],
            Series::E if l == 6 => vec![3],
            Series::E if l == 7 => vec![2],
            Series::E | Series::F | Series::G => vec![],
        }
    }

    pub fn center(&self) -> FiniteAbelian {
        let orders: Vec<u64> = self.center_orders().iter().map(|&n| n as u64).collect();
        FiniteAbelian::from_cyclic_orders(&orders)
    }

    /// Whether some automorphism acts on the center by inversion
    /// nontrivially (the center is not an elementary abelian 2-group).
    pub fn has_center_inversion(&self) -> bool {
        self.center_orders().iter().any(|&n| n > 2)
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.series, self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("cannot parse simple type {s:?}"));
        let mut chars = s.chars();
        let series = match chars.next().ok_or_else(bad)?.to_ascii_uppercase() {
            'A' => Series::A,
            'B' => Series::B,
            'C' => Series::C,
            'D' => Series::D,
            'E' => Series::E,
            'F' => Series::F,
            'G' => Series::G,
            _ => return Err(bad()),
        };
        let rank = chars.as_str().trim_start_matches('_').parse().map_err(|_| bad())?;
        SimpleType::new(series, rank)
    }
}

impl Serialize for SimpleType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SimpleType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A generator `(phi(s), s)` of `Delta`, with `s` in the product of the
/// simple centers (one residue per cyclic summand) and `phi(s)` in `(Q/Z)^z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaGenerator {
    pub simple: Vec<i64>,
    pub torus: TorusPoint,
}

/// `(T^z x prod S_i) / Delta` with `Delta` the graph of a homomorphism from
/// a subgroup of the simple centers onto a finite subgroup of `T^z`.
#[derive(Clone, Debug)]
pub struct LieDatum {
    z: usize,
    factors: Vec<SimpleType>,
    generators: Vec<DeltaGenerator>,
    moduli: Vec<i64>,
    /// `(factor, first summand, summand count)`
    blocks: Vec<(usize, usize)>,
    /// Common denominator of the torus coordinates.
    denominator: i64,
    /// `phi` as a table on `Delta_S`.
    graph: HashMap<Vec<i64>, Vec<i64>>,
}

fn reduce(v: &mut [i64], moduli: &[i64]) {
    for (x, &m) in v.iter_mut().zip(moduli) {
        *x = x.rem_euclid(m);
    }
}

impl LieDatum {
    pub fn new(z: usize, factors: Vec<SimpleType>, generators: Vec<DeltaGenerator>) -> Result<Self> {
        let mut moduli = Vec::new();
        let mut blocks = Vec::new();
        for f in &factors {
            let c = f.center_orders();
            blocks.push((moduli.len(), c.len()));
            moduli.extend(c);
        }
        let mut denominator = BigInt::one();
        for (i, g) in generators.iter().enumerate() {
            if g.simple.len() != moduli.len() {
                return Err(Error::InvalidDelta(format!(
                    "generator {i} has {} center coordinates, expected {}",
                    g.simple.len(),
                    moduli.len()
                )));
            }
            if g.torus.dim() != z {
                return Err(Error::InvalidDelta(format!(
                    "generator {i} has {} torus coordinates, expected {z}",
                    g.torus.dim()
                )));
            }
            for c in g.torus.coords() {
                denominator = denominator.lcm(c.denom());
            }
        }
        let denominator = denominator
            .to_i64()
            .filter(|&d| d <= 1 << 30)
            .ok_or_else(|| Error::InvalidDelta("torus denominators too large".into()))?;
        let mut datum = LieDatum {
            z,
            factors,
            generators,
            moduli,
            blocks,
            denominator,
            graph: HashMap::new(),
        };
        datum.graph = datum.enumerate_graph()?;
        Ok(datum)
    }

    /// Integer numerators of a torus point over the common denominator.
    fn torus_numerators(&self, p: &TorusPoint) -> Vec<i64> {
        p.coords()
            .iter()
            .map(|c| {
                let scaled = c * BigRational::from_integer(BigInt::from(self.denominator));
                scaled.to_integer().to_i64().expect("bounded numerator")
            })
            .collect()
    }

    fn enumerate_graph(&self) -> Result<HashMap<Vec<i64>, Vec<i64>>> {
        let gens: Vec<(Vec<i64>, Vec<i64>)> = self
            .generators
            .iter()
            .map(|g| {
                let mut s = g.simple.clone();
                reduce(&mut s, &self.moduli);
                (s, self.torus_numerators(&g.torus))
            })
            .collect();
        let tmod = vec![self.denominator; self.z];
        let zero = (vec![0; self.moduli.len()], vec![0; self.z]);
        let mut graph = HashMap::from([zero.clone()]);
        let mut queue = VecDeque::from([zero]);
        while let Some((s, t)) = queue.pop_front() {
            for (gs, gt) in &gens {
                let mut ns: Vec<i64> = s.iter().zip(gs).map(|(a, b)| a + b).collect();
                let mut nt: Vec<i64> = t.iter().zip(gt).map(|(a, b)| a + b).collect();
                reduce(&mut ns, &self.moduli);
                reduce(&mut nt, &tmod);
                match graph.get(&ns) {
                    Some(old) if *old != nt => {
                        return Err(Error::InvalidDelta(format!(
                            "not a graph over the simple centers: {ns:?} has two torus components"
                        )))
                    }
                    Some(_) => {}
                    None => {
                        if graph.len() >= MAX_DELTA_ORDER {
                            return Err(Error::SizeLimit {
                                what: "Delta order",
                                value: graph.len() as u128 + 1,
                                limit: MAX_DELTA_ORDER as u128,
                            });
                        }
                        graph.insert(ns.clone(), nt.clone());
                        queue.push_back((ns, nt));
                    }
                }
            }
        }
        Ok(graph)
    }

    pub fn z(&self) -> usize {
        self.z
    }

    pub fn factors(&self) -> &[SimpleType] {
        &self.factors
    }

    pub fn generators(&self) -> &[DeltaGenerator] {
        &self.generators
    }

    /// Orders of the cyclic summands of `Z(S)`, concatenated over factors.
    pub fn center_moduli(&self) -> &[i64] {
        &self.moduli
    }

    pub(crate) fn blocks(&self) -> &[(usize, usize)] {
        &self.blocks
    }

    pub(crate) fn graph(&self) -> &HashMap<Vec<i64>, Vec<i64>> {
        &self.graph
    }

    pub(crate) fn denominator(&self) -> i64 {
        self.denominator
    }

    pub(crate) fn reduce_simple(&self, v: &mut [i64]) {
        reduce(v, &self.moduli);
    }

    pub fn delta_order(&self) -> usize {
        self.graph.len()
    }

    /// `Delta_0 = phi(Delta_S)`, the intersection of the central torus with
    /// the commutator subgroup.
    pub fn delta0(&self) -> FiniteAbelian {
        let gens: Vec<Vec<i64>> = self.generators.iter().map(|g| self.torus_numerators(&g.torus)).collect();
        subgroup_structure(&vec![self.denominator; self.z], &gens)
    }

    /// The same datum after the change of torus coordinates `x -> P x`.
    pub fn change_torus_basis(&self, p: &IntMatrix) -> Result<LieDatum> {
        p.check_unimodular()?;
        if p.rows() != self.z {
            return Err(Error::DimensionMismatch {
                expected: self.z,
                found: p.rows(),
            });
        }
        let generators = self
            .generators
            .iter()
            .map(|g| DeltaGenerator {
                simple: g.simple.clone(),
                torus: g.torus.transform(p),
            })
            .collect();
        LieDatum::new(self.z, self.factors.clone(), generators)
    }

    /// `SU(3^k) x SU(3^l)` over `T^2` with the order-3 subgroups of the two
    /// centers glued: `Delta_0 = Z/3^k x Z/3^(l-1)`.
    pub fn glued_su3_powers(k: u32, l: u32) -> Result<LieDatum> {
        if l < 1 || k < 1 {
            return Err(Error::InvalidDelta("exponents must be positive".into()));
        }
        let (a, b) = (3i64.pow(k), 3i64.pow(l));
        let factors = vec![SimpleType::new(Series::A, a as u32 - 1)?, SimpleType::new(Series::A, b as u32 - 1)?];
        let generators = vec![
            DeltaGenerator {
                simple: vec![1, 0],
                torus: TorusPoint::from_fractions(&[(1, a), (0, 1)]),
            },
            DeltaGenerator {
                simple: vec![0, 1],
                torus: TorusPoint::from_fractions(&[(1, b), (3, b)]),
            },
        ];
        LieDatum::new(2, factors, generators)
    }
}

/// Structure of the subgroup of `Z/m_1 x ... x Z/m_r` generated by `gens`.
pub fn subgroup_structure(moduli: &[i64], gens: &[Vec<i64>]) -> FiniteAbelian {
    let r = moduli.len();
    if r == 0 || gens.is_empty() {
        return FiniteAbelian::trivial();
    }
    // L = span(gens, m_i e_i) = U^-1 diag(s) Z^r, and the subgroup is
    // L / M with M = diag(m) Z^r, isomorphic to coker(diag(s)^-1 U diag(m)).
    let mut rows = vec![Vec::with_capacity(gens.len() + r); r];
    for (i, row) in rows.iter_mut().enumerate() {
        row.extend(gens.iter().map(|g| g[i].rem_euclid(moduli[i])));
        row.extend((0..r).map(|j| if i == j { moduli[i] } else { 0 }));
    }
    let snf = smith_normal_form(&IntMatrix::from_rows(&rows).expect("rectangular"));
    let rel: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            let s = snf.s.get(i, i);
            (0..r)
                .map(|j| {
                    let x = snf.u.get(i, j) * moduli[j];
                    debug_assert_eq!(x % s, 0);
                    x / s
                })
                .collect()
        })
        .collect();
    quotient_structure(&rel)
}

/// Structure of `Z^r / (columns of rel)` for a full-rank square `rel`.
fn quotient_structure(rel: &[Vec<i64>]) -> FiniteAbelian {
    let snf = smith_normal_form(&IntMatrix::from_rows(rel).expect("rectangular"));
    let orders: Vec<u64> = snf.invariant_factors().iter().map(|&d| d.unsigned_abs()).collect();
    FiniteAbelian::from_cyclic_orders(&orders)
}

/// Structure of `(Z/m_1 x ... x Z/m_r) / <gens>`.
pub fn quotient_by(moduli: &[i64], gens: &[Vec<i64>]) -> FiniteAbelian {
    let r = moduli.len();
    if r == 0 {
        return FiniteAbelian::trivial();
    }
    let rows: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            gens.iter()
                .map(|g| g[i])
                .chain((0..r).map(|j| if i == j { moduli[i] } else { 0 }))
                .collect()
        })
        .collect();
    quotient_structure(&rows)
}

/// `Z(H)` as `T^torus_dim x finite`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieCenter {
    pub torus_dim: usize,
    pub finite: FiniteAbelian,
    pub delta0: FiniteAbelian,
}

/// `Z(H) = (T^z x Z(S)) / Delta`; its identity component is the image of
/// `T^z` and its component group is `Z(S) / Delta_S`.
pub fn lie_center(datum: &LieDatum) -> LieCenter {
    let gens: Vec<Vec<i64>> = datum.generators.iter().map(|g| g.simple.clone()).collect();
    LieCenter {
        torus_dim: datum.z,
        finite: quotient_by(&datum.moduli, &gens),
        delta0: datum.delta0(),
    }
}
