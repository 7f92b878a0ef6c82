use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::table::{shared_prime, CharacterTable};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupHom};

/// Restriction data for an injective homomorphism `H -> G`, with both
/// tables computed modulo the same prime.
#[derive(Clone, Debug)]
pub struct RestrictionTable {
    emb: GroupHom,
    h_table: CharacterTable,
    g_table: CharacterTable,
    fusion: Vec<usize>,
    multiplicities: Vec<Vec<u64>>,
}

impl RestrictionTable {
    pub fn new(emb: &GroupHom) -> Result<Self> {
        let p = shared_prime(&[emb.source(), emb.target()])?;
        let h_table = CharacterTable::with_prime(emb.source().clone(), p)?;
        let g_table = CharacterTable::with_prime(emb.target().clone(), p)?;
        Self::with_tables(emb, h_table, g_table)
    }

    pub fn with_tables(emb: &GroupHom, h_table: CharacterTable, g_table: CharacterTable) -> Result<Self> {
        if !emb.is_injective() {
            return Err(Error::NotInjective);
        }
        if h_table.prime() != g_table.prime() {
            return Err(Error::Invalid("restriction tables use different primes".into()));
        }
        if !h_table.group().same_table(emb.source()) || !g_table.group().same_table(emb.target()) {
            return Err(Error::SourceMismatch);
        }
        let fusion: Vec<usize> = h_table
            .class_reps()
            .iter()
            .map(|&h| g_table.classes().class_of[emb.apply(h)])
            .collect();
        let mut rt = RestrictionTable {
            emb: emb.clone(),
            h_table,
            g_table,
            fusion,
            multiplicities: Vec::new(),
        };
        let mut mults = Vec::with_capacity(rt.g_table.len());
        for pi in 0..rt.g_table.len() {
            let res = rt.restricted_values(pi);
            let row = rt
                .h_table
                .decompose(&res)
                .into_iter()
                .map(|m| u64::try_from(m).map_err(|_| Error::CharacterTable("negative restriction multiplicity".into())))
                .collect::<Result<Vec<u64>>>()?;
            mults.push(row);
        }
        rt.multiplicities = mults;
        Ok(rt)
    }

    pub fn embedding(&self) -> &GroupHom {
        &self.emb
    }

    pub fn h_table(&self) -> &CharacterTable {
        &self.h_table
    }

    pub fn g_table(&self) -> &CharacterTable {
        &self.g_table
    }

    /// Values of `pi|_H` on the classes of `H`.
    pub fn restricted_values(&self, pi: usize) -> Vec<u64> {
        self.fusion.iter().map(|&c| self.g_table.row(pi)[c]).collect()
    }

    /// `<pi|_H, rho>`.
    pub fn multiplicity(&self, pi: usize, rho: usize) -> u64 {
        self.multiplicities[pi][rho]
    }

    pub fn multiplicity_row(&self, pi: usize) -> &[u64] {
        &self.multiplicities[pi]
    }

    /// `<pi0|_H, pi1|_H>` computed from restricted values.
    pub fn restricted_inner(&self, pi0: usize, pi1: usize) -> i64 {
        self.h_table
            .inner_product(&self.restricted_values(pi0), &self.restricted_values(pi1))
    }

    /// First irreducible of `G` whose restriction is reducible, otherwise the
    /// first pair of irreducibles with equal restrictions.
    pub fn equalizer_witness(&self) -> Result<EqualizerWitness> {
        if !self.emb.is_proper() {
            return Err(Error::NotProper);
        }
        let n = self.g_table.len();
        for pi in 0..n {
            let s = self.restricted_inner(pi, pi);
            if s >= 2 {
                return Ok(EqualizerWitness::Split {
                    pi,
                    self_inner_product: s as u64,
                });
            }
        }
        for pi0 in 0..n {
            for pi1 in pi0 + 1..n {
                let a = self.restricted_inner(pi0, pi0);
                let b = self.restricted_inner(pi1, pi1);
                let c = self.restricted_inner(pi0, pi1);
                if a + b - 2 * c == 0 {
                    return Ok(EqualizerWitness::Collision { pi0, pi1 });
                }
            }
        }
        Err(Error::CharacterTable("proper subgroup without an equalizer witness".into()))
    }
}

pub fn restriction_multiplicity(pi: usize, rho: usize, emb: &GroupHom) -> Result<u64> {
    let rt = RestrictionTable::new(emb)?;
    if pi >= rt.g_table.len() || rho >= rt.h_table.len() {
        return Err(Error::Invalid("character index out of range".into()));
    }
    Ok(rt.multiplicity(pi, rho))
}

/// Evidence that restriction to a proper subgroup is not a bijection on
/// irreducibles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EqualizerWitness {
    Split { pi: usize, self_inner_product: u64 },
    Collision { pi0: usize, pi1: usize },
}

impl EqualizerWitness {
    pub fn verify(&self, rt: &RestrictionTable) -> bool {
        match *self {
            EqualizerWitness::Split { pi, self_inner_product } => {
                self_inner_product >= 2 && rt.restricted_inner(pi, pi) == self_inner_product as i64
            }
            EqualizerWitness::Collision { pi0, pi1 } => {
                pi0 != pi1 && {
                    let (a, b) = (rt.restricted_values(pi0), rt.restricted_values(pi1));
                    rt.h_table.same_class_function(&a, &b)
                }
            }
        }
    }
}

pub fn equalizer_witness(emb: &GroupHom) -> Result<EqualizerWitness> {
    if !emb.is_injective() {
        return Err(Error::NotInjective);
    }
    if !emb.is_proper() {
        return Err(Error::NotProper);
    }
    RestrictionTable::new(emb)?.equalizer_witness()
}

/// Clifford data of one irreducible of the common normal subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliffordReport {
    pub rho: usize,
    pub class_members: Vec<usize>,
    pub class_size: usize,
    pub per_member_multiplicity: BTreeMap<usize, u64>,
    /// Largest per-member multiplicity; absent for an empty family.
    pub sup_multiplicity: Option<u64>,
    /// The per-member multiplicities strictly increase along the family.
    pub growing: bool,
}

/// A family of normal embeddings `H -> G_i` of one finite group, with all
/// tables computed modulo a common prime so that irreducibles of `H` are
/// indexed consistently.
#[derive(Clone, Debug)]
pub struct CliffordFamily {
    h_table: CharacterTable,
    members: Vec<RestrictionTable>,
    /// Per member, the permutations of `Irr(H)` induced by conjugation with
    /// generators of `G_i`.
    actions: Vec<Vec<Vec<usize>>>,
}

impl CliffordFamily {
    pub fn new(source: Arc<FiniteGroup>, embeddings: &[GroupHom]) -> Result<Self> {
        for emb in embeddings {
            if !emb.source().same_table(&source) {
                return Err(Error::SourceMismatch);
            }
            if !emb.is_injective() {
                return Err(Error::NotInjective);
            }
            if !emb.is_normal() {
                return Err(Error::NotNormal);
            }
        }
        let mut groups: Vec<&FiniteGroup> = vec![&source];
        groups.extend(embeddings.iter().map(|e| e.target().as_ref()));
        let p = shared_prime(&groups)?;
        let h_table = CharacterTable::with_prime(source, p)?;
        let mut members = Vec::with_capacity(embeddings.len());
        let mut actions = Vec::with_capacity(embeddings.len());
        for emb in embeddings {
            let g_table = CharacterTable::with_prime(emb.target().clone(), p)?;
            let rt = RestrictionTable::with_tables(emb, h_table.clone(), g_table)?;
            actions.push(conjugation_action(&h_table, emb)?);
            members.push(rt);
        }
        Ok(CliffordFamily {
            h_table,
            members,
            actions,
        })
    }

    pub fn h_table(&self) -> &CharacterTable {
        &self.h_table
    }

    pub fn members(&self) -> &[RestrictionTable] {
        &self.members
    }

    /// Orbit of `rho` under conjugation by all members of the family.
    pub fn clifford_class(&self, rho: usize) -> Vec<usize> {
        self.clifford_class_in(rho, &(0..self.members.len()).collect::<Vec<_>>())
    }

    /// Orbit of `rho` under conjugation by the selected members only.
    pub fn clifford_class_in(&self, rho: usize, members: &[usize]) -> Vec<usize> {
        let mut seen = BTreeSet::from([rho]);
        let mut queue = VecDeque::from([rho]);
        while let Some(x) = queue.pop_front() {
            for &m in members {
                for perm in &self.actions[m] {
                    if seen.insert(perm[x]) {
                        queue.push_back(perm[x]);
                    }
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Smallest positive `<pi|_H, rho>` over irreducibles `pi` of member `i`.
    pub fn clifford_multiplicity(&self, rho: usize, member: usize) -> u64 {
        let rt = &self.members[member];
        (0..rt.g_table.len())
            .map(|pi| rt.multiplicity(pi, rho))
            .filter(|&m| m > 0)
            .min()
            .expect("every irreducible of a subgroup occurs in some restriction")
    }

    pub fn report(&self, rho: usize) -> CliffordReport {
        let class_members = self.clifford_class(rho);
        let per_member_multiplicity: BTreeMap<usize, u64> = (0..self.members.len())
            .map(|i| (i, self.clifford_multiplicity(rho, i)))
            .collect();
        let profile: Vec<u64> = per_member_multiplicity.values().copied().collect();
        CliffordReport {
            rho,
            class_size: class_members.len(),
            class_members,
            sup_multiplicity: profile.iter().copied().max(),
            growing: profile.len() >= 2 && profile.windows(2).all(|w| w[0] < w[1]),
            per_member_multiplicity,
        }
    }

    pub fn fin_check(&self) -> Vec<CliffordReport> {
        (0..self.h_table.len()).map(|rho| self.report(rho)).collect()
    }
}

fn conjugation_action(h_table: &CharacterTable, emb: &GroupHom) -> Result<Vec<Vec<usize>>> {
    let g = emb.target();
    let back = emb.inverse_map();
    let reps = h_table.class_reps();
    let class_of = &h_table.classes().class_of;
    let mut perms = Vec::new();
    for x in g.generators() {
        // class c of H goes to the class of x^-1 c x, so rho^x(c) = rho(x c x^-1)
        let moved: Vec<usize> = reps
            .iter()
            .map(|&h| {
                let img = g.conjugate(x, emb.apply(h));
                back[img].map(|y| class_of[y]).ok_or(Error::NotNormal)
            })
            .collect::<Result<_>>()?;
        let perm = (0..h_table.len())
            .map(|rho| {
                let values: Vec<u64> = moved.iter().map(|&c| h_table.row(rho)[c]).collect();
                h_table
                    .irreducible_index(&values)
                    .ok_or_else(|| Error::CharacterTable("conjugate of an irreducible is not irreducible".into()))
            })
            .collect::<Result<Vec<usize>>>()?;
        perms.push(perm);
    }
    Ok(perms)
}

pub fn clifford_class(rho: usize, family: &CliffordFamily) -> Vec<usize> {
    family.clifford_class(rho)
}

pub fn clifford_multiplicity(rho: usize, emb: &GroupHom) -> Result<u64> {
    let family = CliffordFamily::new(emb.source().clone(), std::slice::from_ref(emb))?;
    if rho >= family.h_table.len() {
        return Err(Error::Invalid("character index out of range".into()));
    }
    Ok(family.clifford_multiplicity(rho, 0))
}

pub fn fin_check(source: Arc<FiniteGroup>, embeddings: &[GroupHom]) -> Result<Vec<CliffordReport>> {
    Ok(CliffordFamily::new(source, embeddings)?.fin_check())
}

/// Characters of `G` and `K` of equal degree, the first restricting to a
/// character containing the prescribed one on `H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionWitness {
    pub phi_g: Vec<u64>,
    pub phi_k: Vec<u64>,
    pub degree: u64,
}

/// Extends `phi_h` (multiplicities over `Irr(H)`) to a character of `G`
/// whose restriction contains it, and pads `phi_k` (over `Irr(K)`) with
/// trivial characters to the same degree.
pub fn coproduct_extension(
    phi_h: &[u64],
    k_table: &CharacterTable,
    phi_k: &[u64],
    restriction: &RestrictionTable,
) -> Result<ExtensionWitness> {
    let h_table = restriction.h_table();
    let g_table = restriction.g_table();
    if phi_h.len() != h_table.len() {
        return Err(Error::DimensionMismatch {
            expected: h_table.len(),
            found: phi_h.len(),
        });
    }
    if phi_k.len() != k_table.len() {
        return Err(Error::DimensionMismatch {
            expected: k_table.len(),
            found: phi_k.len(),
        });
    }
    let (dh, dk) = (h_table.degree_of(phi_h), k_table.degree_of(phi_k));
    if dh != dk {
        return Err(Error::DegreeMismatch { left: dh, right: dk });
    }
    let mut covered = vec![0u64; h_table.len()];
    let mut phi_g = vec![0u64; g_table.len()];
    while let Some(rho) = (0..phi_h.len()).find(|&r| covered[r] < phi_h[r]) {
        let pi = (0..g_table.len())
            .find(|&pi| restriction.multiplicity(pi, rho) > 0)
            .expect("every irreducible of a subgroup occurs in some restriction");
        phi_g[pi] += 1;
        for (c, &m) in covered.iter_mut().zip(restriction.multiplicity_row(pi)) {
            *c += m;
        }
    }
    let degree = g_table.degree_of(&phi_g).max(dh);
    if degree > g_table.degree_of(&phi_g) {
        phi_g[0] += degree - g_table.degree_of(&phi_g);
    }
    let mut phi_k = phi_k.to_vec();
    phi_k[0] += degree - dk;
    Ok(ExtensionWitness { phi_g, phi_k, degree })
}
