//! Finite groups given by multiplication tables.
//!
//! Elements are dense indices `0..order` with the identity at index 0. All
//! higher layers (character tables, amalgam word machines) address elements
//! by these indices.

mod abelian;
mod construct;
mod torus;

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub use abelian::{is_prime, FiniteAbelian};
pub use construct::{
    alternating, cyclic, cyclic_named, dihedral, direct_product, heisenberg, semidirect,
    symmetric, validate_action, Heisenberg, Semidirect, HEISENBERG_MAX_I,
};
pub use torus::TorusPoint;

/// Orders up to this bound have their group axioms checked exhaustively.
pub const EXHAUSTIVE_VALIDATION_LIMIT: usize = 512;
const SAMPLED_VALIDATION_SEED: u64 = 0x0b0f_5eed;

/// A finite group stored as a dense multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    labels: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Builds a group from a square table `table[a][b] = a*b`.
    ///
    /// The identity is relocated to index 0 if it sits elsewhere; the element
    /// that previously occupied index 0 takes its place.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self> {
        Self::from_table_labeled(table, None)
    }

    pub fn from_table_labeled(table: &[Vec<usize>], labels: Option<Vec<String>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::MalformedTable("empty table".into()));
        }
        if n > u32::MAX as usize {
            return Err(Error::SizeLimit {
                what: "group order",
                value: n as u128,
                limit: u32::MAX as u128,
            });
        }
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(Error::MalformedTable(format!(
                    "{} labels for {} elements",
                    l.len(),
                    n
                )));
            }
        }
        let mut mul = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedTable(format!(
                    "row {i} has length {} (expected {n})",
                    row.len()
                )));
            }
            for &x in row {
                if x >= n {
                    return Err(Error::MalformedTable(format!("entry {x} out of range in row {i}")));
                }
                mul.push(x as u32);
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| mul[e * n + x] as usize == x && mul[x * n + e] as usize == x))
            .ok_or(Error::NoIdentity)?;
        let (mul, labels) = if e == 0 {
            (mul, labels)
        } else {
            let swap = |x: usize| -> usize {
                if x == 0 {
                    e
                } else if x == e {
                    0
                } else {
                    x
                }
            };
            let mut relocated = vec![0u32; n * n];
            for a in 0..n {
                for b in 0..n {
                    relocated[a * n + b] = swap(mul[swap(a) * n + swap(b)] as usize) as u32;
                }
            }
            let labels = labels.map(|mut l| {
                l.swap(0, e);
                l
            });
            (relocated, labels)
        };
        Self::from_flat(n, mul, labels)
    }

    /// Validates a flat table whose identity already sits at index 0.
    pub(crate) fn from_flat(order: usize, mul: Vec<u32>, labels: Option<Vec<String>>) -> Result<Self> {
        debug_assert_eq!(mul.len(), order * order);
        for x in 0..order {
            if mul[x] as usize != x || mul[x * order] as usize != x {
                return Err(Error::NoIdentity);
            }
        }
        let mut inv = vec![u32::MAX; order];
        for a in 0..order {
            let row = &mul[a * order..(a + 1) * order];
            let b = row.iter().position(|&x| x == 0).ok_or(Error::NoInverse(a))?;
            if mul[b * order + a] != 0 {
                return Err(Error::NoInverse(a));
            }
            inv[a] = b as u32;
        }
        let g = FiniteGroup {
            order,
            mul,
            inv,
            labels,
        };
        g.check_associativity()?;
        Ok(g)
    }

    fn check_associativity(&self) -> Result<()> {
        let n = self.order;
        if n <= EXHAUSTIVE_VALIDATION_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    let row_ab = &self.mul[ab * n..(ab + 1) * n];
                    for c in 0..n {
                        if row_ab[c] as usize != self.mul(a, self.mul(b, c)) {
                            return Err(Error::NonAssociative { a, b, c });
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(SAMPLED_VALIDATION_SEED);
            for _ in 0..10 * n * n {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                    return Err(Error::NonAssociative { a, b, c });
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `g x g^-1`.
    #[inline]
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn product<I: IntoIterator<Item = usize>>(&self, elements: I) -> usize {
        elements.into_iter().fold(0, |acc, x| self.mul(acc, x))
    }

    pub fn pow(&self, g: usize, mut k: u64) -> usize {
        let (mut base, mut acc) = (g, 0);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, g: usize) -> String {
        match &self.labels {
            Some(l) => l[g].clone(),
            None => g.to_string(),
        }
    }

    /// Resolves an element reference: a label if labels exist, else (or
    /// failing that) a decimal index.
    pub fn find_element(&self, reference: &str) -> Option<usize> {
        if let Some(l) = &self.labels {
            if let Some(i) = l.iter().position(|s| s == reference) {
                return Some(i);
            }
        }
        reference.parse::<usize>().ok().filter(|&i| i < self.order)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.order {
            return Err(Error::MalformedTable(format!(
                "{} labels for {} elements",
                labels.len(),
                self.order
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// The multiplication table as nested vectors.
    /// Equality of multiplication tables, ignoring labels.
    pub fn same_table(&self, other: &FiniteGroup) -> bool {
        self.mul == other.mul
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> u64 {
        (0..self.order).fold(1u64, |acc, g| num::integer::lcm(acc, self.element_order(g) as u64))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// A small generating set, chosen greedily in index order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![false; self.order];
        span[0] = true;
        let mut covered = 1;
        for g in 1..self.order {
            if !span[g] {
                gens.push(g);
                let closure = self.closure(&gens);
                covered = closure.len();
                span.iter_mut().for_each(|s| *s = false);
                for x in closure {
                    span[x] = true;
                }
            }
            if covered == self.order {
                break;
            }
        }
        gens
    }

    /// Sorted element list of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order).filter(|&i| seen[i]).collect()
    }

    pub fn subgroup_generated(&self, gens: &[usize]) -> Subgroup {
        Subgroup {
            elements: self.closure(gens),
        }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            elements: (0..self.order).collect(),
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { elements: vec![0] }
    }

    pub fn conjugacy_classes(&self) -> ConjugacyClasses {
        let gens = self.generators();
        let mut class_of = vec![usize::MAX; self.order];
        let mut classes = Vec::new();
        for x in 0..self.order {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            class_of[x] = id;
            let mut members = vec![x];
            let mut queue = VecDeque::from([x]);
            while let Some(y) = queue.pop_front() {
                for &g in &gens {
                    let z = self.conjugate(g, y);
                    if class_of[z] == usize::MAX {
                        class_of[z] = id;
                        members.push(z);
                        queue.push_back(z);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        ConjugacyClasses { classes, class_of }
    }

    pub fn center(&self) -> Subgroup {
        let gens = self.generators();
        Subgroup {
            elements: (0..self.order)
                .filter(|&z| gens.iter().all(|&g| self.mul(g, z) == self.mul(z, g)))
                .collect(),
        }
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let mut comms = BTreeSet::new();
        for a in 0..self.order {
            for b in 0..self.order {
                let c = self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)));
                comms.insert(c);
            }
        }
        let comms: Vec<usize> = comms.into_iter().collect();
        self.subgroup_generated(&comms)
    }

    /// Every subgroup, as sorted element lists, ordered by (order, elements).
    pub fn all_subgroups(&self) -> Result<Vec<Subgroup>> {
        const LIMIT: usize = 256;
        if self.order > LIMIT {
            return Err(Error::SizeLimit {
                what: "group order for subgroup enumeration",
                value: self.order as u128,
                limit: LIMIT as u128,
            });
        }
        let mut cyclic: Vec<Vec<usize>> = (0..self.order).map(|g| self.closure(&[g])).collect();
        cyclic.sort();
        cyclic.dedup();
        let mut seen: HashSet<Vec<usize>> = cyclic.iter().cloned().collect();
        let mut frontier = cyclic.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for s in &frontier {
                for c in &cyclic {
                    if c.iter().all(|x| s.binary_search(x).is_ok()) {
                        continue;
                    }
                    let gens: Vec<usize> = s.iter().chain(c.iter()).copied().collect();
                    let j = self.closure(&gens);
                    if seen.insert(j.clone()) {
                        next.push(j);
                    }
                }
            }
            frontier = next;
        }
        let mut all: Vec<Vec<usize>> = seen.into_iter().collect();
        all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(all.into_iter().map(|elements| Subgroup { elements }).collect())
    }

    /// Isomorphism-invariant fingerprint: sorted class sizes and sorted
    /// element orders.
    pub fn signature(&self) -> (Vec<usize>, Vec<usize>) {
        let mut sizes: Vec<usize> = self.conjugacy_classes().classes.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        let mut orders: Vec<usize> = (0..self.order).map(|g| self.element_order(g)).collect();
        orders.sort_unstable();
        (sizes, orders)
    }

    /// Canonical hash: order plus the SHA-256 digest of the table.
    pub fn canonical_hash(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update((self.order as u64).to_le_bytes());
        for &x in &self.mul {
            hasher.update(x.to_le_bytes());
        }
        let digest = hasher.finalize();
        format!("{}-{}", self.order, hex::encode(&digest[..12]))
    }
}

/// Partition of a group into conjugacy classes, ordered by smallest member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClasses {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn representative(&self, class: usize) -> usize {
        self.classes[class][0]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

/// A subgroup handle: the sorted index set of its elements inside the
/// ambient group. Position `i` in `elements` is the subgroup-local index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn new(group: &FiniteGroup, elements: &[usize]) -> Result<Self> {
        let mut elements = elements.to_vec();
        elements.sort_unstable();
        elements.dedup();
        if elements.first() != Some(&0) || elements.iter().any(|&x| x >= group.order()) {
            return Err(Error::NotASubgroup { a: 0, b: 0 });
        }
        let s = Subgroup { elements };
        for &a in &s.elements {
            for &b in &s.elements {
                if !s.contains(group.mul(a, b)) {
                    return Err(Error::NotASubgroup { a, b });
                }
            }
        }
        Ok(s)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn local_index(&self, g: usize) -> Option<usize> {
        self.elements.binary_search(&g).ok()
    }

    pub fn is_normal_in(&self, group: &FiniteGroup) -> bool {
        let gens = group.generators();
        self.elements
            .iter()
            .all(|&h| gens.iter().all(|&g| self.contains(group.conjugate(g, h))))
    }

    /// Materializes the subgroup as its own table together with the
    /// inclusion homomorphism.
    pub fn materialize(&self, group: &Arc<FiniteGroup>) -> Result<(Arc<FiniteGroup>, GroupHom)> {
        let n = self.order();
        let mut mul = Vec::with_capacity(n * n);
        for &a in &self.elements {
            for &b in &self.elements {
                let ab = group.mul(a, b);
                let i = self.local_index(ab).ok_or(Error::NotASubgroup { a, b })?;
                mul.push(i as u32);
            }
        }
        let labels = group
            .labels()
            .map(|l| self.elements.iter().map(|&g| l[g].clone()).collect());
        let sub = Arc::new(FiniteGroup::from_flat(n, mul, labels)?);
        let hom = GroupHom {
            source: sub.clone(),
            target: group.clone(),
            map: self.elements.clone(),
        };
        Ok((sub, hom))
    }
}

/// Checks whether `subgroup` is normal in `group`.
pub fn is_normal(subgroup: &Subgroup, group: &FiniteGroup) -> Result<bool> {
    let checked = Subgroup::new(group, subgroup.elements())?;
    Ok(checked.is_normal_in(group))
}

/// A homomorphism between finite groups, stored as an index map.
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    map: Vec<usize>,
}

impl GroupHom {
    pub fn new(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.order() || map.iter().any(|&x| x >= target.order()) {
            return Err(Error::Invalid("homomorphism map has wrong length or range".into()));
        }
        for a in 0..source.order() {
            for b in 0..source.order() {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(Error::NotAHomomorphism { a, b });
                }
            }
        }
        Ok(GroupHom { source, target, map })
    }

    /// Extends prescribed images of generators to a homomorphism. Fails if
    /// the assignment is inconsistent or the listed elements do not generate.
    pub fn from_generator_images(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        images: &[(usize, usize)],
    ) -> Result<Self> {
        let mut map = vec![usize::MAX; source.order()];
        map[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &(s, t) in images {
                let y = source.mul(x, s);
                let fy = target.mul(map[x], t);
                if map[y] == usize::MAX {
                    map[y] = fy;
                    queue.push_back(y);
                } else if map[y] != fy {
                    return Err(Error::NotAHomomorphism { a: x, b: s });
                }
            }
        }
        if map.contains(&usize::MAX) {
            return Err(Error::Invalid("listed elements do not generate the source group".into()));
        }
        GroupHom::new(source, target, map)
    }

    pub fn identity(group: Arc<FiniteGroup>) -> Self {
        let map = (0..group.order()).collect();
        GroupHom {
            source: group.clone(),
            target: group,
            map,
        }
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    #[inline]
    pub fn apply(&self, g: usize) -> usize {
        self.map[g]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn kernel(&self) -> Subgroup {
        Subgroup {
            elements: (0..self.source.order()).filter(|&g| self.map[g] == 0).collect(),
        }
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().order() == 1
    }

    pub fn image(&self) -> Subgroup {
        let mut elements = self.map.clone();
        elements.sort_unstable();
        elements.dedup();
        Subgroup { elements }
    }

    pub fn is_normal(&self) -> bool {
        self.image().is_normal_in(&self.target)
    }

    pub fn is_proper(&self) -> bool {
        self.image().order() < self.target.order()
    }

    /// Preimage map for an injective homomorphism (target index -> source).
    pub fn inverse_map(&self) -> Vec<Option<usize>> {
        let mut inv = vec![None; self.target.order()];
        for (g, &t) in self.map.iter().enumerate() {
            inv[t] = Some(g);
        }
        inv
    }
}
