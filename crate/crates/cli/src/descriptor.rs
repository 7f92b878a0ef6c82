//! JSON descriptors for finite groups, elements, embeddings and matrices.
//!
//! A group descriptor is an object tagged by `"kind"`:
//!
//! | kind             | fields                                                     |
//! |------------------|------------------------------------------------------------|
//! | `cyclic`         | `n`, optional `generator` label                            |
//! | `dihedral`       | `n` (order `2n`)                                           |
//! | `symmetric`      | `n`                                                        |
//! | `alternating`    | `n`                                                        |
//! | `heisenberg`     | `i` (unipotent 3x3 matrices over `Z/2^i`)                  |
//! | `direct_product` | `left`, `right`                                            |
//! | `semidirect`     | `normal`, `acting`, `action`: `[[acting_gen, [images]]]`   |
//! | `table`          | `table` (row-major, identity at 0), optional `labels`      |
//!
//! Elements are referenced by index or by label. In a `semidirect`
//! descriptor each acting generator lists the image of every element of the
//! normal group, in index order.

use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use bohrcheck_core::amalgam::{images_from_generators, TargetGroup};
use bohrcheck_core::group::{
    alternating, cyclic_named, dihedral, direct_product, heisenberg, semidirect, symmetric, FiniteGroup, GroupHom,
};
use serde::Deserialize;

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum ElementRef {
    Index(usize),
    Label(String),
}

impl ElementRef {
    pub fn resolve(&self, group: &FiniteGroup) -> Result<usize> {
        match self {
            ElementRef::Index(i) if *i < group.order() => Ok(*i),
            ElementRef::Index(i) => bail!("element index {i} is out of range for a group of order {}", group.order()),
            ElementRef::Label(s) => group
                .find_element(s)
                .ok_or_else(|| anyhow!("no element {s:?} in a group of order {}", group.order())),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupDescriptor {
    Cyclic {
        n: usize,
        #[serde(default)]
        generator: Option<String>,
    },
    Dihedral {
        n: usize,
    },
    Symmetric {
        n: usize,
    },
    Alternating {
        n: usize,
    },
    Heisenberg {
        i: u32,
    },
    DirectProduct {
        left: Box<GroupDescriptor>,
        right: Box<GroupDescriptor>,
    },
    Semidirect {
        normal: Box<GroupDescriptor>,
        acting: Box<GroupDescriptor>,
        action: Vec<(ElementRef, Vec<ElementRef>)>,
    },
    Table {
        table: Vec<Vec<usize>>,
        #[serde(default)]
        labels: Option<Vec<String>>,
    },
}

/// Automorphisms of a finite set of `degree` points, composed as maps.
struct MapTarget {
    degree: usize,
}

impl TargetGroup for MapTarget {
    type Element = Vec<usize>;

    fn identity(&self) -> Vec<usize> {
        (0..self.degree).collect()
    }

    fn mul(&self, a: &Vec<usize>, b: &Vec<usize>) -> Vec<usize> {
        b.iter().map(|&x| a[x]).collect()
    }
}

/// Extends per-generator image vectors to the full action table of `acting`
/// on `normal`.
pub fn action_table(
    normal: &FiniteGroup,
    acting: &FiniteGroup,
    action: &[(ElementRef, Vec<ElementRef>)],
) -> Result<Vec<Vec<usize>>> {
    let mut gens = Vec::with_capacity(action.len());
    for (g, images) in action {
        if images.len() != normal.order() {
            bail!(
                "an action generator lists {} images for a group of order {}",
                images.len(),
                normal.order()
            );
        }
        let images = images.iter().map(|x| x.resolve(normal)).collect::<Result<Vec<_>>>()?;
        gens.push((g.resolve(acting)?, images));
    }
    Ok(images_from_generators(acting, &MapTarget { degree: normal.order() }, &gens)?)
}

impl GroupDescriptor {
    pub fn build(&self) -> Result<Arc<FiniteGroup>> {
        let g = match self {
            GroupDescriptor::Cyclic { n, generator } => cyclic_named(*n, generator.as_deref().unwrap_or("g"))?,
            GroupDescriptor::Dihedral { n } => dihedral(*n)?,
            GroupDescriptor::Symmetric { n } => symmetric(*n)?,
            GroupDescriptor::Alternating { n } => alternating(*n)?,
            GroupDescriptor::Heisenberg { i } => return Ok(heisenberg(*i)?.group),
            GroupDescriptor::DirectProduct { left, right } => direct_product(&*left.build()?, &*right.build()?)?,
            GroupDescriptor::Semidirect { normal, acting, action } => {
                let (n, a) = (normal.build()?, acting.build()?);
                let table = action_table(&n, &a, action).context("semidirect action")?;
                return Ok(semidirect(n, a, &table)?.group);
            }
            GroupDescriptor::Table { table, labels } => FiniteGroup::from_table_labeled(table, labels.clone())?,
        };
        Ok(Arc::new(g))
    }
}

/// How a subgroup sits inside an overgroup.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum EmbeddingDescriptor {
    /// Images of a generating set of the source.
    GeneratorImages { images: Vec<(ElementRef, ElementRef)> },
    /// The source has order 2 and goes to the unique central involution.
    CentralInvolution,
}

impl EmbeddingDescriptor {
    pub fn build(&self, source: Arc<FiniteGroup>, target: Arc<FiniteGroup>) -> Result<GroupHom> {
        match self {
            EmbeddingDescriptor::GeneratorImages { images } => {
                let pairs = images
                    .iter()
                    .map(|(s, t)| Ok((s.resolve(&source)?, t.resolve(&target)?)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(GroupHom::from_generator_images(source, target, &pairs)?)
            }
            EmbeddingDescriptor::CentralInvolution => {
                if source.order() != 2 {
                    bail!("central_involution needs a source of order 2, got {}", source.order());
                }
                let involutions: Vec<usize> = target
                    .center()
                    .elements()
                    .iter()
                    .copied()
                    .filter(|&z| target.element_order(z) == 2)
                    .collect();
                match involutions[..] {
                    [z] => Ok(GroupHom::new(source, target, vec![0, z])?),
                    _ => bail!("the target has {} central involutions, expected exactly one", involutions.len()),
                }
            }
        }
    }
}

/// A subgroup of a group: either generated inside it or given as a separate
/// group with an embedding.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubgroupDescriptor {
    #[serde(default)]
    pub schema: Option<String>,
    pub group: GroupDescriptor,
    #[serde(default)]
    pub generators: Option<Vec<ElementRef>>,
    #[serde(default)]
    pub subgroup: Option<GroupDescriptor>,
    #[serde(default)]
    pub embedding: Option<EmbeddingDescriptor>,
}

impl SubgroupDescriptor {
    pub const SCHEMA: &'static str = "bohrcheck/subgroup/v1";

    pub fn build(&self) -> Result<GroupHom> {
        check_schema(self.schema.as_deref(), Self::SCHEMA)?;
        let group = self.group.build()?;
        match (&self.generators, &self.subgroup, &self.embedding) {
            (Some(gens), None, None) => {
                let gens = gens.iter().map(|g| g.resolve(&group)).collect::<Result<Vec<_>>>()?;
                let (_, hom) = group.subgroup_generated(&gens).materialize(&group)?;
                Ok(hom)
            }
            (None, Some(sub), Some(emb)) => emb.build(sub.build()?, group),
            _ => bail!("give either `generators`, or both `subgroup` and `embedding`"),
        }
    }
}

pub fn check_schema(found: Option<&str>, expected: &str) -> Result<()> {
    match found {
        Some(s) if s != expected => bail!("schema {s:?} does not match the expected {expected:?}"),
        _ => Ok(()),
    }
}
