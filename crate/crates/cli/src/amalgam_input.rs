//! Amalgam specs, evaluation targets and length functions as JSON.
//!
//! ```json
//! {"schema": "bohrcheck/amalgam/v1",
//!  "amalgam": {"kind": "cyclic", "n": 2, "generator": "h"},
//!  "factors": [
//!    {"name": "A", "group": {"kind": "cyclic", "n": 4, "generator": "a"}, "injection": [["h", "a^2"]]},
//!    {"name": "B", "group": {"kind": "cyclic", "n": 6, "generator": "b"}, "injection": [["h", "b^3"]]}]}
//! ```
//!
//! Without `"amalgam"` the input describes a free product and injections are omitted.

use std::sync::Arc;

use anyhow::{bail, Context, Result};
use bohrcheck_core::amalgam::{images_from_generators, AmalgamSpec, FiniteTarget, LengthFunction, MatrixTarget};
use bohrcheck_core::group::FiniteGroup;
use bohrcheck_core::zmat::IntMatrix;
use num::Rational64;
use serde::Deserialize;

use crate::descriptor::{check_schema, ElementRef, GroupDescriptor};

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorInput {
    pub name: String,
    pub group: GroupDescriptor,
    #[serde(default)]
    pub injection: Option<Vec<(ElementRef, ElementRef)>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AmalgamInput {
    #[serde(default)]
    pub schema: Option<String>,
    #[serde(default)]
    pub amalgam: Option<GroupDescriptor>,
    pub factors: Vec<FactorInput>,
}

impl AmalgamInput {
    pub const SCHEMA: &'static str = "bohrcheck/amalgam/v1";

    pub fn build(&self) -> Result<AmalgamSpec> {
        check_schema(self.schema.as_deref(), Self::SCHEMA)?;
        let names: Vec<String> = self.factors.iter().map(|f| f.name.clone()).collect();
        let groups = self
            .factors
            .iter()
            .map(|f| f.group.build().with_context(|| format!("factor {}", f.name)))
            .collect::<Result<Vec<_>>>()?;
        let Some(amalgam) = &self.amalgam else {
            if self.factors.iter().any(|f| f.injection.is_some()) {
                bail!("injections need an \"amalgam\" group");
            }
            return Ok(AmalgamSpec::coproduct(groups, names)?);
        };
        let h = amalgam.build().context("amalgam group")?;
        let mut injections = Vec::with_capacity(groups.len());
        for (f, g) in self.factors.iter().zip(groups) {
            let images = f
                .injection
                .as_ref()
                .with_context(|| format!("factor {} has no injection", f.name))?;
            let pairs = images
                .iter()
                .map(|(s, t)| Ok((s.resolve(&h)?, t.resolve(&g)?)))
                .collect::<Result<Vec<_>>>()?;
            let hom = bohrcheck_core::group::GroupHom::from_generator_images(h.clone(), g, &pairs)
                .with_context(|| format!("injection into {}", f.name))?;
            injections.push(hom);
        }
        Ok(AmalgamSpec::with_names(h, injections, names)?)
    }
}

/// Per-factor homomorphisms into a common target, given on generators.
///
/// ```json
/// {"schema": "bohrcheck/amalgam-targets/v1",
///  "target": {"kind": "matrix", "dim": 2},
///  "images": [[["a", [[0, -1], [1, 0]]]], [["b", [[0, -1], [1, 1]]]]]}
/// ```
///
/// A `{"kind": "group", "group": <descriptor>}` target takes element
/// references as images instead of matrices.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetsInput {
    #[serde(default)]
    pub schema: Option<String>,
    pub target: TargetKind,
    pub images: Vec<Vec<(ElementRef, serde_json::Value)>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TargetKind {
    Matrix { dim: usize },
    Group { group: GroupDescriptor },
}

pub enum Targets {
    Matrix(MatrixTarget, Vec<Vec<IntMatrix>>),
    Group(FiniteTarget, Vec<Vec<usize>>),
}

impl TargetsInput {
    pub const SCHEMA: &'static str = "bohrcheck/amalgam-targets/v1";

    pub fn build(&self, spec: &AmalgamSpec) -> Result<Targets> {
        check_schema(self.schema.as_deref(), Self::SCHEMA)?;
        if self.images.len() != spec.factors().len() {
            bail!("{} image lists for {} factors", self.images.len(), spec.factors().len());
        }
        let sources = |i: usize| -> Result<Vec<usize>> {
            self.images[i].iter().map(|(s, _)| s.resolve(spec.factor(i))).collect()
        };
        match &self.target {
            TargetKind::Matrix { dim } => {
                let target = MatrixTarget { dim: *dim };
                let mut tables = Vec::new();
                for (i, gens) in self.images.iter().enumerate() {
                    let mut pairs = Vec::new();
                    for (s, (_, m)) in sources(i)?.into_iter().zip(gens) {
                        let m: IntMatrix = serde_json::from_value(m.clone()).context("matrix image")?;
                        if m.rows() != *dim || !m.is_square() {
                            bail!("image {m} is not {dim}x{dim}");
                        }
                        pairs.push((s, m));
                    }
                    tables.push(images_from_generators(spec.factor(i), &target, &pairs)?);
                }
                Ok(Targets::Matrix(target, tables))
            }
            TargetKind::Group { group } => {
                let g = group.build()?;
                let target = FiniteTarget(g.clone());
                let mut tables = Vec::new();
                for (i, gens) in self.images.iter().enumerate() {
                    let mut pairs = Vec::new();
                    for (s, (_, x)) in sources(i)?.into_iter().zip(gens) {
                        let x: ElementRef = serde_json::from_value(x.clone()).context("element image")?;
                        pairs.push((s, x.resolve(&g)?));
                    }
                    tables.push(images_from_generators(spec.factor(i), &target, &pairs)?);
                }
                Ok(Targets::Group(target, tables))
            }
        }
    }
}

/// Length functions for the free-product pseudometric, one per factor,
/// as decimal or `p/q` strings in element-index order.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LengthsInput {
    #[serde(default)]
    pub schema: Option<String>,
    pub values: Vec<Vec<String>>,
}

impl LengthsInput {
    pub const SCHEMA: &'static str = "bohrcheck/lengths/v1";

    pub fn build(&self, factors: &[Arc<FiniteGroup>]) -> Result<Vec<LengthFunction>> {
        check_schema(self.schema.as_deref(), Self::SCHEMA)?;
        if self.values.len() != factors.len() {
            bail!("{} length functions for {} factors", self.values.len(), factors.len());
        }
        factors
            .iter()
            .zip(&self.values)
            .map(|(g, vals)| {
                let vals = vals.iter().map(|v| parse_rational(v)).collect::<Result<Vec<_>>>()?;
                Ok(LengthFunction::new(g.clone(), vals)?)
            })
            .collect()
    }
}

pub fn parse_rational(s: &str) -> Result<Rational64> {
    s.trim().parse::<Rational64>().with_context(|| format!("{s:?} is not a rational number"))
}
