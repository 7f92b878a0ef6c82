//! Compact connected Lie groups `H = (T^z x S) / Delta` as JSON.
//!
//! ```json
//! {"schema": "bohrcheck/lie-datum/v1",
//!  "z": 2, "factors": ["A26", "A8"],
//!  "delta": {"simple_part_generators": [[1, 0], [0, 1]],
//!            "phi_images": [[[1, 27], [0, 1]], [[1, 9], [3, 9]]]}}
//! ```
//!
//! Each generator of `Delta` is a vector in the simple center (one entry per
//! cyclic summand, factors in order) together with its image in `T^z` as
//! `z` fractions `[num, den]`.

use anyhow::{bail, Result};
use bohrcheck_core::group::TorusPoint;
use bohrcheck_core::lie::{DeltaGenerator, LieDatum, SimpleType};
use serde::Deserialize;

use crate::descriptor::check_schema;

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeltaInput {
    pub simple_part_generators: Vec<Vec<i64>>,
    pub phi_images: Vec<Vec<(i64, i64)>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieDatumInput {
    #[serde(default)]
    pub schema: Option<String>,
    pub z: usize,
    pub factors: Vec<SimpleType>,
    #[serde(default)]
    pub delta: DeltaInput,
}

impl LieDatumInput {
    pub const SCHEMA: &'static str = "bohrcheck/lie-datum/v1";

    pub fn build(&self) -> Result<LieDatum> {
        check_schema(self.schema.as_deref(), Self::SCHEMA)?;
        let d = &self.delta;
        if d.simple_part_generators.len() != d.phi_images.len() {
            bail!(
                "{} simple parts but {} torus images",
                d.simple_part_generators.len(),
                d.phi_images.len()
            );
        }
        let mut generators = Vec::with_capacity(d.phi_images.len());
        for (simple, image) in d.simple_part_generators.iter().zip(&d.phi_images) {
            if image.len() != self.z {
                bail!("torus image {image:?} does not have {} coordinates", self.z);
            }
            if image.iter().any(|&(_, den)| den <= 0) {
                bail!("torus image {image:?} has a non-positive denominator");
            }
            generators.push(DeltaGenerator {
                simple: simple.clone(),
                torus: TorusPoint::from_fractions(image),
            });
        }
        Ok(LieDatum::new(self.z, self.factors.clone(), generators)?)
    }
}
