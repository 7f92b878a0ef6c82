//! Soundness requests: a family of embeddings of a common compact group,
//! dispatched by kind to the matching decision procedure.
//!
//! ```json
//! {"schema": "bohrcheck/soundness-request/v1",
//!  "family": {"kind": "torus", "dim": 2,
//!             "members": [{"generators": [[[0, -1], [1, 0]]]}, {"generators": [[[0, -1], [1, 1]]]}]}}
//! ```
//!
//! Family kinds:
//!
//! * `torus`: `T^dim` inside `T^dim x| F_i`, each `F_i` finite and given by
//!   generators in `GL(dim, Z)`.
//! * `finite_normal`: a finite `subgroup` embedded normally in finite
//!   groups. With `"prefix_of_infinite_family": true` the listed members
//!   are only the start of an infinite family.
//! * `split`: a finite `acting` group `H` inside `K_i x| H`, each kernel
//!   finite (`{"kind": "finite", "group", "action"}`) or a torus
//!   (`{"kind": "torus", "dim", "action": [[h, matrix]]}`).
//! * `orbit_prefix`: lattice actions with a marked character, the start of
//!   an infinite family of torus semidirect products.
//! * `mixed`: `components`, each one of the above.

use std::collections::BTreeMap;
use std::fmt::Write;

use anyhow::{bail, Context, Result};
use bohrcheck_core::amalgam::{images_from_generators, split_family_verdict, MatrixTarget, SplitCertificate, SplitKernel};
use bohrcheck_core::character::{CliffordFamily, CliffordReport};
use bohrcheck_core::zmat::{
    coproduct_orbit_obstruction, generated_group_dim, torus_soundness, IntMatrix, ObstructionMember,
    OrbitObstructionReport, TorusVerdict,
};
use serde::{Deserialize, Serialize};

use crate::descriptor::{action_table, check_schema, ElementRef, EmbeddingDescriptor, GroupDescriptor};

/// Deciding criteria a Sound or Unsound verdict may cite.
pub const CRITERIA: &[&str] = &[
    "joint-action-finiteness",
    "finite-amalgam-finite-family",
    "split-embeddings",
    "unsound-subfamily",
];

pub const DEFAULT_SPLIT_SAMPLES: usize = 200;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SoundnessRequest {
    #[serde(default)]
    pub schema: Option<String>,
    pub family: FamilyInput,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorusMember {
    pub generators: Vec<IntMatrix>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiniteMember {
    pub group: GroupDescriptor,
    pub embedding: EmbeddingDescriptor,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum KernelInput {
    Finite {
        group: GroupDescriptor,
        action: Vec<(ElementRef, Vec<ElementRef>)>,
    },
    Torus {
        dim: usize,
        action: Vec<(ElementRef, IntMatrix)>,
    },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilyInput {
    Torus {
        dim: usize,
        members: Vec<TorusMember>,
    },
    FiniteNormal {
        subgroup: GroupDescriptor,
        members: Vec<FiniteMember>,
        #[serde(default)]
        prefix_of_infinite_family: bool,
    },
    Split {
        acting: GroupDescriptor,
        members: Vec<KernelInput>,
        #[serde(default)]
        samples: Option<usize>,
    },
    OrbitPrefix {
        members: Vec<ObstructionMember>,
    },
    Mixed {
        components: Vec<FamilyInput>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Sound,
    Unsound,
    UnknownPrefixOnly,
}

impl Verdict {
    pub fn exit_code(self) -> u8 {
        match self {
            Verdict::Sound | Verdict::Unsound => 0,
            Verdict::UnknownPrefixOnly => 2,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Verdict::Sound => "sound",
            Verdict::Unsound => "unsound",
            Verdict::UnknownPrefixOnly => "unknown_prefix_only",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Torus {
        dim: usize,
        member_orders: Vec<u64>,
        joint: TorusVerdict,
    },
    FiniteNormal {
        subgroup_order: usize,
        member_orders: Vec<usize>,
        prefix_of_infinite_family: bool,
        fin: Vec<CliffordReport>,
        /// Irreducibles of the subgroup whose Clifford multiplicity grows
        /// strictly along the listed members.
        growing: Vec<usize>,
    },
    Split {
        acting_order: usize,
        kernels: Vec<String>,
        split: SplitCertificate,
    },
    OrbitPrefix {
        cap: usize,
        report: OrbitObstructionReport,
    },
    Mixed {
        components: Vec<SoundnessVerdict>,
        /// Dimensions whose torus components were decided together.
        merged_torus_dims: Vec<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SoundnessVerdict {
    pub verdict: Verdict,
    pub criterion: Option<&'static str>,
    pub certificate: Certificate,
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub seed: u64,
    pub cap: usize,
}

impl SoundnessRequest {
    pub const SCHEMA: &'static str = "bohrcheck/soundness-request/v1";

    pub fn decide(&self, opts: Options) -> Result<SoundnessVerdict> {
        check_schema(self.schema.as_deref(), Self::SCHEMA)?;
        decide(&self.family, opts)
    }
}

fn decided(verdict: Verdict, criterion: &'static str, certificate: Certificate) -> SoundnessVerdict {
    debug_assert!(CRITERIA.contains(&criterion));
    SoundnessVerdict {
        verdict,
        criterion: Some(criterion),
        certificate,
    }
}

fn undecided(certificate: Certificate) -> SoundnessVerdict {
    SoundnessVerdict {
        verdict: Verdict::UnknownPrefixOnly,
        criterion: None,
        certificate,
    }
}

fn decide_torus(dim: usize, members: &[Vec<IntMatrix>]) -> Result<SoundnessVerdict> {
    if members.is_empty() {
        bail!("a torus family needs at least one member");
    }
    let mut member_orders = Vec::with_capacity(members.len());
    for (i, gens) in members.iter().enumerate() {
        let group = generated_group_dim(dim, gens).with_context(|| format!("member {i}"))?;
        member_orders.push(group.order().with_context(|| format!("member {i} generates an infinite group"))?);
    }
    let joint = torus_soundness(dim, members)?;
    let verdict = if joint.is_sound() { Verdict::Sound } else { Verdict::Unsound };
    Ok(decided(
        verdict,
        "joint-action-finiteness",
        Certificate::Torus {
            dim,
            member_orders,
            joint,
        },
    ))
}

fn decide_finite_normal(subgroup: &GroupDescriptor, members: &[FiniteMember], prefix: bool) -> Result<SoundnessVerdict> {
    if members.is_empty() {
        bail!("a finite normal family needs at least one member");
    }
    let h = subgroup.build().context("subgroup")?;
    let mut embeddings = Vec::with_capacity(members.len());
    for (i, m) in members.iter().enumerate() {
        let g = m.group.build().with_context(|| format!("member {i}"))?;
        embeddings.push(m.embedding.build(h.clone(), g).with_context(|| format!("member {i}"))?);
    }
    let family = CliffordFamily::new(h.clone(), &embeddings)?;
    let fin = family.fin_check();
    let growing = fin.iter().filter(|r| r.growing).map(|r| r.rho).collect();
    let certificate = Certificate::FiniteNormal {
        subgroup_order: h.order(),
        member_orders: embeddings.iter().map(|e| e.target().order()).collect(),
        prefix_of_infinite_family: prefix,
        fin,
        growing,
    };
    Ok(if prefix {
        undecided(certificate)
    } else {
        decided(Verdict::Sound, "finite-amalgam-finite-family", certificate)
    })
}

fn decide_split(acting: &GroupDescriptor, members: &[KernelInput], samples: usize, seed: u64) -> Result<SoundnessVerdict> {
    if members.is_empty() {
        bail!("a split family needs at least one member");
    }
    let h = acting.build().context("acting group")?;
    let mut kernels = Vec::with_capacity(members.len());
    let mut names = Vec::with_capacity(members.len());
    for (i, m) in members.iter().enumerate() {
        let kernel = match m {
            KernelInput::Finite { group, action } => {
                let k = group.build().with_context(|| format!("kernel {i}"))?;
                let action = action_table(&k, &h, action).with_context(|| format!("kernel {i}"))?;
                names.push(format!("finite of order {}", k.order()));
                SplitKernel::Finite { group: k, action }
            }
            KernelInput::Torus { dim, action } => {
                let gens = action
                    .iter()
                    .map(|(a, m)| Ok((a.resolve(&h)?, m.clone())))
                    .collect::<Result<Vec<_>>>()?;
                let action = images_from_generators(&h, &MatrixTarget { dim: *dim }, &gens)
                    .with_context(|| format!("kernel {i}"))?;
                names.push(format!("torus of dimension {dim}"));
                SplitKernel::Torus { dim: *dim, action }
            }
        };
        kernels.push(kernel);
    }
    let split = split_family_verdict(&h, &kernels, samples, seed)?;
    if let Some(report) = &split.decomposition {
        if !report.passed {
            bail!(
                "split decomposition check failed on {} of {} samples",
                report.samples - report.agreements,
                report.samples
            );
        }
    }
    Ok(decided(
        Verdict::Sound,
        "split-embeddings",
        Certificate::Split {
            acting_order: h.order(),
            kernels: names,
            split,
        },
    ))
}

fn decide_mixed(components: &[FamilyInput], opts: Options) -> Result<SoundnessVerdict> {
    if components.is_empty() {
        bail!("a mixed family needs at least one component");
    }
    let mut torus: BTreeMap<usize, Vec<Vec<IntMatrix>>> = BTreeMap::new();
    let mut torus_counts: BTreeMap<usize, usize> = BTreeMap::new();
    let mut results = Vec::new();
    for c in components {
        match c {
            FamilyInput::Torus { dim, members } => {
                torus.entry(*dim).or_default().extend(members.iter().map(|m| m.generators.clone()));
                *torus_counts.entry(*dim).or_default() += 1;
            }
            other => results.push(decide(other, opts)?),
        }
    }
    let merged_torus_dims: Vec<usize> = torus_counts.iter().filter(|(_, &n)| n > 1).map(|(&d, _)| d).collect();
    for (dim, members) in &torus {
        results.push(decide_torus(*dim, members)?);
    }
    let unsound = results.iter().any(|r| r.verdict == Verdict::Unsound);
    let single = results.len() == 1;
    let certificate = Certificate::Mixed {
        components: results,
        merged_torus_dims,
    };
    if unsound {
        return Ok(decided(Verdict::Unsound, "unsound-subfamily", certificate));
    }
    if single {
        let Certificate::Mixed { mut components, .. } = certificate else {
            unreachable!()
        };
        return Ok(components.remove(0));
    }
    Ok(undecided(certificate))
}

pub fn decide(family: &FamilyInput, opts: Options) -> Result<SoundnessVerdict> {
    match family {
        FamilyInput::Torus { dim, members } => {
            let gens: Vec<Vec<IntMatrix>> = members.iter().map(|m| m.generators.clone()).collect();
            decide_torus(*dim, &gens)
        }
        FamilyInput::FiniteNormal {
            subgroup,
            members,
            prefix_of_infinite_family,
        } => decide_finite_normal(subgroup, members, *prefix_of_infinite_family),
        FamilyInput::Split {
            acting,
            members,
            samples,
        } => decide_split(acting, members, samples.unwrap_or(DEFAULT_SPLIT_SAMPLES), opts.seed),
        FamilyInput::OrbitPrefix { members } => {
            if members.is_empty() {
                bail!("an orbit prefix needs at least one member");
            }
            let report = coproduct_orbit_obstruction(members, opts.cap)?;
            Ok(undecided(Certificate::OrbitPrefix { cap: opts.cap, report }))
        }
        FamilyInput::Mixed { components } => decide_mixed(components, opts),
    }
}

fn render_certificate(c: &Certificate, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match c {
        Certificate::Torus {
            dim,
            member_orders,
            joint,
        } => {
            let _ = writeln!(out, "{pad}torus dimension: {dim}");
            let _ = writeln!(out, "{pad}member group orders: {member_orders:?}");
            match joint {
                TorusVerdict::Sound { order, .. } => {
                    let _ = writeln!(out, "{pad}joint action group: finite of order {order}");
                }
                TorusVerdict::Unsound { witness_count } => {
                    let _ = writeln!(out, "{pad}joint action group: infinite ({witness_count} distinct elements found)");
                }
            }
        }
        Certificate::FiniteNormal {
            subgroup_order,
            member_orders,
            prefix_of_infinite_family,
            fin,
            growing,
        } => {
            let _ = writeln!(out, "{pad}subgroup order: {subgroup_order}");
            let _ = writeln!(out, "{pad}member orders: {member_orders:?}");
            if *prefix_of_infinite_family {
                let _ = writeln!(out, "{pad}members are a prefix of an infinite family");
            }
            for r in fin {
                let profile: Vec<u64> = r.per_member_multiplicity.values().copied().collect();
                let _ = writeln!(
                    out,
                    "{pad}irreducible {}: class size {}, multiplicities {profile:?}{}",
                    r.rho,
                    r.class_size,
                    if r.growing { " (growing)" } else { "" }
                );
            }
            if !growing.is_empty() {
                let _ = writeln!(out, "{pad}growing multiplicities at irreducibles {growing:?}");
            }
        }
        Certificate::Split {
            acting_order,
            kernels,
            split,
        } => {
            let _ = writeln!(out, "{pad}acting group order: {acting_order}");
            for k in kernels {
                let _ = writeln!(out, "{pad}kernel: {k}");
            }
            if let Some(d) = &split.decomposition {
                let _ = writeln!(out, "{pad}decomposition check: {}/{} samples agree", d.agreements, d.samples);
            }
        }
        Certificate::OrbitPrefix { cap, report } => {
            let sizes: Vec<String> = report
                .orbit_sizes
                .iter()
                .map(|s| s.map_or_else(|| format!(">{cap}"), |n| n.to_string()))
                .collect();
            let _ = writeln!(out, "{pad}orbit sizes: [{}]", sizes.join(", "));
            let _ = writeln!(out, "{pad}growing: {}", report.growing);
        }
        Certificate::Mixed {
            components,
            merged_torus_dims,
        } => {
            if !merged_torus_dims.is_empty() {
                let _ = writeln!(out, "{pad}torus components merged in dimensions {merged_torus_dims:?}");
            }
            for (i, v) in components.iter().enumerate() {
                let _ = writeln!(out, "{pad}component {i}: {}", v.verdict.name());
                render_certificate(&v.certificate, indent + 2, out);
            }
        }
    }
}

impl SoundnessVerdict {
    pub fn render_text(&self) -> String {
        let mut out = format!("verdict: {}\n", self.verdict.name());
        if let Some(c) = self.criterion {
            let _ = writeln!(out, "criterion: {c}");
        }
        render_certificate(&self.certificate, 0, &mut out);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const OPTS: Options = Options { seed: 7, cap: 10_000 };

    fn run(name: &str) -> SoundnessVerdict {
        fixtures::load::<SoundnessRequest>(name).unwrap().decide(OPTS).unwrap()
    }

    fn torus(members: &[&[[[i64; 2]; 2]]]) -> FamilyInput {
        FamilyInput::Torus {
            dim: 2,
            members: members
                .iter()
                .map(|gens| TorusMember {
                    generators: gens
                        .iter()
                        .map(|m| IntMatrix::from_rows(&[m[0].to_vec(), m[1].to_vec()]).unwrap())
                        .collect(),
                })
                .collect(),
        }
    }

    #[test]
    fn torus_fixture_is_unsound() {
        let v = run("notemb");
        assert_eq!(v.verdict, Verdict::Unsound);
        assert_eq!(v.criterion, Some("joint-action-finiteness"));
        let Certificate::Torus { member_orders, joint, .. } = &v.certificate else {
            panic!()
        };
        assert_eq!(member_orders, &[4, 6]);
        assert!(!joint.is_sound());
    }

    #[test]
    fn heisenberg_prefix_is_undecided() {
        let v = run("heis");
        assert_eq!(v.verdict, Verdict::UnknownPrefixOnly);
        assert_eq!(v.criterion, None);
        let Certificate::FiniteNormal { fin, growing, .. } = &v.certificate else {
            panic!()
        };
        assert_eq!(growing, &[1]);
        assert_eq!(fin[1].per_member_multiplicity.values().copied().collect::<Vec<_>>(), vec![2, 4, 8]);
    }

    #[test]
    fn split_fixtures_are_sound() {
        for name in ["split-inversion", "split-torus-cycles", "split-mixed-kernels"] {
            let v = run(name);
            assert_eq!(v.verdict, Verdict::Sound, "{name}");
            assert_eq!(v.criterion, Some("split-embeddings"));
        }
    }

    #[test]
    fn mixed_rules() {
        let rot4 = [[0, -1], [1, 0]];
        let rot6 = [[0, -1], [1, 1]];
        let neg = [[-1, 0], [0, -1]];
        // two torus components of the same dimension are decided together
        let merged = decide_mixed(&[torus(&[&[rot4]]), torus(&[&[rot6]])], OPTS).unwrap();
        assert_eq!(merged.verdict, Verdict::Unsound);
        let compatible = decide_mixed(&[torus(&[&[rot4]]), torus(&[&[neg]])], OPTS).unwrap();
        assert_eq!(compatible.verdict, Verdict::Sound);
        assert_eq!(compatible.criterion, Some("joint-action-finiteness"));
        // an unsound component makes the whole family unsound
        let split = fixtures::load::<SoundnessRequest>("split-inversion").unwrap().family;
        let with_bad = decide_mixed(&[split.clone(), torus(&[&[rot4], &[rot6]])], OPTS).unwrap();
        assert_eq!(with_bad.verdict, Verdict::Unsound);
        assert_eq!(with_bad.criterion, Some("unsound-subfamily"));
        // sound components of different kinds are not combined
        let both = decide_mixed(&[split, torus(&[&[rot4]])], OPTS).unwrap();
        assert_eq!(both.verdict, Verdict::UnknownPrefixOnly);
        assert!(decide_mixed(&[], OPTS).is_err());
    }

    #[test]
    fn infinite_member_is_an_input_error() {
        let shear = [[1, 1], [0, 1]];
        assert!(decide(&torus(&[&[shear]]), OPTS).is_err());
    }

    #[test]
    fn schema_mismatch_is_rejected() {
        let text = r#"{"schema":"bohrcheck/other/v1","family":{"kind":"torus","dim":1,"members":[{"generators":[[[-1]]]}]}}"#;
        let req: SoundnessRequest = serde_json::from_str(text).unwrap();
        assert!(req.decide(OPTS).is_err());
        let bad_kind = r#"{"family":{"kind":"parametric","members":[]}}"#;
        assert!(serde_json::from_str::<SoundnessRequest>(bad_kind).is_err());
    }
}
