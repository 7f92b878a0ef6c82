use std::collections::BTreeSet;
use std::fmt::Write;

use anyhow::{bail, Result};
use bohrcheck_core::character::{shared_prime, CliffordFamily, EqualizerWitness, RestrictionTable};
use bohrcheck_core::Error;
use serde_json::json;

use super::{cache_of, Output};
use crate::args::GlobalArgs;
use crate::cache;
use crate::descriptor::{GroupDescriptor, SubgroupDescriptor};
use crate::fixtures;

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

pub fn chartable(arg: &str, global: &GlobalArgs) -> Result<Output> {
    let group = fixtures::load::<GroupDescriptor>(arg)?.build()?;
    let table = cache::table(cache_of(global).as_ref(), &group, None)?;
    let classes = table.classes();
    let reps = table.class_reps();
    let sizes = classes.sizes();
    let class_json: Vec<_> = reps
        .iter()
        .zip(&sizes)
        .map(|(&r, &s)| json!({ "representative": group.label(r), "size": s, "element_order": group.element_order(r) }))
        .collect();
    let json = json!({
        "schema": "bohrcheck/chartable/v1",
        "group_hash": group.canonical_hash(),
        "order": group.order(),
        "prime": table.prime(),
        "classes": class_json,
        "degrees": table.degrees(),
        "values_mod_p": table.rows(),
    });
    let mut text = format!(
        "order {}, {} classes, values modulo {}\nclass sizes: {}\ndegrees: {}\n",
        group.order(),
        table.len(),
        table.prime(),
        join(&sizes),
        join(table.degrees())
    );
    for (i, row) in table.rows().iter().enumerate() {
        let _ = writeln!(text, "chi{i}: {}", join(row));
    }
    Ok(Output::new(json, text))
}

pub fn equalizer(arg: &str, global: &GlobalArgs) -> Result<Output> {
    let emb = fixtures::load::<SubgroupDescriptor>(arg)?.build()?;
    if !emb.is_injective() {
        return Err(Error::NotInjective.into());
    }
    if !emb.is_proper() {
        return Err(Error::NotProper.into());
    }
    let cache = cache_of(global);
    let p = shared_prime(&[emb.source().as_ref(), emb.target().as_ref()])?;
    let h_table = cache::table(cache.as_ref(), emb.source(), Some(p))?;
    let g_table = cache::table(cache.as_ref(), emb.target(), Some(p))?;
    let rt = RestrictionTable::with_tables(&emb, h_table, g_table)?;
    let witness = rt.equalizer_witness()?;
    if !witness.verify(&rt) {
        bail!("the equalizer witness failed verification");
    }
    let involved = match witness {
        EqualizerWitness::Split { pi, .. } => vec![pi],
        EqualizerWitness::Collision { pi0, pi1 } => vec![pi0, pi1],
    };
    let characters: Vec<_> = involved
        .iter()
        .map(|&pi| {
            json!({
                "index": pi,
                "degree": rt.g_table().degree(pi),
                "values": rt.g_table().row(pi),
                "restricted_values": rt.restricted_values(pi),
            })
        })
        .collect();
    let json = json!({
        "schema": "bohrcheck/equalizer/v1",
        "subgroup_order": emb.source().order(),
        "group_order": emb.target().order(),
        "prime": p,
        "witness": witness,
        "characters": characters,
        "verified": true,
    });
    let mut text = format!(
        "subgroup of order {} in a group of order {} (values modulo {p})\n",
        emb.source().order(),
        emb.target().order()
    );
    match witness {
        EqualizerWitness::Split { pi, self_inner_product } => {
            let _ = writeln!(text, "witness: split, irreducible {pi} restricts with self inner product {self_inner_product}");
        }
        EqualizerWitness::Collision { pi0, pi1 } => {
            let _ = writeln!(text, "witness: collision, irreducibles {pi0} and {pi1} have equal restrictions");
        }
    }
    for &pi in &involved {
        let _ = writeln!(
            text,
            "chi{pi}: degree {}, values {}, restricted {}",
            rt.g_table().degree(pi),
            join(rt.g_table().row(pi)),
            join(&rt.restricted_values(pi))
        );
    }
    Ok(Output::new(json, text))
}

pub fn clifford(arg: &str, rho: Option<usize>) -> Result<Output> {
    let emb = fixtures::load::<SubgroupDescriptor>(arg)?.build()?;
    let family = CliffordFamily::new(emb.source().clone(), std::slice::from_ref(&emb))?;
    let n = family.h_table().len();
    let selected: Vec<usize> = match rho {
        Some(r) if r >= n => bail!("irreducible {r} out of range: the subgroup has {n}"),
        Some(r) => vec![r],
        None => (0..n).collect(),
    };
    let rt = &family.members()[0];
    let mut entries = Vec::new();
    let mut text = format!(
        "normal subgroup of order {} in a group of order {}\n",
        emb.source().order(),
        emb.target().order()
    );
    for r in selected {
        let report = family.report(r);
        let degrees: BTreeSet<u64> = (0..rt.g_table().len())
            .filter(|&pi| rt.multiplicity(pi, r) > 0)
            .map(|pi| rt.g_table().degree(pi))
            .collect();
        let degrees: Vec<u64> = degrees.into_iter().collect();
        let multiplicity = family.clifford_multiplicity(r, 0);
        let _ = writeln!(
            text,
            "rho{r}: degree {}, class [{}], multiplicity {multiplicity}, constituent degrees [{}]",
            family.h_table().degree(r),
            join(&report.class_members),
            join(&degrees)
        );
        entries.push(json!({
            "rho": r,
            "degree": family.h_table().degree(r),
            "class": report.class_members,
            "multiplicity": multiplicity,
            "constituent_degrees": degrees,
        }));
    }
    let json = json!({
        "schema": "bohrcheck/clifford/v1",
        "subgroup_order": emb.source().order(),
        "group_order": emb.target().order(),
        "irreducibles": entries,
    });
    Ok(Output::new(json, text))
}
