use std::fmt::Write;

use anyhow::Result;
use bohrcheck_core::lie::{conditions_abc, largest_compact_verdict, lie_center, LargestCompact};
use bohrcheck_core::Error;
use serde_json::json;

use super::Output;
use crate::fixtures;
use crate::lie_input::LieDatumInput;

pub const LIECHECK_SCHEMA: &str = "bohrcheck/liecheck/v1";

pub fn liecheck(arg: &str) -> Result<Output> {
    let datum = fixtures::load::<LieDatumInput>(arg)?.build()?;
    let center = lie_center(&datum);
    let conditions = conditions_abc(&datum)?;
    let largest = match largest_compact_verdict(&datum) {
        Ok(r) => Some(r),
        Err(Error::UnsupportedRank(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let mut text = String::new();
    let torus = match center.torus_dim {
        0 => String::new(),
        z => format!("T^{z} x "),
    };
    let _ = writeln!(text, "center: {torus}{}", center.finite);
    let _ = writeln!(text, "finite central glue: {}", center.delta0);
    let _ = writeln!(
        text,
        "conditions: central torus dim <= 1: {}, dual rank <= 1: {}, compact automorphisms: {}",
        conditions.no_central_2torus, conditions.dual_rank_le_1, conditions.aut_compact
    );
    let code = match &largest {
        Some(r) => {
            let verdict = match r.verdict {
                LargestCompact::HasLargest => "has a largest compact subgroup",
                LargestCompact::NoLargest => "has no largest compact subgroup",
                LargestCompact::Unknown => "undecided",
            };
            let _ = writeln!(text, "automorphism group: {verdict}");
            let _ = writeln!(text, "reason: {}", r.explanation);
            for c in &r.classes {
                let fixed = match c.fixed.circle_rank {
                    0 => c.fixed.torsion.to_string(),
                    k => format!("T^{k} x {}", c.fixed.torsion),
                };
                let _ = writeln!(
                    text,
                    "torsion class {} (order {}): fixed {fixed}, glue embeds: {}",
                    c.representative, c.order, c.embeds
                );
            }
            if let Some(w) = &r.witness {
                let _ = writeln!(text, "liftable witness: {w}");
            }
            u8::from(r.verdict == LargestCompact::Unknown) * 2
        }
        None => {
            let _ = writeln!(text, "automorphism group: undecided for central torus of dimension {}", datum.z());
            2
        }
    };
    let json = json!({
        "schema": LIECHECK_SCHEMA,
        "center": center,
        "conditions": conditions,
        "largest_compact": largest,
    });
    Ok(Output::new(json, text).with_code(code))
}
