use anyhow::{bail, Context, Result};
use bohrcheck_core::zmat::{
    char_orbit, fixed_subgroup_structure, generated_group, minkowski_bound, IntMatrix, MatrixGroupResult,
    OrbitResult,
};
use serde_json::json;

use super::Output;
use crate::args::{GlobalArgs, ZmatCommand};
use crate::fixtures;

fn matrices(args: &[String]) -> Result<Vec<IntMatrix>> {
    let ms = args
        .iter()
        .map(|a| fixtures::load::<IntMatrix>(a).with_context(|| format!("matrix {a}")))
        .collect::<Result<Vec<_>>>()?;
    if let Some(first) = ms.first() {
        for m in &ms {
            if !m.is_square() || m.rows() != first.rows() {
                bail!("matrix {m} is not {0}x{0}", first.rows());
            }
        }
    }
    Ok(ms)
}

pub fn run(cmd: &ZmatCommand, global: &GlobalArgs) -> Result<Output> {
    match cmd {
        ZmatCommand::Finiteness { generators } => {
            let gens = matrices(generators)?;
            let k = gens[0].rows();
            let bound = minkowski_bound(k)?;
            let result = generated_group(&gens)?;
            let text = match &result {
                MatrixGroupResult::Finite { order, .. } => format!("finite of order {order}"),
                MatrixGroupResult::Infinite { witness_count } => {
                    format!("infinite: {witness_count} distinct elements exceed the bound {bound} for dimension {k}")
                }
            };
            let json = json!({
                "schema": "bohrcheck/zmat-finiteness/v1",
                "dim": k,
                "bound": bound,
                "finite": result.is_finite(),
                "order": result.order(),
                "witness_count": match result {
                    MatrixGroupResult::Infinite { witness_count } => Some(witness_count),
                    MatrixGroupResult::Finite { .. } => None,
                },
            });
            Ok(Output::new(json, text))
        }
        ZmatCommand::Orbit { vector, generators } => {
            let v: Vec<i64> = fixtures::load(vector).context("character vector")?;
            let gens = matrices(generators)?;
            let result = char_orbit(&v, &gens, global.cap)?;
            let (text, code) = match &result {
                OrbitResult::Finite { orbit } => (format!("orbit of size {}", orbit.len()), 0),
                OrbitResult::ExceedsCap { explored } => {
                    (format!("orbit exceeds the cap {} ({explored} explored)", global.cap), 2)
                }
            };
            let json = json!({
                "schema": "bohrcheck/zmat-orbit/v1",
                "cap": global.cap,
                "size": result.size(),
                "result": result,
            });
            Ok(Output::new(json, text).with_code(code))
        }
        ZmatCommand::Fixed { matrix } => {
            let m: IntMatrix = fixtures::load(matrix).context("matrix")?;
            let fixed = fixed_subgroup_structure(&m)?;
            let text = match fixed.circle_rank {
                0 => format!("fixed subgroup: {}", fixed.torsion),
                r => format!("fixed subgroup: T^{r} x {}", fixed.torsion),
            };
            let json = json!({
                "schema": "bohrcheck/zmat-fixed/v1",
                "circle_rank": fixed.circle_rank,
                "torsion": fixed.torsion.invariant_factors(),
                "finite_order": fixed.finite_order(),
            });
            Ok(Output::new(json, text))
        }
    }
}
