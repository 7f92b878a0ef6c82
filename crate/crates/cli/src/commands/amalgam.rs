use anyhow::{Context, Result};
use bohrcheck_core::amalgam::{
    eval_hom, AmalgamSpec, AmalgamWord, LengthFunction, NormalForm, PermutationRep, Pseudometric,
};
use serde_json::{json, Value};

use super::Output;
use crate::amalgam_input::{AmalgamInput, LengthsInput, Targets, TargetsInput};
use crate::args::{AmalgamCommand, WordArgs};
use crate::fixtures;

fn load_spec(arg: &str) -> Result<AmalgamSpec> {
    fixtures::load::<AmalgamInput>(arg)?.build()
}

fn parse(spec: &AmalgamSpec, word: &str) -> Result<AmalgamWord> {
    spec.parse_word(word).with_context(|| format!("word {word:?}"))
}

fn nf_json(spec: &AmalgamSpec, nf: &NormalForm) -> Value {
    json!({
        "head": spec.amalgam().label(nf.head),
        "tail": nf.tail.iter().map(|l| spec.format_letter(l)).collect::<Vec<_>>(),
        "identity": nf.is_identity(),
        "text": nf_text(spec, nf),
    })
}

fn nf_text(spec: &AmalgamSpec, nf: &NormalForm) -> String {
    if nf.is_identity() {
        "identity".into()
    } else {
        spec.format_normal_form(nf)
    }
}

fn lengths(spec: &AmalgamSpec, arg: &str) -> Result<Vec<LengthFunction>> {
    match arg {
        "discrete" => Ok(spec.factors().iter().map(|g| LengthFunction::discrete(g.clone())).collect()),
        "regular" => Ok(spec
            .factors()
            .iter()
            .map(|g| LengthFunction::moved_points(&PermutationRep::regular(g.clone(), 0)))
            .collect()),
        other => fixtures::load::<LengthsInput>(other)?.build(spec.factors()),
    }
}

fn word_pair(a: &WordArgs) -> Result<(AmalgamSpec, AmalgamWord)> {
    let spec = load_spec(&a.spec)?;
    let w = parse(&spec, &a.word)?;
    Ok((spec, w))
}

pub fn run(cmd: &AmalgamCommand) -> Result<Output> {
    match cmd {
        AmalgamCommand::Nf(a) => {
            let (spec, w) = word_pair(a)?;
            let nf = spec.normal_form(&w)?;
            let mut json = json!({ "schema": "bohrcheck/amalgam-nf/v1", "word": spec.format_word(&w) });
            json["normal_form"] = nf_json(&spec, &nf);
            Ok(Output::new(json, nf_text(&spec, &nf)))
        }
        AmalgamCommand::Eq { word, other } => {
            let (spec, w) = word_pair(word)?;
            let w2 = parse(&spec, other)?;
            let equal = spec.word_equal(&w, &w2)?;
            let json = json!({
                "schema": "bohrcheck/amalgam-eq/v1",
                "equal": equal,
                "normal_forms": [nf_json(&spec, &spec.normal_form(&w)?), nf_json(&spec, &spec.normal_form(&w2)?)],
            });
            Ok(Output::new(json, if equal { "equal" } else { "not equal" }.into()))
        }
        AmalgamCommand::Dist {
            word,
            other,
            lengths: which,
        } => {
            let (spec, w) = word_pair(word)?;
            let ls = lengths(&spec, which)?;
            let metric = Pseudometric::new(&spec, ls)?;
            let d = match other {
                Some(o) => metric.distance(&w, &parse(&spec, o)?)?,
                None => metric.value(&w)?,
            };
            let json = json!({
                "schema": "bohrcheck/amalgam-dist/v1",
                "lengths": which,
                "distance": d.to_string(),
            });
            Ok(Output::new(json, d.to_string()))
        }
        AmalgamCommand::Eval { word, targets } => {
            let (spec, w) = word_pair(word)?;
            let targets = fixtures::load::<TargetsInput>(targets)?.build(&spec)?;
            let (value, text) = match targets {
                Targets::Matrix(t, images) => {
                    let m = eval_hom(&spec, &w, &t, &images)?;
                    (serde_json::to_value(&m)?, m.to_string())
                }
                Targets::Group(t, images) => {
                    let g = eval_hom(&spec, &w, &t, &images)?;
                    let label = t.0.label(g);
                    (json!({ "index": g, "label": label }), label)
                }
            };
            let json = json!({ "schema": "bohrcheck/amalgam-eval/v1", "value": value });
            Ok(Output::new(json, text))
        }
        AmalgamCommand::Intersection { spec } => {
            let spec = load_spec(spec)?;
            let r = spec.intersection_check()?;
            let json = json!({
                "schema": "bohrcheck/amalgam-intersection/v1",
                "holds": r.holds,
                "intersection_order": r.intersection_order,
                "amalgam_order": spec.amalgam().order(),
            });
            let text = format!(
                "factors intersect in a subgroup of order {} (amalgam order {}): {}",
                r.intersection_order,
                spec.amalgam().order(),
                if r.holds { "exact" } else { "larger than the amalgam" }
            );
            Ok(Output::new(json, text))
        }
    }
}
