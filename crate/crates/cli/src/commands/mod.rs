mod amalgam;
mod cache;
mod characters;
mod lie;
mod zmat;

use anyhow::Result;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{Cli, Command, Format, GlobalArgs};
use crate::cache::TableCache;
use crate::fixtures;
use crate::soundness::{Options, SoundnessRequest};

pub use cache::{Corpus, NamedGroup};
pub use lie::liecheck;

/// The result of one command: a JSON document, its text rendering and the
/// process exit code.
#[derive(Clone, Debug, PartialEq)]
pub struct Output {
    pub json: Value,
    pub text: String,
    pub code: u8,
}

impl Output {
    fn new(json: Value, text: String) -> Self {
        Output { json, text, code: 0 }
    }

    fn with_code(mut self, code: u8) -> Self {
        self.code = code;
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let mut t = self.text.clone();
                if !t.ends_with('\n') {
                    t.push('\n');
                }
                t
            }
            Format::Json => {
                let mut t = serde_json::to_string_pretty(&self.json).expect("values serialize");
                t.push('\n');
                t
            }
        }
    }
}

/// Merges `{"schema": schema}` with the serialized `body`.
pub(crate) fn document<T: Serialize>(schema: &str, body: &T) -> Value {
    let mut v = json!({ "schema": schema });
    match serde_json::to_value(body).expect("values serialize") {
        Value::Object(map) => v.as_object_mut().expect("object").extend(map),
        other => {
            v["result"] = other;
        }
    }
    v
}

pub(crate) fn cache_of(global: &GlobalArgs) -> Option<TableCache> {
    match (&global.cache_dir, global.no_cache) {
        (Some(dir), false) => Some(TableCache::new(dir)),
        _ => None,
    }
}

pub const VERDICT_SCHEMA: &str = "bohrcheck/verdict/v1";

pub fn soundness(request: &str, global: &GlobalArgs) -> Result<Output> {
    let request: SoundnessRequest = fixtures::load(request)?;
    let verdict = request.decide(Options {
        seed: global.seed,
        cap: global.cap,
    })?;
    let code = verdict.verdict.exit_code();
    Ok(Output::new(document(VERDICT_SCHEMA, &verdict), verdict.render_text()).with_code(code))
}

pub fn run(cli: &Cli) -> Result<Output> {
    let global = &cli.global;
    match &cli.command {
        Command::Soundness { request } => soundness(request, global),
        Command::Equalizer { subgroup } => characters::equalizer(subgroup, global),
        Command::Clifford { subgroup, rho } => characters::clifford(subgroup, *rho),
        Command::Chartable { group } => characters::chartable(group, global),
        Command::Zmat(c) => zmat::run(c, global),
        Command::Amalgam(c) => amalgam::run(c),
        Command::Liecheck { datum } => liecheck(datum),
        Command::Cache(c) => cache::run(c, global),
    }
}
