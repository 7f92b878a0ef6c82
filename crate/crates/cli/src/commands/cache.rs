use std::fmt::Write;

use anyhow::{Context, Result};
use serde::Deserialize;
use serde_json::json;

use super::{cache_of, Output};
use crate::args::{CacheCommand, GlobalArgs};
use crate::descriptor::{check_schema, GroupDescriptor};
use crate::fixtures;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedGroup {
    pub name: String,
    pub group: GroupDescriptor,
}

/// A named list of groups.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Corpus {
    #[serde(default)]
    pub schema: Option<String>,
    pub groups: Vec<NamedGroup>,
}

impl Corpus {
    pub const SCHEMA: &'static str = "bohrcheck/corpus/v1";

    pub fn load(arg: &str) -> Result<Self> {
        let c: Corpus = fixtures::load(arg)?;
        check_schema(c.schema.as_deref(), Self::SCHEMA)?;
        Ok(c)
    }
}

pub fn run(cmd: &CacheCommand, global: &GlobalArgs) -> Result<Output> {
    let cache = cache_of(global)
        .with_context(|| format!("no cache directory: pass --cache-dir or set {}", crate::cache::CACHE_DIR_ENV))?;
    match cmd {
        CacheCommand::Warm { corpus } => {
            let corpus = Corpus::load(corpus)?;
            let mut warmed = Vec::new();
            let mut text = String::new();
            for g in &corpus.groups {
                let group = g.group.build().with_context(|| format!("group {}", g.name))?;
                let table = cache.table(&group, None)?;
                cache.store(&table)?;
                let _ = writeln!(text, "{}: order {}, {} classes", g.name, group.order(), table.len());
                warmed.push(json!({ "name": g.name, "group_hash": group.canonical_hash(), "classes": table.len() }));
            }
            let json = json!({ "schema": "bohrcheck/cache/v1", "dir": cache.dir(), "warmed": warmed });
            Ok(Output::new(json, text))
        }
        CacheCommand::Clear => {
            let removed = cache.clear()?;
            let json = json!({ "schema": "bohrcheck/cache/v1", "dir": cache.dir(), "removed": removed });
            Ok(Output::new(json, format!("removed {removed} cached tables")))
        }
        CacheCommand::Inspect => {
            let entries = cache.entries()?;
            let mut text = format!("{} cached tables in {}\n", entries.len(), cache.dir().display());
            for e in &entries {
                let _ = writeln!(text, "{}  order {}  prime {}  {} classes", e.group_hash, e.order, e.prime, e.classes);
            }
            let json = json!({ "schema": "bohrcheck/cache/v1", "dir": cache.dir(), "entries": entries });
            Ok(Output::new(json, text))
        }
    }
}
