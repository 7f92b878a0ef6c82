//! Built-in data files, embedded at compile time, and resolution of input
//! arguments (file path, fixture name or inline JSON).

use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::de::DeserializeOwned;

macro_rules! fixtures {
    ($($name:literal),* $(,)?) => {
        /// `(name, contents)` for every shipped fixture.
        pub const FIXTURES: &[(&str, &str)] = &[
            $(($name, include_str!(concat!("../fixtures/", $name, ".json")))),*
        ];
    };
}

fixtures!(
    "notemb",
    "heis",
    "lgstcpct",
    "lgstcpct-4-2",
    "lgstcpct-4-3",
    "su2",
    "bare-torus",
    "sl2z",
    "sl2z-matrices",
    "z2z2",
    "z2z2-s3",
    "corpus",
    "split-inversion",
    "split-torus-cycles",
    "split-mixed-kernels",
    "orbit-cycles",
    "a3-in-s3",
    "z2-in-z4",
    "heis-clifford",
);

pub fn fixture(name: &str) -> Option<&'static str> {
    let name = name.strip_suffix(".json").unwrap_or(name);
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

/// Reads a JSON argument: an existing file, then a fixture name (with or
/// without `.json`, or prefixed `fixture:`), then inline JSON.
pub fn load_text(arg: &str) -> Result<String> {
    if let Some(name) = arg.strip_prefix("fixture:") {
        return fixture(name)
            .map(str::to_owned)
            .with_context(|| format!("no built-in fixture named {name:?}"));
    }
    let path = Path::new(arg);
    if path.is_file() {
        return std::fs::read_to_string(path).with_context(|| format!("reading {arg}"));
    }
    if let Some(text) = fixture(arg) {
        return Ok(text.to_owned());
    }
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(arg.to_owned());
    }
    bail!("{arg:?} is neither a readable file, a built-in fixture nor inline JSON")
}

pub fn load<T: DeserializeOwned>(arg: &str) -> Result<T> {
    let text = load_text(arg)?;
    serde_json::from_str(&text).with_context(|| format!("parsing {arg}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_is_json() {
        for (name, text) in FIXTURES {
            serde_json::from_str::<serde_json::Value>(text).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn resolution_order() {
        assert!(load_text("sl2z.json").unwrap().contains("amalgam"));
        assert!(load_text("fixture:sl2z").is_ok());
        assert_eq!(load_text("{\"a\":1}").unwrap(), "{\"a\":1}");
        assert!(load_text("no-such-thing").is_err());
        assert!(load_text("fixture:no-such-thing").is_err());
    }
}
