use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cache::CACHE_DIR_ENV;

/// Exact decision procedures for amalgams of compact groups.
///
/// Inputs are JSON: a file path, the name of a built-in fixture, or inline
/// JSON text.
#[derive(Debug, Parser)]
#[command(name = "bohrcheck", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Seed for every sampled check.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Cap on orbit enumeration.
    #[arg(long, default_value_t = bohrcheck_core::zmat::DEFAULT_ORBIT_CAP, global = true)]
    pub cap: usize,
    /// Character-table cache directory.
    #[arg(long, env = CACHE_DIR_ENV, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Ignore the cache even when a directory is configured.
    #[arg(long, global = true)]
    pub no_cache: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a family of embeddings is sound.
    Soundness {
        /// Soundness request.
        request: String,
    },
    /// Witness that restriction to a proper subgroup is not a bijection on
    /// irreducibles.
    Equalizer {
        /// Subgroup descriptor.
        subgroup: String,
    },
    /// Clifford classes and multiplicities of a normal subgroup.
    Clifford {
        /// Subgroup descriptor; the subgroup must be normal.
        subgroup: String,
        /// Report a single irreducible of the subgroup.
        #[arg(long)]
        rho: Option<usize>,
    },
    /// Character table of a finite group (values modulo the table prime).
    Chartable {
        /// Group descriptor.
        group: String,
    },
    /// Integer matrix groups acting on tori.
    #[command(subcommand)]
    Zmat(ZmatCommand),
    /// Words in amalgamated free products.
    #[command(subcommand)]
    Amalgam(AmalgamCommand),
    /// Center and automorphism conditions for a compact connected Lie group.
    Liecheck {
        /// Lie datum.
        datum: String,
    },
    /// Manage the character-table cache.
    #[command(subcommand)]
    Cache(CacheCommand),
}

#[derive(Debug, Subcommand)]
pub enum ZmatCommand {
    /// Finiteness of the group generated by integer matrices.
    Finiteness {
        /// Generators as JSON row lists, e.g. "[[0,-1],[1,0]]".
        #[arg(required = true)]
        generators: Vec<String>,
    },
    /// Orbit of a character of the torus.
    Orbit {
        /// Character as a JSON integer list.
        #[arg(long)]
        vector: String,
        #[arg(required = true)]
        generators: Vec<String>,
    },
    /// Structure of the fixed subgroup of a torus automorphism.
    Fixed { matrix: String },
}

#[derive(Debug, Args)]
pub struct WordArgs {
    /// Amalgam spec.
    #[arg(long)]
    pub spec: String,
    /// Word as whitespace-separated `factor:element` tokens.
    #[arg(long, allow_hyphen_values = true)]
    pub word: String,
}

#[derive(Debug, Subcommand)]
pub enum AmalgamCommand {
    /// Normal form of a word.
    Nf(WordArgs),
    /// Whether two words are equal.
    Eq {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long)]
        other: String,
    },
    /// Free-product pseudometric distance to the identity or to `--other`.
    Dist {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long)]
        other: Option<String>,
        /// `discrete`, `regular` (moved points of the regular
        /// representation) or a lengths document.
        #[arg(long, default_value = "discrete")]
        lengths: String,
    },
    /// Image of a word under per-factor homomorphisms.
    Eval {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long)]
        targets: String,
    },
    /// Whether the two factors meet exactly in the amalgam.
    Intersection {
        #[arg(long)]
        spec: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum CacheCommand {
    /// Compute and store tables for every group of a corpus.
    Warm {
        #[arg(default_value = "corpus")]
        corpus: String,
    },
    /// Delete all cached tables.
    Clear,
    /// List cached tables.
    Inspect,
}
