//! Dataset generation, persistence and benchmark-file parsing.
//!
//! Generation of distinct instances is embarrassingly parallel: each one
//! draws from its own RNG substream. Parsers are pure functions of the
//! file text.

mod augment;
mod cvrplib;
mod dataset;
mod gen;
mod json;
mod solomon;

pub use augment::augment8;
pub use cvrplib::parse_cvrplib;
pub use dataset::{
    generate_dataset, load_dataset, save_dataset, Dataset, DatasetHeader, DATASET_MAGIC,
    FORMAT_VERSION,
};
pub use gen::{generate_instance, generate_with_rng, instance_rng};
pub use json::instance_to_json;
pub use solomon::parse_solomon;

use vrp_core::Instance;

/// A benchmark instance in unit-square form plus the factor that maps unit
/// objectives back to the file's native units.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedBenchmark {
    pub name: String,
    pub instance: Instance,
    /// `native_objective = unit_objective * scale`.
    pub scale: f64,
}

#[derive(Debug, thiserror::Error)]
pub enum DataError {
    #[error("instance must have at least one customer")]
    EmptyInstance,
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("bad magic bytes")]
    BadMagic,
    #[error("unsupported format version {0}")]
    BadVersion(u32),
    #[error("file truncated")]
    Truncated,
    #[error("corrupt file: {0}")]
    Corrupt(&'static str),
    #[error("missing mandatory section {0}")]
    MissingSection(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
}
