//! Enumeration of magic square families, their odd/even parity patterns,
//! and PCA/LDA over the resulting binary datasets.

pub mod enumerate;
pub mod error;
pub mod family;
pub mod io;
mod linear;
pub mod lines;
pub mod parity;
mod search;
pub mod square;
pub mod stats;
pub mod symmetry;

pub use enumerate::{
    enumerate_family, enumerate_with, partition_tasks, EnumerateOptions, Enumeration, EnumerationReport, SearchTask,
};
pub use error::{Error, Result};
pub use family::{BentRule, BlockRule, Family, FamilySpec, FranklinRules};
pub use parity::{
    d4_canonical_pattern, parse_pattern, pattern_string, tally_patterns, to_parity, ParityMatrix, PatternTally,
    TallyMode,
};
pub use square::{magic_constant, MagicConstant, Square};
pub use symmetry::{apply_d4, frenicle_form, D4Transform, Grid};
