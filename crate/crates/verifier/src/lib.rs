//! Manifest ingestion, bundled corpus, fuzzing and reporting for the
//! G₂ / Spin(7) torsion-geometry checks.

pub mod corpus;
pub mod fuzz;
pub mod manifest;
pub mod output;
pub mod suite;

pub use corpus::{Outcome, CORPUS};
pub use fuzz::{fuzz, FuzzConfig};
pub use manifest::{parse_manifest, parse_manifest_str, Manifest, ManifestError, ScalarMode};
pub use output::{Document, FixtureResult};
pub use suite::{run_suite, run_with};
