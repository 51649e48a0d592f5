//! Manifests bundled with the binary.

use holonomy_core::VerificationReport;
use rayon::prelude::*;

use crate::manifest::{parse_manifest_str, Manifest, ManifestError, Resolver};
use crate::output::{Document, FixtureResult, SCHEMA_VERSION};
use crate::suite::run_suite;

/// What running a bundled manifest is supposed to produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    InvalidInput,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::InvalidInput => "invalid-input",
        }
    }
}

pub struct Entry {
    pub name: &'static str,
    pub source: &'static str,
    pub expected: Outcome,
}

macro_rules! entry {
    ($name:literal, $expected:expr) => {
        Entry {
            name: $name,
            source: include_str!(concat!("../corpus/", $name, ".toml")),
            expected: $expected,
        }
    };
}

pub const CORPUS: &[Entry] = &[
    entry!("abelian7", Outcome::Pass),
    entry!("abelian8", Outcome::Pass),
    entry!("cartan7", Outcome::Pass),
    entry!("cartan8", Outcome::Pass),
    entry!("heisenberg5_t2", Outcome::Pass),
    entry!("nonintegrable7", Outcome::Fail),
    entry!("corrupted_curvature", Outcome::Fail),
    entry!("repeated_index", Outcome::InvalidInput),
    entry!("jacobi_violation", Outcome::InvalidInput),
    entry!("unknown_structure", Outcome::InvalidInput),
];

pub fn entry(name: &str) -> Option<&'static Entry> {
    CORPUS.iter().find(|e| e.name == name)
}

impl Entry {
    pub fn origin(&self) -> String {
        format!("corpus/{}.toml", self.name)
    }

    pub fn parse(&self) -> Result<Manifest, ManifestError> {
        parse_manifest_str(self.source, &self.origin(), &BundledResolver)
    }
}

pub struct BundledResolver;

impl Resolver for BundledResolver {
    fn resolve(&self, name: &str) -> Option<Result<Manifest, ManifestError>> {
        entry(name).map(Entry::parse)
    }
}

/// Parses a bundled manifest that is known to be valid.
pub fn load(name: &str) -> Manifest {
    entry(name)
        .unwrap_or_else(|| panic!("no bundled manifest named {name}"))
        .parse()
        .unwrap_or_else(|e| panic!("bundled manifest {name} is invalid: {e}"))
}

/// Runs every bundled manifest and compares each outcome with the expected one.
pub fn run_corpus() -> Document {
    let results: Vec<(Option<VerificationReport>, FixtureResult)> = CORPUS
        .par_iter()
        .map(|e| {
            let (report, observed, message) = match e.parse() {
                Err(err) => (None, Outcome::InvalidInput, Some(err.to_string())),
                Ok(m) => {
                    let r = run_suite(&m);
                    let o = if r.passed() {
                        Outcome::Pass
                    } else {
                        Outcome::Fail
                    };
                    (Some(r), o, None)
                }
            };
            let fixture = FixtureResult {
                name: e.name.to_string(),
                expected: e.expected.as_str().to_string(),
                observed: observed.as_str().to_string(),
                message,
            };
            (report, fixture)
        })
        .collect();
    let mut reports = Vec::new();
    let mut fixtures = Vec::new();
    for (r, f) in results {
        reports.extend(r);
        fixtures.push(f);
    }
    Document {
        schema: SCHEMA_VERSION,
        passed: fixtures.iter().all(FixtureResult::as_expected),
        reports,
        fixtures,
    }
}
