//! Verification configuration: defaults, JSON config file, command-line overrides.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::liealg::Family;
use crate::uir::RepLabels;

/// A verification suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Algebra,
    MatrixOracle,
    CasimirCount,
    Enveloping,
    Casimir,
    Uir,
    Heisenberg,
    Cocycle,
    Cover,
    Quotients,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Algebra,
        Suite::MatrixOracle,
        Suite::CasimirCount,
        Suite::Enveloping,
        Suite::Casimir,
        Suite::Uir,
        Suite::Heisenberg,
        Suite::Cocycle,
        Suite::Cover,
        Suite::Quotients,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::MatrixOracle => "matrix-oracle",
            Suite::CasimirCount => "casimir-count",
            Suite::Enveloping => "enveloping",
            Suite::Casimir => "casimir",
            Suite::Uir => "uir",
            Suite::Heisenberg => "heisenberg",
            Suite::Cocycle => "cocycle",
            Suite::Cover => "cover",
            Suite::Quotients => "quotients",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Inclusive range of dimensions, written `3` or `1..4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NRange {
    pub lo: usize,
    pub hi: usize,
}

impl NRange {
    pub const MAX: usize = 8;

    pub fn single(n: usize) -> Self {
        NRange { lo: n, hi: n }
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        self.lo..=self.hi
    }

    pub fn contains(self, n: usize) -> bool {
        (self.lo..=self.hi).contains(&n)
    }
}

impl fmt::Display for NRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..{}", self.lo, self.hi)
        }
    }
}

impl FromStr for NRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("invalid dimension `{s}` (expected N or LO..HI)"));
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let r = match s.split_once("..") {
            Some((a, b)) => NRange { lo: parse(a)?, hi: parse(b.trim_start_matches('='))? },
            None => NRange::single(parse(s)?),
        };
        if r.lo == 0 || r.lo > r.hi || r.hi > Self::MAX {
            return Err(Error::Config(format!("dimension range `{s}` must lie within 1..{}", Self::MAX)));
        }
        Ok(r)
    }
}

impl Serialize for NRange {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for NRange {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(usize),
            Text(String),
        }
        let text = match Raw::deserialize(d)? {
            Raw::Int(n) => n.to_string(),
            Raw::Text(s) => s,
        };
        text.parse().map_err(serde::de::Error::custom)
    }
}

mod family_names {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Family], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|f| f.short_name()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Family>, D::Error> {
        let names = Vec::<String>::deserialize(d)?;
        names.iter().map(|n| n.parse().map_err(serde::de::Error::custom)).collect()
    }
}

/// Acceptance thresholds for the floating-point suites.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub matrix: f64,
    pub homomorphism: f64,
    pub casimir: f64,
    pub cocycle: f64,
    pub cover: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { matrix: 1e-10, homomorphism: 1e-9, casimir: 1e-9, cocycle: 1e-10, cover: 1e-10 }
    }
}

impl Tolerances {
    fn validate(&self) -> Result<()> {
        let all = [self.matrix, self.homomorphism, self.casimir, self.cocycle, self.cover];
        if all.iter().all(|t| t.is_finite() && *t > 0.0) {
            Ok(())
        } else {
            Err(Error::Config("tolerances must be positive and finite".into()))
        }
    }
}

/// Everything a verification run depends on; echoed into the report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    /// Suites to run; empty means all.
    pub suites: Vec<Suite>,
    pub n: NRange,
    /// Families for the representation suite.
    #[serde(with = "family_names")]
    pub families: Vec<Family>,
    pub labels: RepLabels,
    pub trials: usize,
    pub seed: u64,
    pub tolerances: Tolerances,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suites: Vec::new(),
            n: NRange::single(3),
            families: vec![
                Family::WeylHeisenberg,
                Family::Hamilton,
                Family::Galilei,
                Family::GalileiConjugate,
                Family::QuantumHamilton,
            ],
            labels: RepLabels::default(),
            trials: 200,
            seed: 42,
            tolerances: Tolerances::default(),
            out: None,
            format: Format::Text,
        }
    }
}

/// Command-line values; `None` leaves the config file or default in place.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub suites: Vec<Suite>,
    pub n: Option<NRange>,
    pub families: Vec<Family>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub labels: Option<PathBuf>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

impl SuiteConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        read_json(path)
    }

    /// Flags over config file over defaults.
    pub fn resolve(file: Option<&Path>, o: Overrides) -> Result<Self> {
        let mut c = match file {
            Some(p) => Self::from_file(p)?,
            None => Self::default(),
        };
        if !o.suites.is_empty() {
            c.suites = o.suites;
        }
        if !o.families.is_empty() {
            c.families = o.families;
        }
        if let Some(path) = o.labels {
            c.labels = read_json(&path)?;
        }
        c.n = o.n.unwrap_or(c.n);
        c.trials = o.trials.unwrap_or(c.trials);
        c.seed = o.seed.unwrap_or(c.seed);
        c.format = o.format.unwrap_or(c.format);
        if o.out.is_some() {
            c.out = o.out;
        }
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.n.lo == 0 || self.n.lo > self.n.hi || self.n.hi > NRange::MAX {
            return Err(Error::Config(format!("dimension range {} is invalid", self.n)));
        }
        self.tolerances.validate()?;
        self.labels.validate_for(Family::InhomHamilton)
    }

    /// Selected suites in report order.
    pub fn selected(&self) -> Vec<Suite> {
        let mut s = if self.suites.is_empty() { Suite::ALL.to_vec() } else { self.suites.clone() };
        s.sort_by_key(|x| x.name());
        s.dedup();
        s
    }
}
