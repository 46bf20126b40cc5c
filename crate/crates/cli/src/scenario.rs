//! Family scenarios: the inputs of one row of the Hodge table together with
//! the values it is expected to reproduce.

use k3cy_core::fibration::{KodairaType, SectionData};
use k3cy_core::hodge::FixedLocusSummary;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const BUNDLED: [&str; 5] = ["ysi", "yf2", "yf3", "wb2", "m"];

const SOURCES: [(&str, &str); 5] = [
    ("ysi", include_str!("../data/scenarios/ysi.json")),
    ("yf2", include_str!("../data/scenarios/yf2.json")),
    ("yf3", include_str!("../data/scenarios/yf3.json")),
    ("wb2", include_str!("../data/scenarios/wb2.json")),
    ("m", include_str!("../data/scenarios/m.json")),
];

/// The elliptic fibration: a Weierstrass coefficient, or bare fiber types
/// when only the lattice they generate matters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FibrationInput {
    Weierstrass { a: String, degree: u32 },
    Fibers { fibers: Vec<KodairaType> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PfInput {
    pub cover: [u32; 4],
    pub form: [i64; 4],
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Expected {
    pub fibers: Option<Vec<String>>,
    pub euler_total: Option<u32>,
    pub trivial_lattice_rank: Option<usize>,
    pub ns_rank: Option<usize>,
    pub ns_abs_determinant: Option<u64>,
    pub transcendental_compatible: Option<bool>,
    pub chi_fixed: Option<i64>,
    pub eigenspaces: Option<[u32; 4]>,
    pub square_lefschetz_consistent: Option<bool>,
    pub holomorphic_lefschetz_consistent: Option<bool>,
    pub h11: Option<u32>,
    pub h21: Option<u32>,
    pub intermediate_hodge: Option<[u32; 2]>,
    pub moduli: Option<u32>,
    pub certificate_holds: Option<bool>,
    pub exponents_at_zero: Option<[String; 2]>,
    /// `[re, im]` pairs, compared as a multiset within the tolerance.
    pub monodromy_eigenvalues_at_zero: Option<[[f64; 2]; 2]>,
    pub mum_absent: Option<bool>,
    pub mum_reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub fibration: FibrationInput,
    #[serde(default)]
    pub sections: SectionData,
    pub fixed_locus: FixedLocusSummary,
    /// Lattice expression for the transcendental lattice.
    pub transcendental: String,
    #[serde(default)]
    pub picard_fuchs: Option<PfInput>,
    /// Order of the operator governing the periods of the 3-fold.
    #[serde(default)]
    pub pf_order: Option<u64>,
    pub expected: Expected,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl Scenario {
    pub fn from_json(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::usage(format!("invalid scenario: {e}")))
    }

    pub fn bundled(name: &str) -> CliResult<Self> {
        let (_, text) = SOURCES.iter().find(|(n, _)| *n == name).ok_or_else(|| {
            CliError::usage(format!("unknown scenario {name:?} (bundled: {})", BUNDLED.join(", ")))
        })?;
        Self::from_json(text)
    }
}
