//! JSON front end for the k3cy verification toolkit, plus the bundled family
//! scenarios and the one-shot verification run.

pub mod commands;
pub mod error;
pub mod input;
pub mod output;
pub mod scenario;
pub mod verify;

use k3cy_core::picard_fuchs::IntegrationOptions;

pub use error::{CliError, CliResult};
pub use scenario::{Scenario, BUNDLED};
pub use verify::{verify_family, verify_scenario, verify_scenarios, Check, FamilyReport};

/// Flags shared by every subcommand.
#[derive(Clone, Debug, PartialEq)]
pub struct Settings {
    /// Acceptance tolerance for numeric comparisons.
    pub tolerance: f64,
    /// Significant digits of printed floats.
    pub precision: usize,
    pub max_steps: Option<usize>,
    pub parallel: bool,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { tolerance: 1e-6, precision: 12, max_steps: None, parallel: false }
    }
}

impl Settings {
    pub fn integration(&self) -> IntegrationOptions {
        let mut o = IntegrationOptions::default();
        if let Some(n) = self.max_steps {
            o.max_steps = n;
        }
        o
    }
}
