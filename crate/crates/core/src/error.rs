use thiserror::Error;

/// Errors raised by the toolkit.
///
/// The variants mirror the failure classes the command-line front end maps
/// onto exit codes: parse problems, domain violations, capacity limits and
/// numeric breakdowns.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("non-minimal Weierstrass model: {place} has ord(a) = {order} >= 4")]
    NonMinimalModel { place: String, order: usize },

    #[error("not a K3 fibration: declared degree {0} (must be 8)")]
    NotK3(usize),

    #[error("not Calabi-Yau admissible: fixed curve of genus {0}")]
    NotCalabiYauAdmissible(u32),

    #[error("inconsistent data: {0}")]
    Inconsistent(String),

    #[error("capacity exceeded: discriminant group of order {order} is above the search bound {bound}")]
    Capacity { order: u64, bound: u64 },

    #[error("numeric integration failed: {0}")]
    Integration(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
