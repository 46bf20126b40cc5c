pub mod algebra;
pub mod curves;
pub mod error;
pub mod fibration;
pub mod hodge;
pub mod lattice;
pub mod picard_fuchs;

pub use error::{Error, Result};
