pub mod error;
pub mod exactalg;
pub mod hydrogen;
pub mod ladder;
pub mod oracle;
pub mod potentials;
pub mod sumrules;

pub use error::{Error, Result};
