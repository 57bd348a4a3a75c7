pub mod cli;
pub mod error;
pub mod family;
pub mod graded;
pub mod ground;
pub mod harness;
pub mod keypoly;
pub mod parse;
pub mod poly;
pub mod valuation;

pub use error::{Error, Result};
