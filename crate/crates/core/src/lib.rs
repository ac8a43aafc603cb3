//! Symbolic toolkit for divisive meadows: commutative rings with a total
//! division where `x / 0 = 0`.

pub mod error;
pub mod fractions;
pub mod gen;
pub mod identities;
pub mod models;
pub mod normal;
pub mod poly;
pub mod syntax;
pub mod term;

pub use error::{Error, ParseError};
pub use term::{Signature, Term};
