//! Superclasses, supercharacters and supercharacter tables of pattern groups
//! and algebra groups over finite fields.

pub mod algebra;
pub mod error;
pub mod formula;
pub mod gf;
pub mod oracle;
pub mod pattern;
pub mod poset;
mod text;

pub use error::{Error, Result};
