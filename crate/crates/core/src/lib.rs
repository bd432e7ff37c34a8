//! Maximal elementary subalgebras of Lie algebras of split reductive groups,
//! computed exactly over the integers and over small finite fields.

pub mod chevalley;
pub mod chevgroups;
pub mod commuting;
pub mod elementary;
pub mod error;
pub mod field;
pub mod linalg;
pub mod order;
pub mod rootsys;

pub use error::{Error, Result};
