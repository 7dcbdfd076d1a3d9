//! Extended abduction over extended disjunctive logic programs, and the
//! knowledge base updates built on top of it.
//!
//! Programs are parsed with [`parser::parse`], grounded by [`ground`], and
//! solved by [`solver::answer_sets`]. The [`abduction`] module computes
//! explanations and anti-explanations through an update program, and
//! [`updates`] reduces view updates, integrity maintenance, theory updates and
//! inconsistency removal to it.

pub mod abduction;
pub mod cli;
pub mod config;
pub mod error;
pub mod ground;
pub mod parser;
pub mod report;
pub mod reserved;
pub mod solver;
pub mod syntax;
pub mod updates;

pub use config::{AbdEncoding, EngineConfig};
pub use error::{Error, Result};
pub use syntax::{Atom, BodyElement, Comparison, Literal, Program, Relation, Rule, Term};
