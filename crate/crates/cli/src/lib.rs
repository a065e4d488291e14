//! Script-driven front end for the finalg engine: a small declarative
//! language for rings, sets, modules, and submodules, with commands for
//! decisions, enumeration, and law verification.

pub mod exec;
pub mod report;
pub mod script;
