//! Command-line front end for `roofcalc-core`: expression parsing, JSON
//! encodings and the verification suite.

pub mod expr;
pub mod json;
pub mod nlist;
pub mod suite;
pub mod text;
