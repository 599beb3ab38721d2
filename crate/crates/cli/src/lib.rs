//! Command-line front end for `symfan`: the `.scf` file format and the
//! command implementations.

pub mod app;
pub mod scf;
