//! Text formats, renderers and the command-line front end for `demaz-core`.

pub mod cli;
pub mod grammar;
pub mod render;
pub mod sffile;
