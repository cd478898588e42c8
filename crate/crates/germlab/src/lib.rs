//! File formats, table verification and the command-line front end for
//! `germlab-core`.

pub mod cli;
pub mod dataset;
pub mod germfile;
pub mod verify;
