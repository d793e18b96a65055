//! JSON formats, the `koszulkit` command line and the self-test runner on
//! top of [`koszulkit_core`].

pub mod cli;
pub mod commands;
pub mod format;
pub mod selftest;
