//! Library side of the `sepdiff` command: parsers, report formatting and
//! command dispatch.

pub mod app;
pub mod command;
pub mod parse;
pub mod report;
pub mod selftest;
