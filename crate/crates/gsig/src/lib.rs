//! Std companion to `gsig-core`: catalog files, reports and the command line.

pub mod catalog;
pub mod cli;
pub mod report;
