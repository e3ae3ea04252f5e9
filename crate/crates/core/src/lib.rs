pub mod amalgam;
pub mod bunch;
pub mod catalog;
pub mod cli;
pub mod dirsys;
pub mod error;
pub mod flechain;
pub mod ogroups;
pub mod report;

pub use error::{Error, Result};
pub use report::Report;
