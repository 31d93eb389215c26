//! Cyc free resolutions of lattice ideals attached to strongly connected
//! weighted digraphs, together with machine checks of their structure.

pub mod cli;
pub mod cyc;
pub mod error;
pub mod graph;
pub mod intlinalg;
pub mod poly;
pub mod random;
pub mod verify;

pub use error::{CycError, Result};
