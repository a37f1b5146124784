#![allow(clippy::needless_range_loop)]

pub mod arith;
pub mod cohomology;
pub mod composition;
pub mod error;
pub mod forms;
pub mod harness;
pub mod jordan;
pub mod serial;

pub use error::{Error, Result};
