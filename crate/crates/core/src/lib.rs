#![allow(clippy::needless_range_loop)]

pub mod classify;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod expr;
pub mod galilei;
pub mod linalg;
pub mod opalgebra;
pub mod scalar;

pub use error::{Error, Result};
