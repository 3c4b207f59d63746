pub mod error;
pub mod rootsys;
pub mod symalg;
pub mod gradedlinalg;
pub mod galleries;
pub mod sl2kit;
pub mod gkm;
pub mod fibres;
pub mod momentsheaf;
pub mod acceptance;
pub mod cli;

pub use error::{Error, Result};
