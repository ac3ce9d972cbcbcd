//! Coxeter groups, their alternating subgroups and Coxeter complexes, with
//! finite-field homology and group cohomology routines used to check
//! which degrees of mod-p cohomology vanish on concrete finite examples.

pub mod cohomology;
pub mod complex;
pub mod coxeter;
pub mod error;
pub mod group;
pub mod linalg;
pub mod report;
pub mod suite;

pub use error::{Error, Result};
