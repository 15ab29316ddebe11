//! Exact branching rules for finite subgroups of SL2(C) and SL3(C).
//!
//! The pipeline runs group enumeration, conjugacy classes, character table,
//! McKay matrices and generalized Cartan matrix, branching multiplicities,
//! closed-form generating series, and orthogonal reflection partitions. All
//! arithmetic is exact, over cyclotomic fields.

#![allow(clippy::needless_range_loop)]

pub mod analysis;
pub mod chartab;
pub mod cyclo;
pub mod error;
pub mod expr;
pub mod field;
pub mod grp;
pub mod mckay;
pub mod numth;
pub mod poly;
pub mod presets;
pub mod reference;
pub mod roots;
pub mod series;
pub mod weyl;

pub use cyclo::CycloNum;
pub use error::{Error, Result};
