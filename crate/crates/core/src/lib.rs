//! Numerical toolkit for intuitionistic fuzzy normed linear spaces over
//! `R^d`: t-norm algebra, the standard fuzzy norm, alpha-norms, sequence
//! diagnostics on finite prefixes, topology of finite samples and
//! continuity probes.

pub mod alpha_norms;
pub mod config;
pub mod continuity;
pub mod corpus;
pub mod deviation;
pub mod fuzzy_algebra;
pub mod ifn_space;
pub mod sampling;
pub mod sequence_analysis;
pub mod topology;
pub mod verdict;

pub use config::ToleranceConfig;
pub use deviation::Deviation;
pub use fuzzy_algebra::{DegreePair, TConorm, TNorm, UnitValue};
pub use ifn_space::{CrispNorm, IfnSpace, SpaceSpec, StandardIfn, Vector};
pub use verdict::{Check, Status, Verdict, Witness};
