//! Finite subgroups of the mapping class group of the sphere with marked
//! points, their conjugacy classification, and their lifts to the
//! hyperelliptic mapping class group.

pub mod classification;
pub mod cli;
pub mod embedding;
pub mod fpgroup;
pub mod hyperelliptic;
pub mod permgroup;
pub mod sphere_actions;
