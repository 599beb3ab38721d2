//! Smoothness and projectivity checks for spherical embeddings of
//! symmetric-space type, and the classification of smooth Picard-one
//! completions.

pub mod classify;
pub mod colored;
pub mod cones;
pub mod exactlin;
pub mod rootsys;
pub mod symmcheck;
