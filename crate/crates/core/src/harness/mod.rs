//! Seeded instance generation, randomized verification suites and JSON documents.

pub mod generate;
pub mod json;
pub mod rng;
pub mod suites;
