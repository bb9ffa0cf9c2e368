//! Randomized and exhaustive checking of the forcing calculus.

pub mod catalog;
pub mod enumerate;
pub mod gen;
pub mod inputs;
pub mod oracle;
pub mod report;
pub mod runner;
pub mod shrink;
