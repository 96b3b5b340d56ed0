//! Experiment harness: instance generation, sharpness probes,
//! counterexample search, sweeps, report emission and the self-test suite.

pub mod generate;
pub mod nelder_mead;
pub mod probe;
pub mod report;
pub mod search;
pub mod selftest;
pub mod sweep;
