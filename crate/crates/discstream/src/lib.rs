//! Standard-library companion to `discstream-core`: text formats, graph
//! generators, small-graph corpora, JSON/CSV reports, parallel trial
//! batteries and the configuration used by the `discstream` binary.

pub mod app;
pub mod battery;
pub mod config;
pub mod corpus;
pub mod generate;
pub mod io;
pub mod property;
pub mod report;

pub use discstream_core as core;
