//! Dataset representation, ingestion, binning, time splits, and the
//! synthetic generator.

pub mod binning;
pub mod csv_io;
pub mod cv;
pub mod dataset;
pub mod schema;
pub mod synth;
