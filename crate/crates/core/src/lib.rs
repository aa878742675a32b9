//! Email corpus mining.
//!
//! Converts a directory of `.eml` files into a typed dataset
//! ([`tabular::records_to_dataset`]), serializes it as CSV or ARFF, clusters
//! it with a mixed-type k-means ([`clustering`]) and reports cluster shares,
//! duplicate structure and the most frequent senders ([`analysis`]).

pub mod analysis;
pub mod clustering;
pub mod eml;
pub mod rng;
pub mod tabular;
