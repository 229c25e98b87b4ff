//! Corpus I/O, seq2seq dataset construction, corpus scoring, and report
//! rendering behind the `amr` command line.

pub mod corpus;
pub mod dataset;
pub mod report;
pub mod scoring;
