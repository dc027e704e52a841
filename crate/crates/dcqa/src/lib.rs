//! Document-grounded wh-question answering over an associative word
//! network with deep cases.

pub mod cli;
pub mod config;
pub mod deep_case;
pub mod ingest;
pub mod knowledge_extraction;
pub mod network;
pub mod persistence;
pub mod qa_engine;
pub mod text_analysis;
