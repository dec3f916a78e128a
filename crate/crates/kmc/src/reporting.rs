//! Placeholder.
use thiserror::Error;

#[derive(Debug, Error)]
pub enum KmcError {
    #[error("todo")]
    Todo,
}

pub struct AnalysisRequest;
pub struct AnalysisReport;
