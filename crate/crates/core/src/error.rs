use std::fmt;

use thiserror::Error;

/// One violated scenario or network invariant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("{role}: vertex {vertex} is not in the network (valid ids are 0..{vertex_count})")]
    UnknownVertex {
        role: &'static str,
        vertex: i64,
        vertex_count: usize,
    },
    #[error("{role}: vertex {vertex} is listed more than once")]
    DuplicateVertex { role: &'static str, vertex: usize },
    #[error("{candidates} candidate locations cannot host {actors} actors")]
    TooFewCandidates { candidates: usize, actors: usize },
    #[error("{field} is negative ({value})")]
    NegativeCost { field: String, value: String },
    #[error("network is disconnected ({components} components)")]
    DisconnectedNetwork { components: usize },
    #[error("{role} is empty")]
    EmptyRole { role: &'static str },
    #[error("edge ({vertex},{vertex}) is a self-loop")]
    SelfLoop { vertex: usize },
    #[error("edge ({u},{v}) appears more than once")]
    DuplicateEdge { u: usize, v: usize },
    #[error("edge ({u},{v}): light-vehicle cost {light} exceeds heavy-vehicle cost {heavy}")]
    LightExceedsHeavy {
        u: usize,
        v: usize,
        heavy: String,
        light: String,
    },
    #[error("{field} must be positive (got {value})")]
    NonPositive { field: String, value: i64 },
    #[error("margin entry `{key}` is not a candidate location")]
    UnknownMarginLocation { key: String },
}

impl ValidationError {
    /// Machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            ValidationError::UnknownVertex { .. } => "UnknownVertex",
            ValidationError::DuplicateVertex { .. } => "DuplicateVertex",
            ValidationError::TooFewCandidates { .. } => "TooFewCandidates",
            ValidationError::NegativeCost { .. } => "NegativeCost",
            ValidationError::DisconnectedNetwork { .. } => "DisconnectedNetwork",
            ValidationError::EmptyRole { .. } => "EmptyRole",
            ValidationError::SelfLoop { .. } => "SelfLoop",
            ValidationError::DuplicateEdge { .. } => "DuplicateEdge",
            ValidationError::LightExceedsHeavy { .. } => "LightExceedsHeavy",
            ValidationError::NonPositive { .. } => "NonPositive",
            ValidationError::UnknownMarginLocation { .. } => "UnknownMarginLocation",
        }
    }
}

/// Every violation found in one validation pass. Never empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationErrors(Vec<ValidationError>);

impl ValidationErrors {
    pub(crate) fn from_vec(errors: Vec<ValidationError>) -> Option<Self> {
        if errors.is_empty() {
            None
        } else {
            Some(ValidationErrors(errors))
        }
    }

    pub fn errors(&self) -> &[ValidationError] {
        &self.0
    }

    pub fn codes(&self) -> Vec<&'static str> {
        self.0.iter().map(ValidationError::code).collect()
    }

    pub fn contains_code(&self, code: &str) -> bool {
        self.0.iter().any(|e| e.code() == code)
    }
}

impl fmt::Display for ValidationErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[{}] {}", e.code(), e)?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationErrors {}

impl IntoIterator for ValidationErrors {
    type Item = ValidationError;
    type IntoIter = std::vec::IntoIter<ValidationError>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}
