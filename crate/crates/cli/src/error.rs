use serde::Serialize;
use smw::models::ModelError;
use smw::sm::SmError;
use smw::stability::StabilityError;
use thiserror::Error;

/// A failure with a machine-readable code mirroring the core error variants.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[error("{code}: {message}")]
pub struct CliError {
    pub code: String,
    pub message: String,
}

impl CliError {
    pub fn new(code: &str, message: impl Into<String>) -> Self {
        CliError { code: code.to_string(), message: message.into() }
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        CliError::new("InvalidInput", message)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "error": self })
    }
}

impl From<SmError> for CliError {
    fn from(e: SmError) -> Self {
        CliError::new(e.code(), e.to_string())
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        SmError::from(e).into()
    }
}

impl From<StabilityError> for CliError {
    fn from(e: StabilityError) -> Self {
        let code = match e {
            StabilityError::OutsideHalfPlane(_) => "OutsideHalfPlane",
            StabilityError::MissingCharge(_) => "MissingCharge",
            StabilityError::UnknownSimple(_) => "UnknownSimple",
            StabilityError::Malformed(_) => "MalformedCharge",
            StabilityError::NotInHeart => "NotInHeart",
        };
        CliError::new(code, e.to_string())
    }
}
