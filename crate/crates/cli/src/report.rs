use serde_json::{json, Map, Value};

use opalg::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Refuted,
    Absent,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Refuted => "refuted",
            Status::Absent => "absent",
            Status::Error => "error",
        }
    }

    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok | Status::Absent => 0,
            Status::Refuted => 1,
            Status::Error => 2,
        }
    }
}

pub struct Report {
    pub command: Option<String>,
    pub args: Vec<String>,
    pub status: Status,
    pub payload: Map<String, Value>,
}

/// Errors that reject the mathematical hypothesis of a command, as opposed
/// to malformed input.
fn is_refutation(e: &Error) -> bool {
    matches!(
        e,
        Error::NotHermitian { .. }
            | Error::NotPositive { .. }
            | Error::NotEqualGram { .. }
            | Error::NotContraction { .. }
            | Error::NotInIntersection { .. }
            | Error::MajorizationFails { .. }
            | Error::NotPartitionOfUnity { .. }
            | Error::NotNormal { .. }
            | Error::NotContinuous { .. }
    )
}

fn kind(e: &Error) -> &'static str {
    match e {
        Error::DimensionMismatch(_) => "dimension_mismatch",
        Error::InvalidDimension(_) => "invalid_dimension",
        Error::NonFinite { .. } => "non_finite",
        Error::InvalidTolerance(_) => "invalid_tolerance",
        Error::NotHermitian { .. } => "not_hermitian",
        Error::NotPositive { .. } => "not_positive",
        Error::NotEqualGram { .. } => "not_equal_gram",
        Error::EmptyList => "empty_list",
        Error::InvalidCount(_) => "invalid_count",
        Error::NotContraction { .. } => "not_contraction",
        Error::NotInIntersection { .. } => "not_in_intersection",
        Error::MajorizationFails { .. } => "majorization_fails",
        Error::NotPartitionOfUnity { .. } => "not_partition_of_unity",
        Error::BadReference(_) => "bad_reference",
        Error::NotNormal { .. } => "not_normal",
        Error::NotContinuous { .. } => "not_continuous",
        Error::Format(_) => "format",
    }
}

impl Report {
    pub fn new(command: String, args: Vec<String>, status: Status, payload: Map<String, Value>) -> Self {
        Self { command: Some(command), args, status, payload }
    }

    pub fn from_error(command: String, args: Vec<String>, e: Error) -> Self {
        let status = if is_refutation(&e) { Status::Refuted } else { Status::Error };
        let mut payload = Map::new();
        payload.insert("error".into(), json!({ "kind": kind(&e), "message": e.to_string() }));
        Self { command: Some(command), args, status, payload }
    }

    pub fn failure(command: String, args: Vec<String>, kind: &str, message: String) -> Self {
        let mut payload = Map::new();
        payload.insert("error".into(), json!({ "kind": kind, "message": message }));
        Self { command: Some(command), args, status: Status::Error, payload }
    }

    pub fn usage_error(command: Option<String>, args: Vec<String>, kind: String, message: String) -> Self {
        let mut payload = Map::new();
        let kind = format!("usage: {kind}");
        payload.insert("error".into(), json!({ "kind": kind, "message": message.trim_end() }));
        Self { command, args, status: Status::Error, payload }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "args": self.args,
            "status": self.status.as_str(),
            "payload": self.payload,
        })
    }
}
