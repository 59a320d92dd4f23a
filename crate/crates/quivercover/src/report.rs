use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn new(path: &str, bytes: &[u8]) -> Self {
        InputDigest { path: path.into(), sha256: format!("{:x}", Sha256::digest(bytes)) }
    }
}

/// The JSON document printed by every command.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<InputDigest>,
    /// Digest over the input digests in order.
    pub input_digest: String,
    pub seed: u64,
    pub status: Status,
    pub results: Value,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    VerdictFailure,
}

impl RunReport {
    pub fn new(command: &str, inputs: Vec<InputDigest>, seed: u64) -> Self {
        let mut h = Sha256::new();
        for i in &inputs {
            h.update(i.sha256.as_bytes());
        }
        RunReport {
            command: command.into(),
            input_digest: format!("{:x}", h.finalize()),
            inputs,
            seed,
            status: Status::Ok,
            results: Value::Null,
            warnings: Vec::new(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::VerdictFailure => 2,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digests_are_stable() {
        let d = InputDigest::new("x", b"");
        assert_eq!(d.sha256, "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
        let a = RunReport::new("info", vec![d.clone()], 0);
        let b = RunReport::new("info", vec![d], 0);
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.exit_code(), 0);
    }
}
