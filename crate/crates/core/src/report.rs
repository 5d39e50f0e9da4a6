//! One line of verification output.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

/// Result of comparing two sides of an identity (or a bound).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub params: BTreeMap<String, String>,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// JSON-lines form; field order is fixed by the struct.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn from_json(line: &str) -> crate::Result<Self> {
        serde_json::from_str(line).map_err(|e| crate::Error::Parse(e.to_string()))
    }

    pub fn without_timing(mut self) -> Self {
        self.elapsed_ms = 0;
        self
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(
            f,
            "{} {} [{}] lhs={} rhs={} ({} ms)",
            self.status,
            self.check,
            params.join(" "),
            self.lhs,
            self.rhs,
            self.elapsed_ms
        )
    }
}

/// Small builder for `(name, value)` parameter lists.
#[derive(Clone, Debug, Default)]
pub struct Params(BTreeMap<String, String>);

impl Params {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.0.insert(key.to_string(), value.to_string());
        self
    }

    pub fn into_map(self) -> BTreeMap<String, String> {
        self.0
    }
}

/// Runs `f`, which returns `(ok, lhs, rhs)`, and records the elapsed time.
pub fn timed<F>(check: &str, params: Params, f: F) -> crate::Result<VerificationReport>
where
    F: FnOnce() -> crate::Result<(bool, String, String)>,
{
    let start = Instant::now();
    let (ok, lhs, rhs) = f()?;
    Ok(VerificationReport {
        check: check.to_string(),
        params: params.into_map(),
        status: Status::from_bool(ok),
        lhs,
        rhs,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let r = timed("demo", Params::new().with("q", 3).with("n", 2), || {
            Ok((true, "1; 1".into(), "1; 1".into()))
        })
        .unwrap()
        .without_timing();
        let line = r.to_json();
        assert_eq!(
            line,
            r#"{"check":"demo","params":{"n":"2","q":"3"},"status":"pass","lhs":"1; 1","rhs":"1; 1","elapsed_ms":0}"#
        );
        assert_eq!(VerificationReport::from_json(&line).unwrap(), r);
        assert!(r.to_string().starts_with("PASS demo [n=2 q=3]"));
    }
}
