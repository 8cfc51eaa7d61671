//! Deterministic JSON reports and the exit code protocol.

use serde::Serialize;
use serde_json::{Map, Value};

use crate::config::InputError;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// One named claim. `data` fields are flattened into the claim object.
#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub name: String,
    pub status: Status,
    #[serde(flatten)]
    pub data: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Claim {
    pub fn new(name: impl Into<String>, ok: bool) -> Claim {
        Claim { name: name.into(), status: Status::from_bool(ok), data: Map::new(), witness: None }
    }

    pub fn inconclusive(name: impl Into<String>, reason: impl Into<String>) -> Claim {
        let mut c = Claim::new(name, false);
        c.status = Status::Inconclusive;
        c.data.insert("reason".into(), Value::String(reason.into()));
        c
    }

    pub fn with(mut self, key: &str, value: impl Serialize) -> Claim {
        self.data.insert(key.into(), serde_json::to_value(value).expect("serializable"));
        self
    }

    pub fn witness(mut self, w: impl Serialize) -> Claim {
        self.witness = Some(serde_json::to_value(w).expect("serializable"));
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Run parameters echoed at the top of each report.
#[derive(Clone, Debug, Serialize)]
pub struct Header {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suite: Option<String>,
    pub algebra: String,
    pub p: u32,
    pub bound: usize,
    pub object_bound: usize,
    pub subcat: String,
    pub kinds: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    #[serde(flatten)]
    pub header: Header,
    pub status: Status,
    pub summary: Summary,
    /// Objects referred to by index in the claims.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub objects: Vec<Value>,
    pub claims: Vec<Claim>,
}

impl Report {
    pub fn new(header: Header, objects: Vec<Value>, claims: Vec<Claim>) -> Report {
        let mut summary = Summary::default();
        for c in &claims {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Inconclusive => summary.inconclusive += 1,
            }
        }
        let status = if summary.fail > 0 {
            Status::Fail
        } else if summary.inconclusive > 0 {
            Status::Inconclusive
        } else {
            Status::Pass
        };
        Report { header, status, summary, objects, claims }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => EXIT_PASS,
            Status::Fail => EXIT_FAIL,
            Status::Inconclusive => EXIT_INCONCLUSIVE,
        }
    }
}

pub fn to_json(x: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("serializable");
    s.push('\n');
    s
}

/// Exit code for an error that aborted a run before a report could be assembled.
pub fn exit_code_for(err: &anyhow::Error) -> i32 {
    if err.chain().any(|e| e.is::<InputError>() || e.is::<serde_json::Error>()) {
        return EXIT_INPUT;
    }
    for e in err.chain() {
        if let Some(core) = e.downcast_ref::<monocat_core::Error>() {
            use monocat_core::Error::*;
            return match core {
                _ if core.is_inconclusive() => EXIT_INCONCLUSIVE,
                InvalidInput(_) | UnsupportedPrime(_) | NotFiniteDimensional { .. } | NonAssociative { .. } => {
                    EXIT_INPUT
                }
                _ => EXIT_FAIL,
            };
        }
    }
    EXIT_FAIL
}

/// Error document written when a run aborts.
#[derive(Serialize)]
pub struct ErrorReport {
    pub status: &'static str,
    pub exit_code: i32,
    pub error: String,
}
