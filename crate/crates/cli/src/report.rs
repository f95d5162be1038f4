use serde::Serialize;
use serde_json::Value;

use crate::config::RunConfig;

/// Where an expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Provenance {
    /// A number quoted from the source results being reproduced.
    #[serde(rename = "PUBLISHED")]
    Published,
    /// Independently enumerated or derived.
    #[serde(rename = "DERIVED")]
    Derived,
    /// Follows from general principles (bounds, monotonicity).
    #[serde(rename = "TRIVIAL")]
    Trivial,
}

impl Provenance {
    pub fn tag(self) -> &'static str {
        match self {
            Provenance::Published => "PUBLISHED",
            Provenance::Derived => "DERIVED",
            Provenance::Trivial => "TRIVIAL",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub computed: Value,
    pub expected: Value,
    pub provenance: Provenance,
    pub pass: bool,
}

impl Check {
    /// `computed == expected`.
    pub fn equal<T: Serialize + PartialEq>(name: impl Into<String>, computed: T, expected: T, provenance: Provenance) -> Check {
        let pass = computed == expected;
        Check { name: name.into(), computed: json(&computed), expected: json(&expected), provenance, pass }
    }

    /// A check whose expectation is a description rather than a value.
    pub fn holds<T: Serialize>(name: impl Into<String>, computed: T, expected: &str, provenance: Provenance, pass: bool) -> Check {
        Check { name: name.into(), computed: json(&computed), expected: Value::String(expected.into()), provenance, pass }
    }
}

fn json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub subcommand: String,
    pub config: RunConfig,
    pub checks: Vec<Check>,
    pub runtime_ms: u128,
    pub pass: bool,
    pub version: String,
}

impl VerificationReport {
    pub fn new(subcommand: &str, config: RunConfig, checks: Vec<Check>, runtime_ms: u128) -> Self {
        let pass = !checks.is_empty() && checks.iter().all(|c| c.pass);
        VerificationReport { subcommand: subcommand.into(), config, checks, runtime_ms, pass, version: env!("CARGO_PKG_VERSION").into() }
    }

    /// Canonical JSON: keys sorted at every level.
    pub fn to_json(&self) -> String {
        // serde_json's default map is ordered by key
        let v = serde_json::to_value(self).expect("report is serializable");
        serde_json::to_string_pretty(&v).expect("value is serializable")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.subcommand);
        for c in &self.checks {
            out += &format!(
                "  [{}] {}: computed {}, expected {} [{}]\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.computed,
                c.expected,
                c.provenance.tag()
            );
        }
        out += &format!("{} in {} ms\n", if self.pass { "PASS" } else { "FAIL" }, self.runtime_ms);
        out
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }
}
