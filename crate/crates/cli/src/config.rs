use std::path::Path;

use serde::{Deserialize, Serialize};

use levelforge::arith::is_prime;

use crate::CliError;

/// Settings shared by every subcommand. Unset flags fall back to the config
/// file, then to the defaults below.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub p: u64,
    /// Field size for fiber sweeps; defaults to `p`.
    pub q: Option<u64>,
    /// `p`-adic precision.
    pub n: u32,
    /// Truncation level for `truncated`.
    pub l: u32,
    /// `symbolic` or `s,t`.
    pub chart: String,
    pub order: String,
    pub budget_pairs: Option<usize>,
    pub budget_degree: Option<u32>,
    pub timeout_secs: Option<u64>,
    pub heavy: bool,
    pub json: bool,
    pub seed: u64,
    pub jobs: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            p: 2,
            q: None,
            n: 2,
            l: 2,
            chart: "symbolic".into(),
            order: "degrevlex".into(),
            budget_pairs: None,
            budget_degree: None,
            timeout_secs: None,
            heavy: false,
            json: false,
            seed: 0,
            jobs: None,
        }
    }
}

/// A partially specified config, as read from a file or the command line.
#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Overrides {
    pub p: Option<u64>,
    pub q: Option<u64>,
    pub n: Option<u32>,
    pub l: Option<u32>,
    pub chart: Option<String>,
    pub order: Option<String>,
    pub budget_pairs: Option<usize>,
    pub budget_degree: Option<u32>,
    pub timeout_secs: Option<u64>,
    pub heavy: Option<bool>,
    pub json: Option<bool>,
    pub seed: Option<u64>,
    pub jobs: Option<usize>,
}

impl Overrides {
    /// `key = value` lines (TOML).
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Usage(format!("config file: {e}")))
    }

    /// `self` wins over `other`.
    pub fn over(self, other: Overrides) -> Overrides {
        Overrides {
            p: self.p.or(other.p),
            q: self.q.or(other.q),
            n: self.n.or(other.n),
            l: self.l.or(other.l),
            chart: self.chart.or(other.chart),
            order: self.order.or(other.order),
            budget_pairs: self.budget_pairs.or(other.budget_pairs),
            budget_degree: self.budget_degree.or(other.budget_degree),
            timeout_secs: self.timeout_secs.or(other.timeout_secs),
            heavy: self.heavy.or(other.heavy),
            json: self.json.or(other.json),
            seed: self.seed.or(other.seed),
            jobs: self.jobs.or(other.jobs),
        }
    }

    pub fn resolve(self) -> Result<RunConfig, CliError> {
        let d = RunConfig::default();
        let c = RunConfig {
            p: self.p.unwrap_or(d.p),
            q: self.q,
            n: self.n.unwrap_or(d.n),
            l: self.l.unwrap_or(d.l),
            chart: self.chart.unwrap_or(d.chart),
            order: self.order.unwrap_or(d.order),
            budget_pairs: self.budget_pairs,
            budget_degree: self.budget_degree,
            timeout_secs: self.timeout_secs,
            heavy: self.heavy.unwrap_or(false),
            json: self.json.unwrap_or(false),
            seed: self.seed.unwrap_or(0),
            jobs: self.jobs,
        };
        c.validate()?;
        Ok(c)
    }
}

/// A parsed `--chart` value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChartSpec {
    Symbolic,
    Fiber(i64, i64),
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.p != 0 && !is_prime(self.p) {
            return Err(CliError::Usage(format!("p = {} is not prime", self.p)));
        }
        if let Some(q) = self.q {
            if q != self.p && q != self.p * self.p {
                return Err(CliError::Usage(format!("q = {q} must be p or p^2")));
            }
        }
        if self.n == 0 {
            return Err(CliError::Usage("--n must be positive".into()));
        }
        if self.l == 0 {
            return Err(CliError::Usage("--l must be positive".into()));
        }
        if self.jobs == Some(0) {
            return Err(CliError::Usage("--jobs must be positive".into()));
        }
        if !matches!(self.order.as_str(), "degrevlex" | "lex") {
            return Err(CliError::Usage(format!("unknown monomial order '{}'", self.order)));
        }
        self.chart_spec()?;
        Ok(())
    }

    pub fn chart_spec(&self) -> Result<ChartSpec, CliError> {
        if self.chart == "symbolic" {
            return Ok(ChartSpec::Symbolic);
        }
        let parts: Vec<&str> = self.chart.split(',').map(str::trim).collect();
        match parts.as_slice() {
            [s, t] => match (s.parse(), t.parse()) {
                (Ok(s), Ok(t)) => Ok(ChartSpec::Fiber(s, t)),
                _ => Err(CliError::Usage(format!("bad chart '{}'", self.chart))),
            },
            _ => Err(CliError::Usage(format!("chart must be 'symbolic' or 's,t', got '{}'", self.chart))),
        }
    }

    pub fn q(&self) -> u64 {
        self.q.unwrap_or(self.p)
    }
}
