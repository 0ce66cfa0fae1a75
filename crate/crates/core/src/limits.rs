use crate::error::{Error, Result};

/// Environment variable that overrides the oracle caps.
pub const ORACLE_LIMIT_ENV: &str = "ASZ_ORACLE_LIMIT";

/// Size caps for the exponential-time oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub chi_max_vertices: usize,
    pub bp_max_vertices: usize,
    pub bp_max_edges: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            chi_max_vertices: 16,
            bp_max_vertices: 8,
            bp_max_edges: 20,
        }
    }
}

impl OracleLimits {
    /// Reads [`ORACLE_LIMIT_ENV`], falling back to the defaults when unset.
    pub fn from_env() -> Result<Self> {
        match std::env::var(ORACLE_LIMIT_ENV) {
            Ok(spec) => Self::default().with_overrides(&spec),
            Err(_) => Ok(Self::default()),
        }
    }

    /// Applies an override string.
    ///
    /// A bare integer `N` sets both vertex caps to `N`. Otherwise the string is
    /// a comma separated list of `chi=N`, `bp=N` and `bp_edges=N`.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let parse = |s: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::MalformedInput(format!("bad {ORACLE_LIMIT_ENV} value {s:?}")))
        };
        if let Ok(n) = spec.parse::<usize>() {
            self.chi_max_vertices = n;
            self.bp_max_vertices = n;
            return Ok(self);
        }
        for item in spec.split(',').filter(|s| !s.trim().is_empty()) {
            let (key, value) = item.split_once('=').ok_or_else(|| {
                Error::MalformedInput(format!("bad {ORACLE_LIMIT_ENV} entry {item:?}"))
            })?;
            let value = parse(value)?;
            match key.trim() {
                "chi" => self.chi_max_vertices = value,
                "bp" => self.bp_max_vertices = value,
                "bp_edges" => self.bp_max_edges = value,
                other => {
                    return Err(Error::MalformedInput(format!(
                        "unknown {ORACLE_LIMIT_ENV} key {other:?}"
                    )))
                }
            }
        }
        Ok(self)
    }
}
