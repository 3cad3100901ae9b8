//! Explicit work limits. Exceeding one is always an error.

use crate::error::{Error, Result};

/// Name of the environment variable that overrides the default budgets.
pub const BUDGET_ENV: &str = "GRASSCODE_BUDGET";

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Upper bound on Grassmannian points visited by one enumeration.
    pub max_points: u64,
    /// Upper bound on messages, hyperplanes or subspaces visited by one scan.
    pub max_scans: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_points: 1_000_000,
            max_scans: 1 << 26,
        }
    }
}

impl Budget {
    /// Parses `N` (both limits) or `points=N,scans=M` (either key optional)
    /// on top of `self`.
    pub fn with_overrides(mut self, spec: &str) -> Result<Budget> {
        let spec = spec.trim();
        if spec.is_empty() {
            return Ok(self);
        }
        if let Ok(n) = spec.parse::<u64>() {
            self.max_points = n;
            self.max_scans = n;
            return self.validated();
        }
        for part in spec.split(',') {
            let (key, val) = part
                .split_once('=')
                .ok_or_else(|| Error::parse(format!("bad budget entry {part:?}")))?;
            let n: u64 = val
                .trim()
                .parse()
                .map_err(|_| Error::parse(format!("bad budget value {val:?}")))?;
            match key.trim() {
                "points" => self.max_points = n,
                "scans" => self.max_scans = n,
                other => return Err(Error::parse(format!("unknown budget key {other:?}"))),
            }
        }
        self.validated()
    }

    /// Defaults overridden by `GRASSCODE_BUDGET` when set.
    pub fn from_env() -> Result<Budget> {
        match std::env::var(BUDGET_ENV) {
            Ok(v) => Budget::default().with_overrides(&v),
            Err(_) => Ok(Budget::default()),
        }
    }

    fn validated(self) -> Result<Budget> {
        if self.max_points == 0 || self.max_scans == 0 {
            return Err(Error::InvalidArgument("budgets must be positive".into()));
        }
        Ok(self)
    }
}
