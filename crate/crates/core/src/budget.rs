//! Size limits for the combinatorially expensive constructions.
//!
//! `LYU_BUDGET` overrides the defaults with comma-separated `key=value` pairs,
//! e.g. `LYU_BUDGET=taylor=16,vertices=30`. Recognised keys: `taylor`,
//! `vertices`, `degree`, `lattice`, `faces`.

use crate::error::{Error, Result};

pub const BUDGET_ENV: &str = "LYU_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of generators fed to the Taylor complex (2^g terms).
    pub taylor_generators: usize,
    /// Maximum vertex count of a barycentric subdivision.
    pub subdivision_vertices: usize,
    /// Maximum degree for degree-component enumeration.
    pub degree: usize,
    /// Maximum size of an lcm lattice.
    pub lattice: usize,
    /// Maximum number of faces enumerated for a single complex.
    pub faces: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            taylor_generators: 20,
            subdivision_vertices: 32,
            degree: 12,
            lattice: 200_000,
            faces: 1 << 22,
        }
    }
}

impl Budget {
    pub fn from_env() -> Result<Self> {
        match std::env::var(BUDGET_ENV) {
            Ok(s) => Budget::default().with_overrides(&s),
            Err(_) => Ok(Budget::default()),
        }
    }

    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("budget entry `{part}` is not key=value")))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("budget value `{value}` is not an integer")))?;
            match key.trim() {
                "taylor" => self.taylor_generators = value,
                "vertices" => self.subdivision_vertices = value,
                "degree" => self.degree = value,
                "lattice" => self.lattice = value,
                "faces" => self.faces = value,
                other => return Err(Error::Parse(format!("unknown budget key `{other}`"))),
            }
        }
        Ok(self)
    }
}
