use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Search and size limits shared by every exhaustive procedure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Caps {
    /// Largest ring any constructor may produce.
    pub ring_size: usize,
    /// Largest ideal (or submodule) lattice enumerated.
    pub ideal_count: usize,
    /// Largest module handed to the brute-force quasi-projectivity oracle.
    pub oracle_module_size: usize,
    /// Largest minimal generating set handed to the oracle.
    pub oracle_generators: usize,
    /// Largest hom-search space (product of candidate image counts).
    pub candidates: u64,
    /// Degree bound for the polynomial content cross-check.
    pub content_degree: usize,
    /// Largest number of polynomial pairs the content cross-check may visit.
    pub content_pairs: u64,
    /// Rings above this size are skipped by the quadratic-in-ideals suites.
    pub suite_ring_size: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            ring_size: 4096,
            ideal_count: 100_000,
            oracle_module_size: 64,
            oracle_generators: 3,
            candidates: 1_000_000,
            content_degree: 1,
            content_pairs: 1_000_000,
            suite_ring_size: 256,
        }
    }
}

impl Caps {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("ring_size", self.ring_size as u64),
            ("ideal_count", self.ideal_count as u64),
            ("oracle_module_size", self.oracle_module_size as u64),
            ("oracle_generators", self.oracle_generators as u64),
            ("candidates", self.candidates),
            ("content_pairs", self.content_pairs),
            ("suite_ring_size", self.suite_ring_size as u64),
        ];
        for (name, value) in fields {
            if value == 0 {
                return Err(Error::Precondition(format!("cap `{name}` must be positive")));
            }
        }
        if self.ring_size > u16::MAX as usize + 1 {
            return Err(Error::Precondition(format!(
                "ring_size cap {} exceeds the table index width (65536)",
                self.ring_size
            )));
        }
        Ok(())
    }
}
