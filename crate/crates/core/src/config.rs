//! Tunable search caps. Every report echoes the values it ran with.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest bounding box enumerated for zonotope lattice points.
    pub zonotope_box_cap: u64,
    /// Maximum number of elements added during the module-generator closure.
    pub module_iteration_cap: usize,
    /// Highest total degree visited by the conductor search before giving up certification.
    pub conductor_degree_cap: i64,
    /// Largest box enumerated while certifying the conductor search.
    pub certify_box_cap: u64,
    /// Largest multiple tried when reporting radical exponents of an ideal.
    pub power_cap: Option<u64>,
    /// Degree bound for the single-generator search `𝔪 = 𝔠 + (y)`.
    pub witness_degree_cap: i64,
    /// Degree bound for seminormality checks that cannot be made exact.
    pub seminormal_bound: i64,
    /// Entry degree bound for monomial parameter systems.
    pub sop_degree_cap: i64,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            zonotope_box_cap: 1_000_000,
            module_iteration_cap: 100_000,
            conductor_degree_cap: 64,
            certify_box_cap: 1_000_000,
            power_cap: None,
            witness_degree_cap: 8,
            seminormal_bound: 12,
            sop_degree_cap: 6,
        }
    }
}
