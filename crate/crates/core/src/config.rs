//! Resource caps shared by the exhaustive routines.

use serde::{Deserialize, Serialize};

/// Upper limits on problem sizes for the exponential-time routines.
///
/// Every cap can be overridden through an environment variable, see
/// [`Caps::from_env`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest vertex count accepted by `reduced_betti`.
    pub betti: usize,
    /// Largest vertex count accepted by the exhaustive d-Leray sweep.
    pub leray: usize,
    /// Largest vertex count for pure combinatorial enumeration.
    pub combinatorial: usize,
    /// Largest ambient dimension for the geometric suites.
    pub geometry_dim: usize,
    /// Largest family size for the geometric realisations in suites.
    pub geometry_n: usize,
    /// Largest family size for nerve extraction.
    pub nerve: usize,
    /// Largest vertex count for which a suite runs the d-Leray certification.
    pub suite_leray: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            betti: 16,
            leray: 14,
            combinatorial: 12,
            geometry_dim: 3,
            geometry_n: 8,
            nerve: 16,
            suite_leray: 9,
        }
    }
}

pub const ENV_BETTI_CAP: &str = "HELLYBENCH_BETTI_CAP";
pub const ENV_LERAY_CAP: &str = "HELLYBENCH_LERAY_CAP";
pub const ENV_COMBINATORIAL_CAP: &str = "HELLYBENCH_COMBINATORIAL_CAP";
pub const ENV_GEOMETRY_DIM_CAP: &str = "HELLYBENCH_GEOMETRY_DIM_CAP";
pub const ENV_GEOMETRY_N_CAP: &str = "HELLYBENCH_GEOMETRY_N_CAP";
pub const ENV_NERVE_CAP: &str = "HELLYBENCH_NERVE_CAP";
pub const ENV_SUITE_LERAY_CAP: &str = "HELLYBENCH_SUITE_LERAY_CAP";

impl Caps {
    /// Defaults, overridden by any of the `HELLYBENCH_*_CAP` variables that
    /// parse as unsigned integers. Malformed values are ignored.
    pub fn from_env() -> Self {
        Self::from_lookup(|key| std::env::var(key).ok())
    }

    pub fn from_lookup(lookup: impl Fn(&str) -> Option<String>) -> Self {
        let mut caps = Caps::default();
        let slots: [(&str, &mut usize); 7] = [
            (ENV_BETTI_CAP, &mut caps.betti),
            (ENV_LERAY_CAP, &mut caps.leray),
            (ENV_COMBINATORIAL_CAP, &mut caps.combinatorial),
            (ENV_GEOMETRY_DIM_CAP, &mut caps.geometry_dim),
            (ENV_GEOMETRY_N_CAP, &mut caps.geometry_n),
            (ENV_NERVE_CAP, &mut caps.nerve),
            (ENV_SUITE_LERAY_CAP, &mut caps.suite_leray),
        ];
        for (key, slot) in slots {
            if let Some(v) = lookup(key).and_then(|s| s.trim().parse().ok()) {
                *slot = v;
            }
        }
        caps
    }
}
