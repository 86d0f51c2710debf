//! Absolute tolerances used by the verification suite and the matrix route.

use serde::{Deserialize, Serialize};

/// Closed-form identities evaluated in double precision.
pub const KERNEL: f64 = 1e-12;
/// Expectation-value agreement between routes and across intermediate bases.
pub const EXPECTATION: f64 = 1e-10;
/// Eigenvalue agreement for the 2×2 observables.
pub const SPECTRUM: f64 = 1e-10;
/// Standard-form regressions at a = d = f = ẑ.
pub const STANDARD_LIMIT: f64 = 1e-15;
/// Imaginary residue tolerated on `Ψ† R Ψ` before it is discarded.
pub const IMAGINARY: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub kernel: f64,
    pub expectation: f64,
    pub spectrum: f64,
    pub standard_limit: f64,
    pub imaginary: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            kernel: KERNEL,
            expectation: EXPECTATION,
            spectrum: SPECTRUM,
            standard_limit: STANDARD_LIMIT,
            imaginary: IMAGINARY,
        }
    }
}
