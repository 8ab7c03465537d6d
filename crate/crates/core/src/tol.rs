//! Centralized numerical tolerances.
//!
//! Identity checks run at machine-precision scales; inequality checks carry a
//! small multiplicative slack that absorbs float rounding only — quadrature
//! discretization needs no slack because both sides of every inequality are
//! computed in the same discrete measure.

/// Relative tolerance for exact identities routed through transforms
/// (Plancherel, inversion, energy partitions).
pub const REL_IDENTITY: f64 = 1e-10;

/// Relative tolerance for transform unitarity in pure-discrete mode.
pub const UNITARITY: f64 = 1e-11;

/// Max-abs deviation allowed between the fast transform paths and the
/// quadruple-loop oracle on unit-norm inputs.
pub const ORACLE_MAX_ABS: f64 = 1e-10;

/// Multiplicative slack for inequality checks.
pub const INEQ_SLACK: f64 = 1e-9;

/// Additive slack for the concentration lower bound `1 - ε <= m(Σ)`.
pub const CONCENTRATION_SLACK: f64 = 1e-9;

/// Allowed deviation of total phase-space energy from 1 for checks that
/// require unit-normalized inputs.
pub const UNIT_ENERGY: f64 = 1e-6;

/// Idempotence and reproducing-property tolerance for the range projection.
pub const PROJECTION_REL: f64 = 1e-9;

/// Agreement between power iteration and the dense eigensolve oracle, and the
/// allowed excess of rho over 1.
pub const RHO_TOL: f64 = 1e-6;

/// Slack factor for the alternating-projection decay bound.
pub const DECAY_SLACK: f64 = 1e-6;

/// Default power-iteration convergence threshold on the Rayleigh quotient.
pub const POWER_ITER_TOL: f64 = 1e-12;

/// Default power-iteration budget.
pub const POWER_ITER_MAX: usize = 2000;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    #[allow(clippy::assertions_on_constants)] // constants sanity check
    fn tolerances_are_positive_and_ordered() {
        assert!(UNITARITY < REL_IDENTITY);
        assert!(REL_IDENTITY < INEQ_SLACK);
        assert!(INEQ_SLACK < RHO_TOL);
        for t in [
            REL_IDENTITY,
            UNITARITY,
            ORACLE_MAX_ABS,
            INEQ_SLACK,
            CONCENTRATION_SLACK,
            UNIT_ENERGY,
            PROJECTION_REL,
            RHO_TOL,
            DECAY_SLACK,
            POWER_ITER_TOL,
        ] {
            assert!(t > 0.0);
        }
    }
}
