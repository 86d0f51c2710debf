//! Generalized single-subsystem observables.
//!
//! For a quantity taking value `r(u)` when the projection along the
//! measured axis `c` is `u`, the operator over the intermediate basis `d` is
//!
//! `r_{pp′} = Σ_u ξ*(p^(d); u^(c)) r(u) ξ(p′^(d); u^(c))`.
//!
//! The same kernel serves both subsystems: subsystem 2 uses `f` and `c₂` in
//! place of `d` and `c₁`.

use crate::direction::{Direction, SpinHalf};
use crate::error::{Error, Result};
use crate::kernel::xi_half;
use crate::linalg::{FourByFour, TwoByTwo, C64};
use serde::Serialize;

/// Values assigned to the `+½` and `−½` outcomes along the measured axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OutcomeValues {
    plus: f64,
    minus: f64,
}

impl OutcomeValues {
    pub fn new(plus: f64, minus: f64) -> Result<Self> {
        for v in [plus, minus] {
            if !v.is_finite() {
                return Err(Error::NonFinite { what: "outcome value", value: v });
            }
        }
        Ok(Self { plus, minus })
    }

    /// `±1` for projection up/down.
    pub const fn spin_projection() -> Self {
        Self { plus: 1.0, minus: -1.0 }
    }

    pub const fn unit() -> Self {
        Self { plus: 1.0, minus: 1.0 }
    }

    pub fn plus(&self) -> f64 {
        self.plus
    }

    pub fn minus(&self) -> f64 {
        self.minus
    }

    pub fn value(&self, u: SpinHalf) -> f64 {
        match u {
            SpinHalf::Plus => self.plus,
            SpinHalf::Minus => self.minus,
        }
    }
}

/// Measured axes `ĉ₁`, `ĉ₂` and the factorized `R = r⁽¹⁾ r⁽²⁾`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasurementSpec {
    pub c1: Direction,
    pub c2: Direction,
    pub values1: OutcomeValues,
    pub values2: OutcomeValues,
}

impl MeasurementSpec {
    pub fn new(c1: Direction, c2: Direction, values1: OutcomeValues, values2: OutcomeValues) -> Self {
        Self { c1, c2, values1, values2 }
    }

    /// Spin projections (`±1`) on both subsystems.
    pub fn spin_projections(c1: Direction, c2: Direction) -> Self {
        Self::new(c1, c2, OutcomeValues::spin_projection(), OutcomeValues::spin_projection())
    }
}

pub fn r_matrix(intermediate: Direction, measured: Direction, values: OutcomeValues) -> TwoByTwo {
    let xi = xi_half(intermediate, measured);
    let mut r = TwoByTwo::IDENTITY;
    for p in 0..2 {
        for pp in 0..2 {
            r[(p, pp)] = SpinHalf::BOTH
                .iter()
                .map(|&u| xi[(p, u.index())].conj() * values.value(u) * xi[(pp, u.index())])
                .sum::<C64>();
        }
    }
    r
}

/// `r_matrix` with the spin-projection values `(+1, −1)`.
pub fn spin_projection_operator(intermediate: Direction, measured: Direction) -> TwoByTwo {
    r_matrix(intermediate, measured, OutcomeValues::spin_projection())
}

/// `[r⁽¹⁾]₁` over `d` and `[r⁽²⁾]₂` over `f`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OperatorPair {
    pub r1: TwoByTwo,
    pub r2: TwoByTwo,
}

impl OperatorPair {
    /// `[R] = [r⁽¹⁾] ⊗ [r⁽²⁾]` on the four-component states.
    pub fn kron(&self) -> FourByFour {
        self.r1.kron(&self.r2)
    }
}

pub fn operator_pair(spec: &MeasurementSpec, d: Direction, f: Direction) -> OperatorPair {
    OperatorPair {
        r1: r_matrix(d, spec.c1, spec.values1),
        r2: r_matrix(f, spec.c2, spec.values2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dir(t: f64, p: f64) -> Direction {
        Direction::new(t, p).unwrap()
    }

    /// Standard form `((cos θ, sin θ e^{−iφ}), (sin θ e^{iφ}, −cos θ))`.
    fn standard(c: Direction) -> TwoByTwo {
        let (s, co) = c.theta().sin_cos();
        TwoByTwo([
            [C64::new(co, 0.0), C64::from_polar(s, -c.phi())],
            [C64::from_polar(s, c.phi()), C64::new(-co, 0.0)],
        ])
    }

    #[test]
    fn z_intermediate_gives_standard_form() {
        for &(t, p) in &[(0.3, 0.0), (1.9, 4.0), (3.0, 2.2)] {
            let c = dir(t, p);
            let r = r_matrix(Direction::Z, c, OutcomeValues::spin_projection());
            assert!(r.max_abs_diff(&standard(c)) <= 1e-15, "{c}");
        }
    }

    #[test]
    fn unit_values_give_identity() {
        let r = r_matrix(dir(0.8, 1.5), dir(2.6, 0.1), OutcomeValues::unit());
        assert!(r.max_abs_diff(&TwoByTwo::IDENTITY) < 1e-15);
    }

    #[test]
    fn diagonal_entry_matches_closed_form() {
        let (d, c) = (dir(1.2, 0.4), dir(0.5, 2.9));
        let r = spin_projection_operator(d, c);
        let want = (d.theta() - c.theta()).cos()
            - 2.0 * d.theta().sin() * c.theta().sin() * (0.5 * (d.phi() - c.phi())).sin().powi(2);
        assert!((r[(0, 0)] - C64::new(want, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn spin_projection_structure() {
        let c = dir(1.0, 1.0);
        let r = spin_projection_operator(c, c);
        assert!(r.max_abs_diff(&TwoByTwo::diag(1.0, -1.0)) < 1e-15);

        let r = spin_projection_operator(dir(2.1, 5.2), dir(0.4, 0.9));
        assert!((r[(1, 1)] + r[(0, 0)]).norm() < 1e-15);
        assert!((r[(1, 0)] - r[(0, 1)].conj()).norm() < 1e-15);
        assert!(r.trace().norm() < 1e-15);
        assert!((r.det() + C64::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn pair_uses_each_subsystem_own_intermediate() {
        let spec = MeasurementSpec::new(
            dir(0.9, 0.2),
            dir(2.0, 3.0),
            OutcomeValues::new(2.0, -0.5).unwrap(),
            OutcomeValues::new(1.0, 3.0).unwrap(),
        );
        let (d, f) = (dir(0.1, 0.1), dir(1.5, 4.0));
        let pair = operator_pair(&spec, d, f);
        assert_eq!(pair.r1, r_matrix(d, spec.c1, spec.values1));
        assert_eq!(pair.r2, r_matrix(f, spec.c2, spec.values2));

        let unit = MeasurementSpec::new(spec.c1, spec.c2, OutcomeValues::unit(), OutcomeValues::unit());
        let pair = operator_pair(&unit, d, f);
        assert!(pair.r1.max_abs_diff(&TwoByTwo::IDENTITY) < 1e-15);
        assert!(pair.r2.max_abs_diff(&TwoByTwo::IDENTITY) < 1e-15);
    }

    #[test]
    fn non_finite_values_rejected() {
        assert!(OutcomeValues::new(f64::NAN, 1.0).is_err());
        assert!(OutcomeValues::new(1.0, f64::NEG_INFINITY).is_err());
    }
}
