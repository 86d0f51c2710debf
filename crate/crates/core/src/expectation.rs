//! Expectation values of factorized observables on the compound states.
//!
//! Two independent routes:
//! - the probability route sums `|Ψ(u, v)|² r⁽¹⁾(u) r⁽²⁾(v)` over the four
//!   outcomes, with `Ψ` expanded through the `ẑ` basis;
//! - the matrix route evaluates `[Ψ]† ([r⁽¹⁾] ⊗ [r⁽²⁾]) [Ψ]` over the
//!   intermediate bases `(d, f)`.
//!
//! Agreement between them, and independence of the matrix route from
//! `(d, f)`, are the main consistency checks of the crate.

use crate::direction::{CompoundLabel, Direction, SpinHalf, B_INDEX};
use crate::error::{Error, Result};
use crate::kernel::{chi, xi_half};
use crate::linalg::{TwoByTwo, C64};
use crate::operators::{operator_pair, MeasurementSpec};
use crate::states::assemble_state;
use crate::tolerance;
use rayon::prelude::*;
use serde::Serialize;

/// `Ψ(A; u^(c₁), v^(c₂)) = Σ_B χ(A; B) ξ(B₁^(ẑ); u^(c₁)) ξ(B₂^(ẑ); v^(c₂))`.
pub fn amplitude_psi(
    label: &CompoundLabel,
    c1: Direction,
    c2: Direction,
    u: SpinHalf,
    v: SpinHalf,
) -> C64 {
    let xi1 = xi_half(Direction::Z, c1);
    let xi2 = xi_half(Direction::Z, c2);
    amplitude_with(label, &xi1, &xi2, u, v)
}

fn amplitude_with(
    label: &CompoundLabel,
    xi1: &TwoByTwo,
    xi2: &TwoByTwo,
    u: SpinHalf,
    v: SpinHalf,
) -> C64 {
    B_INDEX
        .iter()
        .map(|&(m1, m2)| chi(label, m1, m2) * xi1[(m1.index(), u.index())] * xi2[(m2.index(), v.index())])
        .sum()
}

/// Joint outcome probabilities in `(++, +−, −+, −−)` order over `(u, v)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OutcomeProbabilities {
    pub pp: f64,
    pub pm: f64,
    pub mp: f64,
    pub mm: f64,
}

impl OutcomeProbabilities {
    pub fn as_array(&self) -> [f64; 4] {
        [self.pp, self.pm, self.mp, self.mm]
    }

    pub fn get(&self, u: SpinHalf, v: SpinHalf) -> f64 {
        self.as_array()[2 * u.index() + v.index()]
    }

    pub fn total(&self) -> f64 {
        self.as_array().iter().sum()
    }
}

pub fn outcome_probabilities(label: &CompoundLabel, c1: Direction, c2: Direction) -> OutcomeProbabilities {
    let xi1 = xi_half(Direction::Z, c1);
    let xi2 = xi_half(Direction::Z, c2);
    let [pp, pm, mp, mm] =
        B_INDEX.map(|(u, v)| amplitude_with(label, &xi1, &xi2, u, v).norm_sqr());
    OutcomeProbabilities { pp, pm, mp, mm }
}

/// `⟨R⟩ = Σ_{u,v} p(u, v) r⁽¹⁾(u) r⁽²⁾(v)`.
pub fn expectation_oracle(label: &CompoundLabel, spec: &MeasurementSpec) -> f64 {
    let probs = outcome_probabilities(label, spec.c1, spec.c2);
    B_INDEX
        .iter()
        .map(|&(u, v)| probs.get(u, v) * spec.values1.value(u) * spec.values2.value(v))
        .sum()
}

/// `⟨R⟩ = [Ψ]† [R] [Ψ]` over the intermediate bases `(d, f)`.
pub fn expectation_matrix(
    label: &CompoundLabel,
    spec: &MeasurementSpec,
    d: Direction,
    f: Direction,
) -> Result<f64> {
    expectation_matrix_with_tolerance(label, spec, d, f, tolerance::IMAGINARY)
}

/// As [`expectation_matrix`], failing when the imaginary residue exceeds
/// `imaginary_tolerance`.
pub fn expectation_matrix_with_tolerance(
    label: &CompoundLabel,
    spec: &MeasurementSpec,
    d: Direction,
    f: Direction,
    imaginary_tolerance: f64,
) -> Result<f64> {
    let psi = assemble_state(label, d, f).tensor;
    let value = operator_pair(spec, d, f).kron().quadratic_form(&psi);
    let residue = value.im.abs();
    if residue.is_nan() || residue > imaginary_tolerance {
        return Err(Error::ImaginaryResidue { residue, tolerance: imaginary_tolerance });
    }
    Ok(value.re)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExpectationReport {
    /// Matrix route at the first grid point.
    pub value_matrix_path: f64,
    pub value_oracle_path: f64,
    pub probabilities: OutcomeProbabilities,
    /// `|matrix − oracle|` at the first grid point.
    pub residual: f64,
    /// `max − min` of the matrix route over the grid.
    pub basis_invariance_residual: f64,
    pub grid_points: usize,
}

/// Evaluate the matrix route over every `(d, f)` in `grid`.
///
/// Grid points are evaluated in parallel; the reduction is order independent.
pub fn verify_basis_invariance(
    label: &CompoundLabel,
    spec: &MeasurementSpec,
    grid: &[(Direction, Direction)],
) -> Result<ExpectationReport> {
    let Some(&(d0, f0)) = grid.first() else {
        return Err(Error::Precondition("basis-invariance grid is empty".into()));
    };
    let values = grid
        .par_iter()
        .map(|&(d, f)| expectation_matrix(label, spec, d, f))
        .collect::<Result<Vec<f64>>>()?;
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));

    let first = expectation_matrix(label, spec, d0, f0)?;
    let oracle = expectation_oracle(label, spec);
    Ok(ExpectationReport {
        value_matrix_path: first,
        value_oracle_path: oracle,
        probabilities: outcome_probabilities(label, spec.c1, spec.c2),
        residual: (first - oracle).abs(),
        basis_invariance_residual: hi - lo,
        grid_points: grid.len(),
    })
}

/// `E(c₁, c₂)` for spin projections measured on the singlet.
pub fn singlet_correlation(c1: Direction, c2: Direction) -> f64 {
    expectation_oracle(&CompoundLabel::singlet(Direction::Z), &MeasurementSpec::spin_projections(c1, c2))
}

/// CHSH combination `E(a, b) − E(a, b′) + E(a′, b) + E(a′, b′)` of singlet
/// correlations. Its magnitude is bounded by 2 for local models and by 2√2
/// in quantum mechanics.
pub fn chsh_value(a: Direction, a_prime: Direction, b: Direction, b_prime: Direction) -> f64 {
    singlet_correlation(a, b) - singlet_correlation(a, b_prime)
        + singlet_correlation(a_prime, b)
        + singlet_correlation(a_prime, b_prime)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::OutcomeValues;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

    fn dir(t: f64, p: f64) -> Direction {
        Direction::new(t, p).unwrap()
    }

    #[test]
    fn singlet_aligned_plus_plus_vanishes() {
        let s = CompoundLabel::singlet(Direction::Z);
        let amp = amplitude_psi(&s, Direction::Z, Direction::Z, SpinHalf::Plus, SpinHalf::Plus);
        assert_eq!(amp.norm(), 0.0);
    }

    #[test]
    fn singlet_amplitude_is_antisymmetric_combination() {
        let s = CompoundLabel::singlet(dir(0.5, 0.5));
        let (c1, c2) = (dir(1.1, 0.7), dir(2.4, 5.9));
        let (x1, x2) = (xi_half(Direction::Z, c1), xi_half(Direction::Z, c2));
        for (u, v) in B_INDEX {
            let want = FRAC_1_SQRT_2
                * (x1[(0, u.index())] * x2[(1, v.index())] - x1[(1, u.index())] * x2[(0, v.index())]);
            assert!((amplitude_psi(&s, c1, c2, u, v) - want).norm() < 1e-15);
        }
    }

    #[test]
    fn aligned_triplet_has_certain_outcome() {
        let l = CompoundLabel::triplet(1, Direction::Z).unwrap();
        let p = outcome_probabilities(&l, Direction::Z, Direction::Z);
        assert_eq!(p.as_array(), [1.0, 0.0, 0.0, 0.0]);
        let spec = MeasurementSpec::spin_projections(Direction::Z, Direction::Z);
        assert_eq!(expectation_oracle(&l, &spec), 1.0);
    }

    #[test]
    fn singlet_probabilities_against_tilted_second_axis() {
        let s = CompoundLabel::singlet(Direction::Z);
        let t = 1.234;
        let p = outcome_probabilities(&s, Direction::Z, dir(t, 0.0));
        let (sn, cs) = ((t / 2.0).sin().powi(2), (t / 2.0).cos().powi(2));
        let want = [0.5 * sn, 0.5 * cs, 0.5 * cs, 0.5 * sn];
        for (g, w) in p.as_array().iter().zip(want) {
            assert!((g - w).abs() < 1e-15);
        }
    }

    #[test]
    fn unit_values_give_one() {
        let l = CompoundLabel::triplet(0, dir(2.0, 1.0)).unwrap();
        let spec = MeasurementSpec::new(dir(0.3, 0.3), dir(1.3, 4.3), OutcomeValues::unit(), OutcomeValues::unit());
        assert!((expectation_oracle(&l, &spec) - 1.0).abs() < 1e-12);
        let m = expectation_matrix(&l, &spec, dir(2.2, 2.2), dir(0.1, 6.0)).unwrap();
        assert!((m - 1.0).abs() < 1e-12);
    }

    #[test]
    fn routes_agree_on_a_generic_point() {
        let l = CompoundLabel::triplet(-1, dir(0.7, 3.3)).unwrap();
        let spec = MeasurementSpec::new(
            dir(1.9, 0.4),
            dir(0.6, 2.8),
            OutcomeValues::new(1.5, -0.3).unwrap(),
            OutcomeValues::new(-2.0, 0.7).unwrap(),
        );
        let oracle = expectation_oracle(&l, &spec);
        let m = expectation_matrix(&l, &spec, dir(2.5, 5.0), dir(1.0, 0.2)).unwrap();
        assert!((m - oracle).abs() < 1e-10);
    }

    #[test]
    fn singlet_correlation_is_minus_cos() {
        let t = 2.0;
        let spec = MeasurementSpec::spin_projections(Direction::Z, dir(t, 0.0));
        let s = CompoundLabel::singlet(Direction::Z);
        assert!((expectation_oracle(&s, &spec) + t.cos()).abs() < 1e-12);
        let m = expectation_matrix(&s, &spec, Direction::Z, Direction::Z).unwrap();
        assert!((m + t.cos()).abs() < 1e-12);
    }

    #[test]
    fn invariance_report_on_single_point_grid() {
        let l = CompoundLabel::triplet(1, dir(1.0, 1.0)).unwrap();
        let spec = MeasurementSpec::spin_projections(dir(0.2, 0.0), dir(2.0, 1.0));
        let r = verify_basis_invariance(&l, &spec, &[(Direction::Z, Direction::Z)]).unwrap();
        assert_eq!(r.basis_invariance_residual, 0.0);
        assert_eq!(r.grid_points, 1);
        assert!(r.residual < 1e-12);
        assert!(verify_basis_invariance(&l, &spec, &[]).is_err());
    }

    #[test]
    fn chsh_examples() {
        let x = |t: f64| dir(t, 0.0);
        let s = chsh_value(x(0.0), x(FRAC_PI_2), x(FRAC_PI_4), x(3.0 * FRAC_PI_4));
        assert!((s.abs() - 2.0 * 2f64.sqrt()).abs() < 1e-10);

        let (a, b) = (x(0.4), x(1.7));
        assert!((chsh_value(a, a, b, b) - 2.0 * singlet_correlation(a, b)).abs() < 1e-15);
        assert!((chsh_value(a, a, a, a) + 2.0).abs() < 1e-12);
    }
}
