//! The invariant suite run by `spinpair verify`.
//!
//! Every check is reported separately with its worst residual, the
//! tolerance it was held to and the number of samples. Sampled checks draw
//! from their own seeded stream, so a check's inputs do not depend on which
//! other checks ran.

use crate::direction::{CompoundLabel, Direction, SpinHalf, B_INDEX};
use crate::error::Result;
use crate::expectation::{
    expectation_matrix_with_tolerance, expectation_oracle, outcome_probabilities,
    singlet_correlation, verify_basis_invariance, chsh_value,
};
use crate::kernel::{chi, clebsch_gordan_half_half, xi_half, zeta_spin1};
use crate::linalg::{FourVector, TwoByTwo, TwoVector, C64};
use crate::operators::{r_matrix, MeasurementSpec};
use crate::sampling::Sampler;
use crate::states::{assemble_state, gram_matrix, reduce_axis_aligned, z_basis};
use crate::tolerance::Tolerances;
use serde::Serialize;
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub check: String,
    pub passed: bool,
    pub max_residual: f64,
    pub tolerance: f64,
    pub samples: usize,
    /// Error message when the check could not be evaluated.
    pub error: String,
}

/// Sample counts for the randomized checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepSizes {
    pub kernel: usize,
    pub states: usize,
    pub operators: usize,
    pub oracle: usize,
    pub invariance: usize,
    pub grid_side: usize,
    pub singlet_sweep: usize,
}

impl Default for SweepSizes {
    fn default() -> Self {
        Self {
            kernel: 1000,
            states: 100,
            operators: 1000,
            oracle: 1000,
            invariance: 100,
            grid_side: 5,
            singlet_sweep: 181,
        }
    }
}

pub struct VerificationSuite {
    pub seed: u64,
    pub tolerances: Tolerances,
    pub sizes: SweepSizes,
}

type CheckFn = fn(&VerificationSuite, &mut Sampler) -> Result<(f64, usize)>;

impl VerificationSuite {
    pub fn new(seed: u64, tolerances: Tolerances) -> Self {
        Self { seed, tolerances, sizes: SweepSizes::default() }
    }

    fn checks(&self) -> Vec<(&'static str, f64, CheckFn)> {
        let t = self.tolerances;
        vec![
            ("kernel.unitarity", t.kernel, kernel_unitarity),
            ("kernel.hermiticity", t.kernel, kernel_hermiticity),
            ("kernel.composition", t.kernel, kernel_composition),
            ("kernel.zeta_normalization", t.kernel, zeta_normalization),
            ("kernel.clebsch_gordan_table", t.standard_limit, clebsch_gordan_table),
            ("kernel.chi_completeness", t.kernel, chi_completeness),
            ("states.orthonormality", t.kernel, states_orthonormality),
            ("states.standard_limit", t.standard_limit, states_standard_limit),
            ("states.axis_aligned_limit", t.kernel, states_axis_aligned),
            ("operators.hermiticity", t.kernel, operators_hermiticity),
            ("operators.spectrum", t.spectrum, operators_spectrum),
            ("operators.covariance", t.kernel, operators_covariance),
            ("operators.standard_limit", t.standard_limit, operators_standard_limit),
            ("expectation.probability_completeness", t.kernel, probability_completeness),
            ("expectation.oracle_equivalence", t.expectation, oracle_equivalence),
            ("expectation.basis_invariance", t.expectation, basis_invariance),
            ("singlet.correlation", t.expectation, singlet_sweep),
            ("singlet.chsh", t.expectation, singlet_chsh),
        ]
    }

    pub fn check_names(&self) -> Vec<&'static str> {
        self.checks().into_iter().map(|(name, _, _)| name).collect()
    }

    pub fn run(&self) -> Vec<CheckOutcome> {
        self.checks()
            .into_iter()
            .enumerate()
            .map(|(k, (name, tolerance, f))| {
                let mut sampler = Sampler::new(self.seed.wrapping_add(k as u64));
                match f(self, &mut sampler) {
                    Ok((residual, samples)) => CheckOutcome {
                        check: name.to_string(),
                        passed: residual <= tolerance,
                        max_residual: residual,
                        tolerance,
                        samples,
                        error: String::new(),
                    },
                    Err(e) => CheckOutcome {
                        check: name.to_string(),
                        passed: false,
                        max_residual: f64::MAX,
                        tolerance,
                        samples: 0,
                        error: e.to_string(),
                    },
                }
            })
            .collect()
    }
}

fn max(values: impl IntoIterator<Item = f64>) -> f64 {
    // NaN propagates as a failure
    values.into_iter().fold(0.0, |m, v| if v.is_nan() || m.is_nan() { f64::NAN } else { m.max(v) })
}

fn kernel_unitarity(s: &VerificationSuite, rng: &mut Sampler) -> Result<(f64, usize)> {
    let n = s.sizes.kernel;
    let worst = max((0..n).map(|_| {
        let x = xi_half(rng.direction(), rng.direction());
        (x * x.adjoint()).max_abs_diff(&TwoByTwo::IDENTITY)
    }));
    Ok((worst, n))
}

fn kernel_hermiticity(s: &VerificationSuite, rng: &mut Sampler) -> Result<(f64, usize)> {
    let n = s.sizes.kernel;
    let worst = max((0..n).map(|_| {
        let (i, f) = (rng.direction(), rng.direction());
        xi_half(f, i).max_abs_diff(&xi_half(i, f).adjoint())
    }));
    Ok((worst, n))
}

fn kernel_composition(s: &VerificationSuite, rng: &mut Sampler) -> Result<(f64, usize)> {
    let n = s.sizes.kernel;
    let worst = max((0..n).map(|_| {
        let (a, b, c) = (rng.direction(), rng.direction(), rng.direction());
        xi_half(a, c).max_abs_diff(&(xi_half(a, b) * xi_half(b, c)))
    }));
    Ok((worst, n))
}

fn zeta_normalization(s: &VerificationSuite, rng: &mut Sampler) -> Result<(f64, usize)> {
    let n = s.sizes.kernel;
    let mut worst = 0.0f64;
    for _ in 0..n {
        let a = rng.direction();
        for m in [1, 0, -1] {
            let norm: f64 = zeta_spin1(m, a)?.iter().map(|z| z.norm_sqr()).sum();
            worst = max([worst, (norm - 1.0).abs()]);
        }
    }
    Ok((worst, 3 * n))
}

/// Tabulated ½⊗½ coefficients `(s, M, m₁, m₂) → C`.
pub fn tabulated_clebsch_gordan() -> Vec<(i32, i32, SpinHalf, SpinHalf, f64)> {
    use SpinHalf::{Minus as M, Plus as P};
    let r = FRAC_1_SQRT_2;
    vec![
        (1, 1, P, P, 1.0),
        (1, 0, P, P, 0.0),
        (1, -1, P, P, 0.0),
        (1, 1, P, M, 0.0),
        (1, -1, P, M, 0.0),
        (1, 0, P, M, r),
        (1, 1, M, P, 0.0),
        (1, -1, M, P, 0.0),
        (1, 0, M, P, r),
        (1, 1, M, M, 0.0),
        (1, -1, M, M, 1.0),
        (1, 0, M, M, 0.0),
        (0, 0, P, P, 0.0),
        (0, 0, P, M, r),
        (0, 0, M, P, -r),
        (0, 0, M, M, 0.0),
    ]
}

fn clebsch_gordan_table(_: &VerificationSuite, _: &mut Sampler) -> Result<(f64, usize)> {
    let table = tabulated_clebsch_gordan();
    let mut worst = 0.0f64;
    for &(s, m, m1, m2, want) in &table {
        worst = max([worst, (clebsch_gordan_half_half(s, m, m1, m2)? - want).abs()]);
    }
    Ok((worst, table.len()))
}

fn chi_completeness(s: &VerificationSuite, rng: &mut Sampler) -> Result<(f64, usize)> {
    let n = s.sizes.kernel;
    let mut worst = 0.0f64;
    for _ in 0..n {
        for label in CompoundLabel::all(rng.direction()) {
            let total: f64 = B_INDEX.iter().map(|&(m1, m2)| chi(&label, m1, m2).norm_sqr()).sum();
            worst = max([worst, (total - 1.0).abs()]);
        }
    }
    Ok((worst, 4 * n))
}

fn states_orthonormality(s: &VerificationSuite, rng: &mut Sampler) -> Result<(f64, usize)> {
    let n = s.sizes.states;
    let mut worst = 0.0f64;
    for _ in 0..n {
        let (a, d, f) = (rng.direction(), rng.direction(), rng.direction());
        let states: Vec<_> = CompoundLabel::all(a).iter().map(|l| assemble_state(l, d, f)).collect();
        for (i, row) in gram_matrix(&states)?.iter().enumerate() {
            for (j, g) in row.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                worst = max([worst, (g - C64::new(want, 0.0)).norm()]);
            }
        }
    }
    Ok((worst, n))
}

fn real4(v: [f64; 4]) -> FourVector {
    FourVector(v.map(|x| C64::new(x, 0.0)))
}

/// Standard spin-addition states in `(++, +−, −+, −−)` order, for
/// `(1,+1), (1,0), (1,−1), (0,0)`.
pub fn standard_states() -> [FourVector; 4] {
    let r = FRAC_1_SQRT_2;
    [
        real4([1.0, 0.0, 0.0, 0.0]),
        real4([0.0, r, r, 0.0]),
        real4([0.0, 0.0, 0.0, -1.0]),
        real4([0.0, r, -r, 0.0]),
    ]
}

fn states_standard_limit(_: &VerificationSuite, _: &mut Sampler) -> Result<(f64, usize)> {
    let mut worst = 0.0f64;
    for (label, want) in CompoundLabel::all(Direction::Z).iter().zip(standard_states()) {
        let state = assemble_state(label, Direction::Z, Direction::Z);
        worst = max([worst, state.tensor.max_abs_diff(&want)]);
        for term in &state.terms {
            worst = max([
                worst,
                term.eta1.max_abs_diff(&z_basis(term.basis.0)),
                term.eta2.max_abs_diff(&z_basis(term.basis.1)),
            ]);
        }
    }
    Ok((worst, 4))
}

/// `[η((±½)^(ẑ))]` over the basis along `g`, written out from the half angles.
pub fn eta_closed_form(m: SpinHalf, g: Direction) -> TwoVector {
    let (s, c) = (0.5 * g.theta()).sin_cos();
    match m {
        SpinHalf::Plus => TwoVector::new(C64::new(c, 0.0), C64::new(-s, 0.0)),
        SpinHalf::Minus => TwoVector::new(C64::from_polar(s, -g.phi()), C64::from_polar(c, -g.phi())),
    }
}

/// Coefficients of the axis-aligned states on `B₁₁, B₁₂, B₂₁, B₂₂`.
pub fn axis_aligned_coefficients(label: &CompoundLabel) -> [f64; 4] {
    let r = FRAC_1_SQRT_2;
    match (label.s(), label.m()) {
        (1, 1) => [1.0, 0.0, 0.0, 0.0],
        (1, 0) => [0.0, r, r, 0.0],
        (1, -1) => [0.0, 0.0, 0.0, -1.0],
        _ => [0.0, r, -r, 0.0],
    }
}

fn states_axis_aligned(s: &VerificationSuite, rng: &mut Sampler) -> Result<(f64, usize)> {
    let n = s.sizes.states;
    let mut worst = 0.0f64;
    for _ in 0..n {
        let (d, f) = (rng.direction(), rng.direction());
        for label in CompoundLabel::all(Direction::Z) {
            let state = reduce_axis_aligned(&label, d, f)?;
            let coeffs = axis_aligned_coefficients(&label);
            let mut expected = FourVector::ZERO;
            for (term, &k) in state.terms.iter().zip(&coeffs) {
                let e1 = eta_closed_form(term.basis.0, d);
                let e2 = eta_closed_form(term.basis.1, f);
                worst = max([
                    worst,
                    (term.coefficient - C64::new(k, 0.0)).norm(),
                    term.eta1.max_abs_diff(&e1),
                    term.eta2.max_abs_diff(&e2),
                ]);
                expected = expected + e1.kron(&e2).scale(C64::new(k, 0.0));
            }
            worst = max([worst, state.tensor.max_abs_diff(&expected)]);
        }
    }
    Ok((worst, 4 * n))
}

fn operators_hermiticity(s: &VerificationSuite, rng: &mut Sampler) -> Result<(f64, usize)> {
    let n = s.sizes.operators;
    let worst = max((0..n).map(|_| {
        let r = r_matrix(rng.direction(), rng.direction(), rng.outcome_values());
        r.max_abs_diff(&r.adjoint())
    }));
    Ok((worst, n))
}

fn operators_spectrum(s: &VerificationSuite, rng: &mut Sampler) -> Result<(f64, usize)> {
    let n = s.sizes.operators;
    let worst = max((0..n).map(|_| {
        let v = rng.outcome_values();
        let (hi, lo) = r_matrix(rng.direction(), rng.direction(), v).hermitian_eigenvalues();
        let (want_hi, want_lo) = (v.plus().max(v.minus()), v.plus().min(v.minus()));
        (hi - want_hi).abs().max((lo - want_lo).abs())
    }));
    Ok((worst, n))
}

fn operators_covariance(s: &VerificationSuite, rng: &mut Sampler) -> Result<(f64, usize)> {
    let n = s.sizes.operators;
    let worst = max((0..n).map(|_| {
        let (d, d2, c, v) = (rng.direction(), rng.direction(), rng.direction(), rng.outcome_values());
        // the element rule conjugates the basis-change amplitudes:
        // r(d′) = V r(d) V† with V = conj(ξ(d′ → d))
        let u = xi_half(d2, d);
        let v_mat = TwoByTwo(u.0.map(|row| row.map(|z| z.conj())));
        let moved = v_mat * r_matrix(d, c, v) * v_mat.adjoint();
        r_matrix(d2, c, v).max_abs_diff(&moved)
    }));
    Ok((worst, n))
}

/// `((cos θ, sin θ e^{−iφ}), (sin θ e^{iφ}, −cos θ))`.
pub fn standard_operator(c: Direction) -> TwoByTwo {
    let (s, co) = c.theta().sin_cos();
    TwoByTwo([
        [C64::new(co, 0.0), C64::from_polar(s, -c.phi())],
        [C64::from_polar(s, c.phi()), C64::new(-co, 0.0)],
    ])
}

fn operators_standard_limit(s: &VerificationSuite, rng: &mut Sampler) -> Result<(f64, usize)> {
    let n = s.sizes.operators;
    let worst = max((0..n).map(|_| {
        let c = rng.direction();
        crate::operators::spin_projection_operator(Direction::Z, c).max_abs_diff(&standard_operator(c))
    }));
    Ok((worst, n))
}

fn probability_completeness(s: &VerificationSuite, rng: &mut Sampler) -> Result<(f64, usize)> {
    let n = s.sizes.oracle;
    let worst = max((0..n).map(|_| {
        let label = rng.label();
        let p = outcome_probabilities(&label, rng.direction(), rng.direction());
        let range_violation = p
            .as_array()
            .iter()
            .map(|&x| (-x).max(x - 1.0).max(0.0))
            .fold(0.0, f64::max);
        (p.total() - 1.0).abs().max(range_violation)
    }));
    Ok((worst, n))
}

fn oracle_equivalence(s: &VerificationSuite, rng: &mut Sampler) -> Result<(f64, usize)> {
    let n = s.sizes.oracle;
    let mut worst = 0.0f64;
    for _ in 0..n {
        let label = rng.label();
        let spec = rng.spec();
        let (d, f) = (rng.direction(), rng.direction());
        let m = expectation_matrix_with_tolerance(&label, &spec, d, f, s.tolerances.imaginary)?;
        worst = max([worst, (m - expectation_oracle(&label, &spec)).abs()]);
    }
    Ok((worst, n))
}

fn basis_invariance(s: &VerificationSuite, rng: &mut Sampler) -> Result<(f64, usize)> {
    let n = s.sizes.invariance;
    let mut worst = 0.0f64;
    for _ in 0..n {
        let label = rng.label();
        let spec = rng.spec();
        let grid = rng.intermediate_grid(s.sizes.grid_side);
        let report = verify_basis_invariance(&label, &spec, &grid)?;
        worst = max([worst, report.basis_invariance_residual, report.residual]);
    }
    Ok((worst, n))
}

fn singlet_sweep(s: &VerificationSuite, rng: &mut Sampler) -> Result<(f64, usize)> {
    let steps = s.sizes.singlet_sweep;
    let singlet = CompoundLabel::singlet(Direction::Z);
    let mut worst = 0.0f64;
    for k in 0..steps {
        let theta = PI * k as f64 / (steps - 1) as f64;
        let c2 = Direction::new(theta, 0.0)?;
        let spec = MeasurementSpec::spin_projections(Direction::Z, c2);
        let m = expectation_matrix_with_tolerance(&singlet, &spec, Direction::Z, Direction::Z, s.tolerances.imaginary)?;
        worst = max([
            worst,
            (singlet_correlation(Direction::Z, c2) + theta.cos()).abs(),
            (m + theta.cos()).abs(),
        ]);
    }
    // arbitrary axis pairs: E depends on the enclosed angle only
    for _ in 0..steps {
        let (c1, c2) = (rng.direction(), rng.direction());
        worst = max([worst, (singlet_correlation(c1, c2) + c1.angle_to(&c2).cos()).abs()]);
    }
    Ok((worst, 2 * steps))
}

fn singlet_chsh(_: &VerificationSuite, _: &mut Sampler) -> Result<(f64, usize)> {
    let x = |t: f64| Direction::new(t, 0.0);
    let value = chsh_value(x(0.0)?, x(FRAC_PI_2)?, x(FRAC_PI_4)?, x(3.0 * FRAC_PI_4)?);
    Ok(((value.abs() - 2.0 * 2f64.sqrt()).abs(), 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_suite_passes() {
        let suite = VerificationSuite::new(42, Tolerances::default());
        let results = suite.run();
        assert_eq!(results.len(), suite.check_names().len());
        for r in &results {
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn zero_tolerance_fails_sampled_checks() {
        let tight = Tolerances { kernel: 0.0, ..Tolerances::default() };
        let mut suite = VerificationSuite::new(1, tight);
        suite.sizes.kernel = 50;
        let results = suite.run();
        let unitarity = results.iter().find(|r| r.check == "kernel.unitarity").unwrap();
        assert!(!unitarity.passed);
    }

    #[test]
    fn tabulated_table_has_sixteen_entries_obeying_selection_rule() {
        let t = tabulated_clebsch_gordan();
        assert_eq!(t.len(), 16);
        for (_, m, m1, m2, c) in t {
            if m1.twice() + m2.twice() != 2 * m {
                assert_eq!(c, 0.0);
            }
        }
    }
}
