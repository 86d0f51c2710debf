//! Cross-checks against textbook spin algebra built directly with nalgebra:
//! Pauli matrices, Kronecker products and Hermitian eigensolvers.

use nalgebra::{Complex, Matrix2, Matrix4, Vector3, Vector4};
use spinpair::sampling::Sampler;
use spinpair::{
    assemble_state, expectation_matrix, expectation_oracle, operator_pair, CompoundLabel, Direction, MeasurementSpec,
    OutcomeValues, TwoByTwo,
};

type C = Complex<f64>;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

/// `σ · n̂` for the unit vector of `dir`.
fn pauli_along(dir: Direction) -> Matrix2<C> {
    let [x, y, z] = dir.unit_vector();
    Matrix2::new(c(z, 0.0), c(x, -y), c(x, y), c(-z, 0.0))
}

fn to_na(m: &TwoByTwo) -> Matrix2<C> {
    Matrix2::new(m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)])
}

fn unit_vec(d: Direction) -> Vector3<f64> {
    Vector3::from(d.unit_vector())
}

fn state_at_z(label: &CompoundLabel) -> Vector4<C> {
    Vector4::from(assemble_state(label, Direction::Z, Direction::Z).tensor.0)
}

/// Textbook observable for outcome values `(plus, minus)` along `dir`.
fn observable(dir: Direction, v: OutcomeValues) -> Matrix2<C> {
    let mean = 0.5 * (v.plus() + v.minus());
    let half = 0.5 * (v.plus() - v.minus());
    Matrix2::identity() * c(mean, 0.0) + pauli_along(dir) * c(half, 0.0)
}

#[test]
fn states_at_z_are_total_spin_eigenstates() {
    let mut rng = Sampler::new(71);
    let id = Matrix2::<C>::identity();
    for _ in 0..50 {
        let a = rng.direction();
        let sa = pauli_along(a).kronecker(&id) + id.kronecker(&pauli_along(a));
        let sx = pauli_along(Direction::new(std::f64::consts::FRAC_PI_2, 0.0).unwrap());
        let sy = pauli_along(Direction::new(std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2).unwrap());
        let sz = pauli_along(Direction::Z);
        let total = |s: Matrix2<C>| s.kronecker(&id) + id.kronecker(&s);
        // (σ₁ + σ₂)² / 4 = s(s + 1)
        let s2: Matrix4<C> = (total(sx) * total(sx) + total(sy) * total(sy) + total(sz) * total(sz)) * c(0.25, 0.0);
        for label in CompoundLabel::all(a) {
            let psi = state_at_z(&label);
            let m = f64::from(label.m());
            let s = f64::from(label.s());
            assert!((sa * psi - psi * c(2.0 * m, 0.0)).norm() < 1e-12, "{label}");
            assert!((s2 * psi - psi * c(s * (s + 1.0), 0.0)).norm() < 1e-12, "{label}");
        }
    }
}

#[test]
fn singlet_correlation_is_minus_dot_product() {
    let mut rng = Sampler::new(72);
    for _ in 0..200 {
        let (a, c1, c2) = (rng.direction(), rng.direction(), rng.direction());
        let spec = MeasurementSpec::spin_projections(c1, c2);
        let e = expectation_oracle(&CompoundLabel::singlet(a), &spec);
        assert!((e + unit_vec(c1).dot(&unit_vec(c2))).abs() < 1e-12);
    }
}

#[test]
fn expectation_matches_textbook_quadratic_form() {
    let mut rng = Sampler::new(73);
    for _ in 0..300 {
        let (label, spec) = (rng.label(), rng.spec());
        let psi = state_at_z(&label);
        let joint = observable(spec.c1, spec.values1).kronecker(&observable(spec.c2, spec.values2));
        let want = (psi.adjoint() * joint * psi)[(0, 0)].re;
        assert!((expectation_oracle(&label, &spec) - want).abs() < 1e-12);
        let (d, f) = (rng.direction(), rng.direction());
        assert!((expectation_matrix(&label, &spec, d, f).unwrap() - want).abs() < 1e-10);
    }
}

#[test]
fn operators_at_z_are_textbook_observables() {
    let mut rng = Sampler::new(74);
    for _ in 0..300 {
        let spec = rng.spec();
        let pair = operator_pair(&spec, Direction::Z, Direction::Z);
        assert!((to_na(&pair.r1) - observable(spec.c1, spec.values1)).norm() < 1e-14);
        assert!((to_na(&pair.r2) - observable(spec.c2, spec.values2)).norm() < 1e-14);
    }
}

#[test]
fn joint_operator_spectrum_is_outcome_products() {
    let mut rng = Sampler::new(75);
    for _ in 0..200 {
        let spec = rng.spec();
        let pair = operator_pair(&spec, rng.direction(), rng.direction());
        let joint: Matrix4<C> = to_na(&pair.r1).kronecker(&to_na(&pair.r2));
        let mut got: Vec<f64> = joint.symmetric_eigenvalues().iter().copied().collect();
        let (v1, v2) = (spec.values1, spec.values2);
        let mut want = vec![v1.plus() * v2.plus(), v1.plus() * v2.minus(), v1.minus() * v2.plus(), v1.minus() * v2.minus()];
        got.sort_by(f64::total_cmp);
        want.sort_by(f64::total_cmp);
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).abs() < 1e-10, "{got:?} vs {want:?}");
        }
    }
}
