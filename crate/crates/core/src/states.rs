//! Generalized compound states `[Ψ] = Σ_B χ(B) [η₁(B₁)]₁ ⊗ [η₂(B₂)]₂`.
//!
//! `η₁` is expanded over the spin projections of subsystem 1 along `d`,
//! `η₂` over those of subsystem 2 along `f`. The term list is kept alongside
//! the flattened tensor: the matrix route of the expectation engine works on
//! the flattened form, while the limit regressions inspect terms.

use crate::direction::{CompoundLabel, Direction, SpinHalf, B_INDEX};
use crate::error::{Error, Result};
use crate::kernel::{chi, eta_from_z};
use crate::linalg::{FourVector, TwoVector, C64};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StateTerm {
    /// The intermediate pair `B_{αα′} = (m₁, m₂)` along `ẑ`.
    pub basis: (SpinHalf, SpinHalf),
    #[serde(serialize_with = "serialize_c64")]
    pub coefficient: C64,
    pub eta1: TwoVector,
    pub eta2: TwoVector,
}

impl StateTerm {
    pub fn product(&self) -> FourVector {
        self.eta1.kron(&self.eta2).scale(self.coefficient)
    }
}

fn serialize_c64<S: serde::Serializer>(z: &C64, s: S) -> std::result::Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&[z.re, z.im], s)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StateAssembly {
    pub label: CompoundLabel,
    pub d: Direction,
    pub f: Direction,
    /// In `B₁₁, B₁₂, B₂₁, B₂₂` order.
    pub terms: [StateTerm; 4],
    pub tensor: FourVector,
}

impl StateAssembly {
    pub fn nonzero_terms(&self) -> impl Iterator<Item = &StateTerm> {
        self.terms.iter().filter(|t| t.coefficient != C64::new(0.0, 0.0))
    }

    pub fn coefficients(&self) -> [C64; 4] {
        self.terms.map(|t| t.coefficient)
    }
}

pub fn assemble_state(label: &CompoundLabel, d: Direction, f: Direction) -> StateAssembly {
    let eta1 = [eta_from_z(SpinHalf::Plus, d), eta_from_z(SpinHalf::Minus, d)];
    let eta2 = [eta_from_z(SpinHalf::Plus, f), eta_from_z(SpinHalf::Minus, f)];
    let terms = B_INDEX.map(|(m1, m2)| StateTerm {
        basis: (m1, m2),
        coefficient: chi(label, m1, m2),
        eta1: eta1[m1.index()],
        eta2: eta2[m2.index()],
    });
    let tensor = terms
        .iter()
        .map(StateTerm::product)
        .fold(FourVector::ZERO, |acc, t| acc + t);
    StateAssembly { label: *label, d, f, terms, tensor }
}

/// The compound state with its axis along `ẑ`. Requires `label.axis()` to be
/// exactly `(0, 0)`.
pub fn reduce_axis_aligned(
    label: &CompoundLabel,
    d: Direction,
    f: Direction,
) -> Result<StateAssembly> {
    if label.axis() != Direction::Z {
        return Err(Error::Precondition(format!(
            "axis-aligned reduction needs a = (0, 0), got {}",
            label.axis()
        )));
    }
    Ok(assemble_state(label, d, f))
}

/// `G_ij = ⟨Ψ_i, Ψ_j⟩` for states sharing axis and intermediates.
pub fn gram_matrix(states: &[StateAssembly]) -> Result<Vec<Vec<C64>>> {
    if let Some(first) = states.first() {
        let shared = (first.label.axis(), first.d, first.f);
        if let Some(bad) = states.iter().find(|s| (s.label.axis(), s.d, s.f) != shared) {
            return Err(Error::Precondition(format!(
                "gram matrix needs shared (a, d, f); {} with d = {}, f = {} differs",
                bad.label, bad.d, bad.f
            )));
        }
    }
    Ok(states
        .iter()
        .map(|a| states.iter().map(|b| a.tensor.inner(&b.tensor)).collect())
        .collect())
}

/// Unit `η` column along `ẑ` for `m`.
pub fn z_basis(m: SpinHalf) -> TwoVector {
    match m {
        SpinHalf::Plus => TwoVector::new(C64::new(1.0, 0.0), C64::new(0.0, 0.0)),
        SpinHalf::Minus => TwoVector::new(C64::new(0.0, 0.0), C64::new(1.0, 0.0)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn dir(t: f64, p: f64) -> Direction {
        Direction::new(t, p).unwrap()
    }

    fn real4(v: [f64; 4]) -> FourVector {
        FourVector(v.map(|x| C64::new(x, 0.0)))
    }

    #[test]
    fn triplet_up_at_z_is_plus_plus() {
        let l = CompoundLabel::triplet(1, Direction::Z).unwrap();
        let s = assemble_state(&l, Direction::Z, Direction::Z);
        assert_eq!(s.tensor, real4([1.0, 0.0, 0.0, 0.0]));
    }

    #[test]
    fn singlet_at_z_is_antisymmetric_combination() {
        let s = assemble_state(&CompoundLabel::singlet(Direction::Z), Direction::Z, Direction::Z);
        assert_eq!(s.tensor, real4([0.0, FRAC_1_SQRT_2, -FRAC_1_SQRT_2, 0.0]));
    }

    #[test]
    fn generic_triplet_zero_is_normalized() {
        let l = CompoundLabel::triplet(0, dir(1.0, 2.0)).unwrap();
        let s = assemble_state(&l, dir(2.5, 0.3), dir(0.6, 4.4));
        assert!((s.tensor.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn axis_aligned_reduction_keeps_single_terms() {
        let (d, f) = (dir(0.7, 1.1), dir(2.0, 5.0));
        let up = reduce_axis_aligned(&CompoundLabel::triplet(1, Direction::Z).unwrap(), d, f).unwrap();
        let t: Vec<_> = up.nonzero_terms().collect();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].basis, (SpinHalf::Plus, SpinHalf::Plus));
        assert_eq!(t[0].coefficient, C64::new(1.0, 0.0));

        let down = reduce_axis_aligned(&CompoundLabel::triplet(-1, Direction::Z).unwrap(), d, f).unwrap();
        let t: Vec<_> = down.nonzero_terms().collect();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].basis, (SpinHalf::Minus, SpinHalf::Minus));
        assert_eq!(t[0].coefficient, C64::new(-1.0, 0.0));

        let singlet = CompoundLabel::singlet(Direction::Z);
        let reduced = reduce_axis_aligned(&singlet, d, f).unwrap();
        let general = assemble_state(&CompoundLabel::singlet(dir(1.0, 1.0)), d, f);
        assert_eq!(reduced.tensor, general.tensor);
    }

    #[test]
    fn axis_aligned_reduction_rejects_tilted_axis() {
        let l = CompoundLabel::triplet(1, dir(0.1, 0.0)).unwrap();
        assert!(matches!(
            reduce_axis_aligned(&l, Direction::Z, Direction::Z),
            Err(Error::Precondition(_))
        ));
        // φ at the pole is a phase, so (0, φ≠0) is not the reference axis
        let l = CompoundLabel::triplet(1, dir(0.0, 0.5)).unwrap();
        assert!(reduce_axis_aligned(&l, Direction::Z, Direction::Z).is_err());
    }

    #[test]
    fn gram_of_all_four_is_identity() {
        let (a, d, f) = (dir(0.4, 5.1), dir(2.9, 1.0), dir(1.3, 3.3));
        let states: Vec<_> = CompoundLabel::all(a).iter().map(|l| assemble_state(l, d, f)).collect();
        let g = gram_matrix(&states).unwrap();
        for (i, row) in g.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((v - C64::new(want, 0.0)).norm() < 1e-12, "({i},{j}) = {v}");
            }
        }
    }

    #[test]
    fn gram_single_and_pair() {
        let (a, d, f) = (dir(1.4, 0.2), dir(0.5, 0.5), dir(2.2, 6.0));
        let up = assemble_state(&CompoundLabel::triplet(1, a).unwrap(), d, f);
        let g = gram_matrix(std::slice::from_ref(&up)).unwrap();
        assert!((g[0][0] - C64::new(1.0, 0.0)).norm() < 1e-12);

        let singlet = assemble_state(&CompoundLabel::singlet(a), d, f);
        let g = gram_matrix(&[up, singlet]).unwrap();
        assert!(g[0][1].norm() < 1e-12 && g[1][0].norm() < 1e-12);
    }

    #[test]
    fn gram_rejects_mismatched_intermediates() {
        let a = dir(1.0, 1.0);
        let x = assemble_state(&CompoundLabel::singlet(a), Direction::Z, Direction::Z);
        let y = assemble_state(&CompoundLabel::singlet(a), dir(0.3, 0.0), Direction::Z);
        assert!(matches!(gram_matrix(&[x, y]), Err(Error::Precondition(_))));
        assert!(gram_matrix(&[]).unwrap().is_empty());
    }
}
