//! Closed-form probability amplitudes.
//!
//! - `ξ(p^(i); u^(f))`: spin-1/2 amplitude that a projection `p` known along
//!   `i` is found as `u` along `f`.
//! - `η`: the same amplitudes with the initial axis fixed to `ẑ`.
//! - `ζ(1, M^(a); 1, M_l^(z))`: spin-1 amplitudes from axis `a` to `ẑ`.
//! - `ϑ`: the ½⊗½ Clebsch-Gordan table.
//! - `χ = Σ_l ζ ϑ`: direction-generalized coupling coefficients.
//!
//! The phase convention is fixed: every other module builds on these forms.

use crate::direction::{CompoundLabel, Direction, SpinHalf};
use crate::error::{Error, Result};
use crate::linalg::{TwoByTwo, TwoVector, C64};
use std::f64::consts::FRAC_1_SQRT_2;
use std::sync::atomic::{AtomicBool, Ordering};

static FLIP_KERNEL_SIGN: AtomicBool = AtomicBool::new(false);

/// Test hook: when enabled, [`xi_half`] negates its `(+, −)` entry. Used to
/// check that `spinpair verify` notices a broken kernel. Process-wide.
#[doc(hidden)]
pub fn set_kernel_fault(enabled: bool) {
    FLIP_KERNEL_SIGN.store(enabled, Ordering::SeqCst);
}

/// Spin-1/2 direction-change amplitudes, entry `(p, u) = ξ(p^(initial); u^(final))`.
pub fn xi_half(initial: Direction, final_: Direction) -> TwoByTwo {
    let (si, ci) = (0.5 * initial.theta()).sin_cos();
    let (sf, cf) = (0.5 * final_.theta()).sin_cos();
    let phase = C64::from_polar(1.0, initial.phi() - final_.phi());

    let mut m = TwoByTwo([
        [ci * cf + phase * (si * sf), -ci * sf + phase * (si * cf)],
        [-si * cf + phase * (ci * sf), si * sf + phase * (ci * cf)],
    ]);
    if FLIP_KERNEL_SIGN.load(Ordering::Relaxed) {
        m[(0, 1)] = -m[(0, 1)];
    }
    m
}

/// `[η(m^(ẑ))]` over the basis of `final_`: the `m` row of `ξ(ẑ → final_)`.
pub fn eta_from_z(m: SpinHalf, final_: Direction) -> TwoVector {
    xi_half(Direction::Z, final_).row(m.index())
}

/// Spin-1 magnetic quantum number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Spin1 {
    Plus,
    Zero,
    Minus,
}

impl Spin1 {
    /// `M_l` order used for ζ triples.
    const ORDER: [Spin1; 3] = [Spin1::Plus, Spin1::Zero, Spin1::Minus];

    fn value(self) -> i32 {
        match self {
            Spin1::Plus => 1,
            Spin1::Zero => 0,
            Spin1::Minus => -1,
        }
    }
}

impl TryFrom<i32> for Spin1 {
    type Error = Error;
    fn try_from(m: i32) -> Result<Self> {
        match m {
            1 => Ok(Spin1::Plus),
            0 => Ok(Spin1::Zero),
            -1 => Ok(Spin1::Minus),
            other => Err(Error::InvalidMagnetic(other)),
        }
    }
}

fn zeta_row(m: Spin1, a: Direction) -> [C64; 3] {
    let (s_half, c_half) = (0.5 * a.theta()).sin_cos();
    let (s, c) = a.theta().sin_cos();
    let down = C64::from_polar(1.0, -a.phi());
    let up = C64::from_polar(1.0, a.phi());
    let r2 = FRAC_1_SQRT_2;
    match m {
        Spin1::Plus => [
            down * (c_half * c_half),
            C64::new(r2 * s, 0.0),
            up * (s_half * s_half),
        ],
        Spin1::Zero => [down * (-r2 * s), C64::new(c, 0.0), up * (r2 * s)],
        Spin1::Minus => [
            down * (-s_half * s_half),
            C64::new(r2 * s, 0.0),
            up * (-c_half * c_half),
        ],
    }
}

/// `ζ(1, M^(a); 1, M_l^(ẑ))` for `M_l = +1, 0, −1`, in that order.
pub fn zeta_spin1(m: i32, a: Direction) -> Result<[C64; 3]> {
    Ok(zeta_row(Spin1::try_from(m)?, a))
}

/// `C(½ ½ s; m₁ m₂ M)`.
pub fn clebsch_gordan_half_half(s: i32, m: i32, m1: SpinHalf, m2: SpinHalf) -> Result<f64> {
    if !(0..=1).contains(&s) || m.abs() > s {
        return Err(Error::InvalidLabel { s, m });
    }
    Ok(cg(s, m, m1, m2))
}

fn cg(s: i32, m: i32, m1: SpinHalf, m2: SpinHalf) -> f64 {
    use SpinHalf::{Minus, Plus};
    if m1.twice() + m2.twice() != 2 * m {
        return 0.0;
    }
    match (s, m1, m2) {
        (1, Plus, Plus) | (1, Minus, Minus) => 1.0,
        (1, _, _) => FRAC_1_SQRT_2,
        (0, Plus, Minus) => FRAC_1_SQRT_2,
        (0, Minus, Plus) => -FRAC_1_SQRT_2,
        _ => unreachable!("selection rule admits only the cases above"),
    }
}

/// `χ(s, M^(a); m₁^(ẑ), m₂^(ẑ))`.
///
/// For the triplet this is `Σ_l ζ(1, M^(a); 1, M_l) ϑ(1, M_l; m₁, m₂)`; the
/// singlet is rotation invariant, so its `χ` is the bare coefficient.
pub fn chi(label: &CompoundLabel, m1: SpinHalf, m2: SpinHalf) -> C64 {
    if label.s() == 0 {
        return C64::new(cg(0, 0, m1, m2), 0.0);
    }
    let m = Spin1::try_from(label.m()).expect("validated label");
    let zeta = zeta_row(m, label.axis());
    Spin1::ORDER
        .iter()
        .zip(zeta)
        .map(|(ml, z)| z * cg(1, ml.value(), m1, m2))
        .sum()
}
