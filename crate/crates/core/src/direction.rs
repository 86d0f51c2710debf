//! Measurement axes and quantum-number labels.

use crate::error::{Error, Result};
use serde::Serialize;
use std::f64::consts::{PI, TAU};
use std::fmt;

/// A unit vector given by polar angles, canonicalized to `θ ∈ [0, π]`,
/// `φ ∈ [0, 2π)`.
///
/// Canonicalization applies `θ ↦ θ mod 2π` and, for `θ > π`, the
/// identification `(θ, φ) ≡ (2π − θ, φ + π)`. At the poles `φ` is kept as
/// given: it enters the amplitudes as a phase.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Direction {
    theta: f64,
    phi: f64,
}

impl Direction {
    /// The `z` axis, `(0, 0)`.
    pub const Z: Direction = Direction { theta: 0.0, phi: 0.0 };

    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::NonFinite { what: "polar angle", value: theta });
        }
        if !phi.is_finite() {
            return Err(Error::NonFinite { what: "azimuthal angle", value: phi });
        }
        let mut theta = wrap_tau(theta);
        let mut phi = phi;
        if theta > PI {
            theta = TAU - theta;
            phi += PI;
        }
        Ok(Self { theta, phi: wrap_tau(phi) })
    }

    /// Angles in degrees, canonicalized like [`Direction::new`].
    pub fn from_degrees(theta: f64, phi: f64) -> Result<Self> {
        Self::new(theta.to_radians(), phi.to_radians())
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Cartesian unit vector.
    pub fn unit_vector(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    /// Angle between the two axes, in `[0, π]`.
    pub fn angle_to(&self, other: &Direction) -> f64 {
        let a = self.unit_vector();
        let b = other.unit_vector();
        let dot: f64 = a.iter().zip(&b).map(|(x, y)| x * y).sum();
        let cross = [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ];
        let sin = cross.iter().map(|x| x * x).sum::<f64>().sqrt();
        sin.atan2(dot)
    }

    /// Rotate about `z` by `angle`.
    pub fn rotated_about_z(&self, angle: f64) -> Result<Self> {
        Self::new(self.theta, self.phi + angle)
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.theta, self.phi)
    }
}

fn wrap_tau(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    // rem_euclid of a tiny negative number rounds up to TAU itself
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Spin projection `±½` of one spin-1/2 subsystem along some axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpinHalf {
    Plus,
    Minus,
}

impl SpinHalf {
    pub const BOTH: [SpinHalf; 2] = [SpinHalf::Plus, SpinHalf::Minus];

    /// Row/column index in the outcome basis.
    pub const fn index(self) -> usize {
        match self {
            SpinHalf::Plus => 0,
            SpinHalf::Minus => 1,
        }
    }

    /// Twice the projection, `±1`.
    pub const fn twice(self) -> i32 {
        match self {
            SpinHalf::Plus => 1,
            SpinHalf::Minus => -1,
        }
    }

    pub fn projection(self) -> f64 {
        0.5 * f64::from(self.twice())
    }
}

/// The intermediate pairs `B₁₁, B₁₂, B₂₁, B₂₂` in the fixed layout order.
pub const B_INDEX: [(SpinHalf, SpinHalf); 4] = [
    (SpinHalf::Plus, SpinHalf::Plus),
    (SpinHalf::Plus, SpinHalf::Minus),
    (SpinHalf::Minus, SpinHalf::Plus),
    (SpinHalf::Minus, SpinHalf::Minus),
];

/// Total spin `s`, projection `M` along `axis`.
///
/// For ½⊗½ the allowed totals are `|½ − ½| ≤ s ≤ ½ + ½`, i.e. `s ∈ {0, 1}`,
/// and `|M| ≤ s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CompoundLabel {
    s: u8,
    #[serde(rename = "M")]
    m: i8,
    axis: Direction,
}

impl CompoundLabel {
    pub fn new(s: i32, m: i32, axis: Direction) -> Result<Self> {
        if !(0..=1).contains(&s) || m.abs() > s {
            return Err(Error::InvalidLabel { s, m });
        }
        Ok(Self { s: s as u8, m: m as i8, axis })
    }

    pub fn triplet(m: i32, axis: Direction) -> Result<Self> {
        Self::new(1, m, axis)
    }

    pub fn singlet(axis: Direction) -> Self {
        Self { s: 0, m: 0, axis }
    }

    /// The four compound states `(1,+1), (1,0), (1,−1), (0,0)` sharing `axis`.
    pub fn all(axis: Direction) -> [CompoundLabel; 4] {
        [
            Self { s: 1, m: 1, axis },
            Self { s: 1, m: 0, axis },
            Self { s: 1, m: -1, axis },
            Self { s: 0, m: 0, axis },
        ]
    }

    pub fn s(&self) -> i32 {
        i32::from(self.s)
    }

    pub fn m(&self) -> i32 {
        i32::from(self.m)
    }

    pub fn axis(&self) -> Direction {
        self.axis
    }

    pub fn with_axis(&self, axis: Direction) -> Self {
        Self { axis, ..*self }
    }
}

impl fmt::Display for CompoundLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(s={}, M={:+}, a={})", self.s, self.m, self.axis)
    }
}
