//! Fixed-size complex vectors and matrices over the spin-1/2 outcome basis.
//!
//! Index 0 is the `+½` outcome and index 1 the `−½` outcome. Four-component
//! objects use subsystem-1 major order: `(++, +−, −+, −−)`.
//!
//! Complex entries serialize as two-element `[re, im]` arrays.

use num_complex::Complex64;
use serde::ser::{Serialize, SerializeSeq, Serializer};
use std::ops::{Add, Index, IndexMut, Mul};

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Largest `|a − b|` over paired entries.
fn max_abs_diff<'a>(a: impl IntoIterator<Item = &'a C64>, b: impl IntoIterator<Item = &'a C64>) -> f64 {
    a.into_iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn all_finite<'a>(entries: impl IntoIterator<Item = &'a C64>) -> bool {
    entries.into_iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

struct ComplexPair<'a>(&'a C64);

impl Serialize for ComplexPair<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        [self.0.re, self.0.im].serialize(serializer)
    }
}

fn serialize_row<S: Serializer>(row: &[C64], serializer: S) -> Result<S::Ok, S::Error> {
    let mut seq = serializer.serialize_seq(Some(row.len()))?;
    for z in row {
        seq.serialize_element(&ComplexPair(z))?;
    }
    seq.end()
}

struct Row<'a>(&'a [C64]);

impl Serialize for Row<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serialize_row(self.0, serializer)
    }
}

/// Complex 2-vector, e.g. an `[η]` column over the intermediate basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoVector(pub [C64; 2]);

impl TwoVector {
    pub const fn new(plus: C64, minus: C64) -> Self {
        Self([plus, minus])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Kronecker product `self ⊗ other` in subsystem-1 major order.
    pub fn kron(&self, other: &TwoVector) -> FourVector {
        let [a0, a1] = self.0;
        let [b0, b1] = other.0;
        FourVector([a0 * b0, a0 * b1, a1 * b0, a1 * b1])
    }

    pub fn max_abs_diff(&self, other: &TwoVector) -> f64 {
        max_abs_diff(&self.0, &other.0)
    }

    pub fn is_finite(&self) -> bool {
        all_finite(&self.0)
    }
}

impl Index<usize> for TwoVector {
    type Output = C64;
    fn index(&self, i: usize) -> &C64 {
        &self.0[i]
    }
}

impl Serialize for TwoVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serialize_row(&self.0, serializer)
    }
}

/// Complex 4-vector in `(++, +−, −+, −−)` order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourVector(pub [C64; 4]);

impl FourVector {
    pub const ZERO: FourVector = FourVector([ZERO; 4]);

    /// `⟨self, other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &FourVector) -> C64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn scale(&self, k: C64) -> FourVector {
        FourVector(self.0.map(|z| z * k))
    }

    pub fn max_abs_diff(&self, other: &FourVector) -> f64 {
        max_abs_diff(&self.0, &other.0)
    }

    pub fn is_finite(&self) -> bool {
        all_finite(&self.0)
    }
}

impl Add for FourVector {
    type Output = FourVector;
    fn add(self, rhs: FourVector) -> FourVector {
        let mut out = self.0;
        for (o, r) in out.iter_mut().zip(rhs.0) {
            *o += r;
        }
        FourVector(out)
    }
}

impl Index<usize> for FourVector {
    type Output = C64;
    fn index(&self, i: usize) -> &C64 {
        &self.0[i]
    }
}

impl Serialize for FourVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serialize_row(&self.0, serializer)
    }
}

/// 2×2 complex matrix; row index is the initial label, column the final one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoByTwo(pub [[C64; 2]; 2]);

impl TwoByTwo {
    pub const IDENTITY: TwoByTwo = TwoByTwo([[ONE, ZERO], [ZERO, ONE]]);

    pub fn diag(a: f64, b: f64) -> Self {
        Self([[C64::new(a, 0.0), ZERO], [ZERO, C64::new(b, 0.0)]])
    }

    pub fn row(&self, i: usize) -> TwoVector {
        TwoVector(self.0[i])
    }

    pub fn adjoint(&self) -> TwoByTwo {
        let m = &self.0;
        TwoByTwo([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> C64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    /// Eigenvalues `(λ_max, λ_min)` of the Hermitian part, from the closed form
    /// `(tr ± √((a − d)² + 4|b|²)) / 2`.
    pub fn hermitian_eigenvalues(&self) -> (f64, f64) {
        let a = self.0[0][0].re;
        let d = self.0[1][1].re;
        let b = 0.5 * (self.0[0][1] + self.0[1][0].conj());
        let half_gap = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
        let mid = 0.5 * (a + d);
        (mid + half_gap, mid - half_gap)
    }

    /// Kronecker product `self ⊗ other`, subsystem-1 major.
    pub fn kron(&self, other: &TwoByTwo) -> FourByFour {
        let mut out = [[ZERO; 4]; 4];
        for (p, row) in self.0.iter().enumerate() {
            for (pp, a) in row.iter().enumerate() {
                for (q, orow) in other.0.iter().enumerate() {
                    for (qq, b) in orow.iter().enumerate() {
                        out[2 * p + q][2 * pp + qq] = a * b;
                    }
                }
            }
        }
        FourByFour(out)
    }

    pub fn max_abs_diff(&self, other: &TwoByTwo) -> f64 {
        max_abs_diff(self.0.iter().flatten(), other.0.iter().flatten())
    }

    pub fn is_finite(&self) -> bool {
        all_finite(self.0.iter().flatten())
    }
}

impl Mul for TwoByTwo {
    type Output = TwoByTwo;
    fn mul(self, rhs: TwoByTwo) -> TwoByTwo {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = [[ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        TwoByTwo(out)
    }
}

impl Index<(usize, usize)> for TwoByTwo {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for TwoByTwo {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.0[i][j]
    }
}

impl Serialize for TwoByTwo {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(2))?;
        for row in &self.0 {
            seq.serialize_element(&Row(row))?;
        }
        seq.end()
    }
}

/// 4×4 complex matrix acting on [`FourVector`]s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourByFour(pub [[C64; 4]; 4]);

impl FourByFour {
    pub fn mul_vec(&self, v: &FourVector) -> FourVector {
        FourVector(std::array::from_fn(|i| {
            self.0[i].iter().zip(&v.0).map(|(a, b)| a * b).sum()
        }))
    }

    /// `⟨v, M v⟩`.
    pub fn quadratic_form(&self, v: &FourVector) -> C64 {
        v.inner(&self.mul_vec(v))
    }

    pub fn adjoint(&self) -> FourByFour {
        FourByFour(std::array::from_fn(|i| {
            std::array::from_fn(|j| self.0[j][i].conj())
        }))
    }

    pub fn max_abs_diff(&self, other: &FourByFour) -> f64 {
        max_abs_diff(self.0.iter().flatten(), other.0.iter().flatten())
    }
}

impl Serialize for FourByFour {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(4))?;
        for row in &self.0 {
            seq.serialize_element(&Row(row))?;
        }
        seq.end()
    }
}
